#include "fft.hpp"

#include <algorithm>
#include <memory>
#include <mutex>

#include "indictts/common/error.hpp"

namespace indictts::features::detail {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <typename T>
std::unique_ptr<T[], FftwFree> aligned(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
  if (p == nullptr) throw std::bad_alloc();
  return std::unique_ptr<T[], FftwFree>(p);
}

}  // namespace

RealFft::RealFft(int size) : size_(size) {
  if (size <= 0) throw Error(ErrorCode::InvalidArgument, "FFT size must be positive");
  auto real = aligned<double>(static_cast<std::size_t>(size));
  auto cplx = aligned<fftw_complex>(static_cast<std::size_t>(bins()));
  std::lock_guard lock(planner_mutex());
  forward_ = fftw_plan_dft_r2c_1d(size, real.get(), cplx.get(), FFTW_ESTIMATE);
  inverse_ = fftw_plan_dft_c2r_1d(size, cplx.get(), real.get(), FFTW_ESTIMATE);
  if (forward_ == nullptr || inverse_ == nullptr) throw Error(ErrorCode::InvalidArgument, "FFTW planning failed");
}

RealFft::~RealFft() {
  std::lock_guard lock(planner_mutex());
  if (forward_) fftw_destroy_plan(forward_);
  if (inverse_) fftw_destroy_plan(inverse_);
}

void RealFft::forward(std::span<const double> in, std::span<std::complex<double>> out) const {
  auto real = aligned<double>(static_cast<std::size_t>(size_));
  auto cplx = aligned<fftw_complex>(static_cast<std::size_t>(bins()));
  std::copy(in.begin(), in.end(), real.get());
  fftw_execute_dft_r2c(forward_, real.get(), cplx.get());
  for (int k = 0; k < bins(); ++k) out[static_cast<std::size_t>(k)] = {cplx[k][0], cplx[k][1]};
}

void RealFft::inverse(std::span<const std::complex<double>> in, std::span<double> out) const {
  auto real = aligned<double>(static_cast<std::size_t>(size_));
  auto cplx = aligned<fftw_complex>(static_cast<std::size_t>(bins()));
  for (int k = 0; k < bins(); ++k) {
    cplx[k][0] = in[static_cast<std::size_t>(k)].real();
    cplx[k][1] = in[static_cast<std::size_t>(k)].imag();
  }
  fftw_execute_dft_c2r(inverse_, cplx.get(), real.get());
  std::copy(real.get(), real.get() + size_, out.begin());
}

}  // namespace indictts::features::detail
