#pragma once

#include <fftw3.h>

#include <complex>
#include <span>
#include <vector>

namespace indictts::features::detail {

// Real FFT of a fixed size. Plans are built once under a global lock (FFTW's
// planner is not thread-safe); transforms run on per-call buffers, so one
// instance may be shared across threads.
class RealFft {
 public:
  explicit RealFft(int size);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  int size() const { return size_; }
  int bins() const { return size_ / 2 + 1; }

  void forward(std::span<const double> in, std::span<std::complex<double>> out) const;
  // Unnormalized inverse (FFTW convention): result is size() times the signal.
  void inverse(std::span<const std::complex<double>> in, std::span<double> out) const;

 private:
  int size_;
  fftw_plan forward_ = nullptr;
  fftw_plan inverse_ = nullptr;
};

}  // namespace indictts::features::detail
