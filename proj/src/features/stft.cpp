#include "indictts/features/stft.hpp"

#include <cmath>
#include <numbers>

#include "fft.hpp"
#include "indictts/common/error.hpp"

namespace indictts::features {

std::size_t frame_count(std::size_t length, int hopSize) {
  return 1 + length / static_cast<std::size_t>(hopSize);
}

std::vector<double> hann_window(int winSize, int fftSize) {
  std::vector<double> w(static_cast<std::size_t>(fftSize), 0.0);
  const int offset = (fftSize - winSize) / 2;
  for (int n = 0; n < winSize; ++n) {
    w[static_cast<std::size_t>(offset + n)] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * n / winSize);
  }
  return w;
}

Stft::Stft(int fftSize, int hopSize, int winSize)
    : fft_(std::make_unique<detail::RealFft>(fftSize)), hop_(hopSize), window_() {
  if (hopSize <= 0 || winSize <= 0 || winSize > fftSize) {
    throw Error(ErrorCode::InvalidArgument, "need 0 < winSize <= fftSize and hopSize > 0");
  }
  window_ = hann_window(winSize, fftSize);
}

Stft::~Stft() = default;
Stft::Stft(Stft&&) noexcept = default;
Stft& Stft::operator=(Stft&&) noexcept = default;

int Stft::fft_size() const { return fft_->size(); }
int Stft::bins() const { return fft_->bins(); }

ComplexMatrix Stft::analyze(std::span<const double> signal) const {
  const int n = fft_size();
  const auto pad = static_cast<std::size_t>(n / 2);
  const std::size_t len = signal.size();
  if (len <= pad) throw Error(ErrorCode::TooShort, "signal shorter than half an FFT frame");

  // Reflect padding without repeating the edge sample.
  std::vector<double> padded(len + 2 * pad);
  for (std::size_t i = 0; i < pad; ++i) {
    padded[i] = signal[pad - i];
    padded[pad + len + i] = signal[len - 2 - i];
  }
  std::copy(signal.begin(), signal.end(), padded.begin() + static_cast<std::ptrdiff_t>(pad));

  const std::size_t frames = frame_count(len, hop_);
  ComplexMatrix out(static_cast<Eigen::Index>(frames), bins());
  std::vector<double> buf(static_cast<std::size_t>(n));
  std::vector<std::complex<double>> spec(static_cast<std::size_t>(bins()));
  for (std::size_t t = 0; t < frames; ++t) {
    const double* src = padded.data() + t * static_cast<std::size_t>(hop_);
    for (int k = 0; k < n; ++k) buf[static_cast<std::size_t>(k)] = src[k] * window_[static_cast<std::size_t>(k)];
    fft_->forward(buf, spec);
    for (int k = 0; k < bins(); ++k) out(static_cast<Eigen::Index>(t), k) = spec[static_cast<std::size_t>(k)];
  }
  return out;
}

std::vector<double> Stft::synthesize(const ComplexMatrix& spectrum, std::size_t length) const {
  const int n = fft_size();
  if (spectrum.cols() != bins()) throw Error(ErrorCode::DimensionMismatch, "spectrum has the wrong bin count");
  const auto frames = static_cast<std::size_t>(spectrum.rows());
  const auto hop = static_cast<std::size_t>(hop_);
  const std::size_t total = static_cast<std::size_t>(n) + hop * (frames == 0 ? 0 : frames - 1);
  std::vector<double> acc(total, 0.0);
  std::vector<double> norm(total, 0.0);
  std::vector<std::complex<double>> spec(static_cast<std::size_t>(bins()));
  std::vector<double> buf(static_cast<std::size_t>(n));
  for (std::size_t t = 0; t < frames; ++t) {
    for (int k = 0; k < bins(); ++k) spec[static_cast<std::size_t>(k)] = spectrum(static_cast<Eigen::Index>(t), k);
    fft_->inverse(spec, buf);
    for (int k = 0; k < n; ++k) {
      const double w = window_[static_cast<std::size_t>(k)];
      acc[t * hop + static_cast<std::size_t>(k)] += buf[static_cast<std::size_t>(k)] / n * w;
      norm[t * hop + static_cast<std::size_t>(k)] += w * w;
    }
  }
  const auto pad = static_cast<std::size_t>(n / 2);
  std::vector<double> out(length, 0.0);
  for (std::size_t i = 0; i < length && pad + i < total; ++i) {
    const double w = norm[pad + i];
    out[i] = w > 1e-10 ? acc[pad + i] / w : 0.0;
  }
  return out;
}

}  // namespace indictts::features
