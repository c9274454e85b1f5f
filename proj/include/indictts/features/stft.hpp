#pragma once

#include <memory>
#include <span>
#include <vector>

#include "indictts/features/types.hpp"

namespace indictts::features {

namespace detail {
class RealFft;
}

// Frames produced for `length` samples with centered reflect padding of
// fftSize/2 on both sides: 1 + floor(length / hop).
std::size_t frame_count(std::size_t length, int hopSize);

// Periodic Hann window of winSize, zero-padded to fftSize around the center.
std::vector<double> hann_window(int winSize, int fftSize);

class Stft {
 public:
  Stft(int fftSize, int hopSize, int winSize);
  ~Stft();
  Stft(Stft&&) noexcept;
  Stft& operator=(Stft&&) noexcept;

  int fft_size() const;
  int hop_size() const { return hop_; }
  int bins() const;

  // [nFrames x (fftSize/2 + 1)]. Requires signal.size() > fftSize/2.
  ComplexMatrix analyze(std::span<const double> signal) const;
  // Windowed overlap-add normalized by the summed squared window, trimmed
  // to `length` samples after the padding.
  std::vector<double> synthesize(const ComplexMatrix& spectrum, std::size_t length) const;

 private:
  std::unique_ptr<detail::RealFft> fft_;
  int hop_;
  std::vector<double> window_;
};

}  // namespace indictts::features
