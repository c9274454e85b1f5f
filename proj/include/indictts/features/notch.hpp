#pragma once

#include <vector>

#include "indictts/common/audio.hpp"

namespace indictts::features {

inline constexpr double kDefaultNotchQ = 30.0;

// Normalized so a0 == 1.
struct Biquad {
  double b0 = 1, b1 = 0, b2 = 0;
  double a1 = 0, a2 = 0;

  // |H(e^{jw})| at frequency f (Hz).
  double magnitude(double f, int sampleRate) const;
  std::vector<double> apply(const std::vector<double>& x) const;
};

// Second-order notch (zeros on the unit circle at f0). Throws
// InvalidFrequency unless 0 < f0 < sampleRate/2, InvalidArgument for Q <= 0.
Biquad design_notch(double f0, int sampleRate, double q = kDefaultNotchQ);

Audio notch_filter(const Audio& audio, double f0, double q = kDefaultNotchQ);

}  // namespace indictts::features
