#include "indictts/features/notch.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "indictts/common/error.hpp"

namespace indictts::features {

double Biquad::magnitude(double f, int sampleRate) const {
  const double w = 2.0 * std::numbers::pi * f / sampleRate;
  const std::complex<double> z1 = std::polar(1.0, -w);
  const std::complex<double> z2 = z1 * z1;
  return std::abs((b0 + b1 * z1 + b2 * z2) / (1.0 + a1 * z1 + a2 * z2));
}

std::vector<double> Biquad::apply(const std::vector<double>& x) const {
  std::vector<double> y(x.size());
  double s1 = 0.0, s2 = 0.0;  // transposed direct form II
  for (std::size_t n = 0; n < x.size(); ++n) {
    const double out = b0 * x[n] + s1;
    s1 = b1 * x[n] - a1 * out + s2;
    s2 = b2 * x[n] - a2 * out;
    y[n] = out;
  }
  return y;
}

Biquad design_notch(double f0, int sampleRate, double q) {
  if (sampleRate <= 0) throw Error(ErrorCode::InvalidArgument, "sample rate must be positive");
  if (!(f0 > 0.0 && f0 < sampleRate / 2.0)) {
    throw Error(ErrorCode::InvalidFrequency, "notch frequency must lie strictly between 0 and Nyquist");
  }
  if (!(q > 0.0)) throw Error(ErrorCode::InvalidArgument, "Q must be positive");
  const double w0 = 2.0 * std::numbers::pi * f0 / sampleRate;
  const double alpha = std::sin(w0) / (2.0 * q);
  const double a0 = 1.0 + alpha;
  Biquad bq;
  bq.b0 = 1.0 / a0;
  bq.b1 = -2.0 * std::cos(w0) / a0;
  bq.b2 = 1.0 / a0;
  bq.a1 = -2.0 * std::cos(w0) / a0;
  bq.a2 = (1.0 - alpha) / a0;
  return bq;
}

Audio notch_filter(const Audio& audio, double f0, double q) {
  const Biquad bq = design_notch(f0, audio.sampleRate, q);
  return Audio{bq.apply(audio.samples), audio.sampleRate};
}

}  // namespace indictts::features
