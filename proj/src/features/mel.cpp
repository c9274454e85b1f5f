#include "indictts/features/mel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "indictts/common/error.hpp"
#include "indictts/features/stft.hpp"

namespace indictts::features {

namespace {

constexpr double kLinearHzPerMel = 200.0 / 3.0;
constexpr double kBreakHz = 1000.0;
constexpr double kBreakMel = kBreakHz / kLinearHzPerMel;
const double kLogStep = std::log(6.4) / 27.0;

}  // namespace

double hz_to_mel(double hz) {
  if (hz < kBreakHz) return hz / kLinearHzPerMel;
  return kBreakMel + std::log(hz / kBreakHz) / kLogStep;
}

double mel_to_hz(double mel) {
  if (mel < kBreakMel) return mel * kLinearHzPerMel;
  return kBreakHz * std::exp(kLogStep * (mel - kBreakMel));
}

void validate(const MelParams& p) {
  if (p.sampleRate <= 0 || p.fftSize <= 1 || p.hopSize <= 0 || p.winSize <= 0 || p.winSize > p.fftSize ||
      p.nMels <= 0) {
    throw Error(ErrorCode::InvalidArgument, "mel parameters must be positive with winSize <= fftSize");
  }
  if (p.fMin < 0.0 || p.fMax <= p.fMin || p.fMax > p.sampleRate / 2.0) {
    throw Error(ErrorCode::InvalidArgument, "need 0 <= fMin < fMax <= sampleRate/2");
  }
}

namespace {

// nMels + 2 points evenly spaced on the mel axis.
std::vector<double> band_edges(const MelParams& p) {
  const double lo = hz_to_mel(p.fMin);
  const double hi = hz_to_mel(p.fMax);
  std::vector<double> hz(static_cast<std::size_t>(p.nMels) + 2);
  for (std::size_t i = 0; i < hz.size(); ++i) {
    hz[i] = mel_to_hz(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(p.nMels + 1));
  }
  return hz;
}

}  // namespace

std::vector<double> mel_center_frequencies(const MelParams& p) {
  const auto edges = band_edges(p);
  return {edges.begin() + 1, edges.end() - 1};
}

Matrix mel_filterbank(const MelParams& p) {
  validate(p);
  const int bins = p.fftSize / 2 + 1;
  const std::vector<double> edges = band_edges(p);
  Matrix fb = Matrix::Zero(p.nMels, bins);
  for (int m = 0; m < p.nMels; ++m) {
    const double left = edges[static_cast<std::size_t>(m)];
    const double center = edges[static_cast<std::size_t>(m) + 1];
    const double right = edges[static_cast<std::size_t>(m) + 2];
    const double norm = 2.0 / (right - left);
    for (int k = 0; k < bins; ++k) {
      const double f = static_cast<double>(k) * p.sampleRate / p.fftSize;
      const double rise = (f - left) / (center - left);
      const double fall = (right - f) / (right - center);
      fb(m, k) = std::max(0.0, std::min(rise, fall)) * norm;
    }
  }
  return fb;
}

MelSpectrogram mel_spectrogram(const Audio& audio, const MelParams& params) {
  validate(params);
  if (audio.sampleRate != params.sampleRate) {
    throw Error(ErrorCode::RateMismatch, "audio is " + std::to_string(audio.sampleRate) + " Hz, parameters expect " +
                                             std::to_string(params.sampleRate) + " Hz");
  }
  if (audio.samples.size() < static_cast<std::size_t>(params.winSize)) {
    throw Error(ErrorCode::TooShort, "audio shorter than one analysis window");
  }
  const Stft stft(params.fftSize, params.hopSize, params.winSize);
  const Matrix magnitude = stft.analyze(audio.samples).cwiseAbs();
  const Matrix fb = mel_filterbank(params);
  MelSpectrogram out;
  out.params = params;
  out.frames = (magnitude * fb.transpose()).cwiseMax(kLogFloor).array().log().matrix();
  return out;
}

McepTrack mcep(const Matrix& logMel, int order) {
  const auto nMels = logMel.cols();
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "order must be at least 1");
  if (order >= nMels) {
    throw Error(ErrorCode::OrderTooHigh, "order " + std::to_string(order) + " needs more than " +
                                             std::to_string(nMels) + " mel bands");
  }
  const auto n = static_cast<double>(nMels);
  Matrix basis(order + 1, nMels);
  for (int k = 0; k <= order; ++k) {
    const double scale = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    for (Eigen::Index i = 0; i < nMels; ++i) {
      basis(k, i) = scale * std::cos(std::numbers::pi * k * (2.0 * static_cast<double>(i) + 1.0) / (2.0 * n));
    }
  }
  McepTrack out;
  out.order = order;
  out.frames = logMel * basis.transpose();
  return out;
}

McepTrack mcep(const MelSpectrogram& mel, int order) {
  if (order >= mel.params.nMels) {
    throw Error(ErrorCode::OrderTooHigh, "order must be below nMels");
  }
  return mcep(mel.frames, order);
}

}  // namespace indictts::features
