#include "indictts/features/line_noise.hpp"

#include <algorithm>
#include <cmath>

#include "indictts/common/error.hpp"
#include "indictts/features/stft.hpp"

namespace indictts::features {

std::vector<LineNoiseCandidate> detect_line_noise(const Audio& audio, const LineNoiseOptions& options) {
  if (audio.sampleRate <= 0) throw Error(ErrorCode::InvalidArgument, "sample rate must be positive");
  if (audio.samples.size() < static_cast<std::size_t>(audio.sampleRate)) {
    throw Error(ErrorCode::TooShort, "line-noise detection needs at least one second of audio");
  }
  const Stft stft(options.fftSize, options.hopSize, options.fftSize);
  const ComplexMatrix spec = stft.analyze(audio.samples);
  const auto frames = spec.rows();
  const auto bins = spec.cols();
  const int hw = options.medianHalfWidth;

  // dB power with an absolute floor, so digital silence is flat.
  Matrix db(frames, bins);
  for (Eigen::Index t = 0; t < frames; ++t) {
    for (Eigen::Index k = 0; k < bins; ++k) db(t, k) = 10.0 * std::log10(std::norm(spec(t, k)) + 1e-20);
  }

  Matrix excess(frames, bins);
  std::vector<double> window;
  for (Eigen::Index t = 0; t < frames; ++t) {
    for (Eigen::Index k = 0; k < bins; ++k) {
      const auto lo = std::max<Eigen::Index>(0, k - hw);
      const auto hi = std::min<Eigen::Index>(bins - 1, k + hw);
      window.assign(db.row(t).data() + lo, db.row(t).data() + hi + 1);
      auto mid = window.begin() + static_cast<std::ptrdiff_t>(window.size() / 2);
      std::nth_element(window.begin(), mid, window.end());
      excess(t, k) = db(t, k) - *mid;
    }
  }

  // Persistence: the peak may wander by one bin between frames.
  std::vector<double> persistence(static_cast<std::size_t>(bins), 0.0);
  const Eigen::VectorXd meanExcess = excess.colwise().mean().transpose();
  for (Eigen::Index k = 1; k + 1 < bins; ++k) {
    int hits = 0;
    for (Eigen::Index t = 0; t < frames; ++t) {
      const double local = std::max({excess(t, k - 1), excess(t, k), excess(t, k + 1)});
      if (local >= options.thresholdDb) ++hits;
    }
    persistence[static_cast<std::size_t>(k)] = static_cast<double>(hits) / static_cast<double>(frames);
  }

  std::vector<LineNoiseCandidate> out;
  for (Eigen::Index k = 1; k + 1 < bins; ++k) {
    if (persistence[static_cast<std::size_t>(k)] < options.minPersistence) continue;
    if (meanExcess(k) < options.thresholdDb) continue;
    if (meanExcess(k) < meanExcess(k - 1) || meanExcess(k) < meanExcess(k + 1)) continue;
    // Parabolic interpolation on the mean excess.
    const double l = meanExcess(k - 1), c = meanExcess(k), r = meanExcess(k + 1);
    const double denom = l - 2.0 * c + r;
    const double delta = denom < 0.0 ? std::clamp(0.5 * (l - r) / denom, -0.5, 0.5) : 0.0;
    LineNoiseCandidate cand;
    cand.frequencyHz = (static_cast<double>(k) + delta) * audio.sampleRate / options.fftSize;
    cand.prominenceDb = c;
    cand.persistence = persistence[static_cast<std::size_t>(k)];
    out.push_back(cand);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.prominenceDb > b.prominenceDb; });
  return out;
}

LineNoiseRemoval remove_line_noise(const Audio& audio, double q, const LineNoiseOptions& options) {
  LineNoiseRemoval out{audio, {}};
  for (const auto& cand : detect_line_noise(audio, options)) {
    if (out.removed.size() == static_cast<std::size_t>(kMaxNotches)) break;
    out.audio = notch_filter(out.audio, cand.frequencyHz, q);
    out.removed.push_back(cand);
  }
  return out;
}

}  // namespace indictts::features
