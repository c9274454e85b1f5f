#include <algorithm>
#include <cmath>

#include "indictts/common/error.hpp"
#include "indictts/features/mel.hpp"
#include "indictts/speaker/embedding.hpp"

namespace indictts::speaker {

namespace {

// Pearson correlation of two columns; 0 when either is constant.
double correlation(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const Eigen::VectorXd dx = x.array() - x.mean();
  const Eigen::VectorXd dy = y.array() - y.mean();
  const double denom = std::sqrt(dx.squaredNorm() * dy.squaredNorm());
  return denom > 1e-12 ? dx.dot(dy) / denom : 0.0;
}

}  // namespace

SpeakerEmbedding toy_embedding(const Audio& audio) {
  if (audio.sampleRate <= 0) throw Error(ErrorCode::InvalidArgument, "sample rate must be positive");
  if (audio.samples.size() < static_cast<std::size_t>(audio.sampleRate)) {
    throw Error(ErrorCode::TooShort, "speaker embedding needs at least one second of audio");
  }
  features::MelParams p;
  p.sampleRate = audio.sampleRate;
  p.fMax = std::min(p.fMax, audio.sampleRate / 2.0);
  const features::Matrix logMel = features::mel_spectrogram(audio, p).frames;

  // Removing each frame's mean cancels any overall gain.
  const Eigen::VectorXd frameMeans = logMel.rowwise().mean();
  const features::Matrix norm = logMel.colwise() - frameMeans;
  const auto bands = norm.cols();
  const auto frames = norm.rows();

  std::vector<double> feats;
  const Eigen::RowVectorXd means = norm.colwise().mean();
  for (Eigen::Index b = 0; b < bands; ++b) feats.push_back(means(b));
  for (Eigen::Index b = 0; b < bands; ++b) {
    const double var = (norm.col(b).array() - means(b)).square().mean();
    feats.push_back(std::sqrt(var));
  }
  for (int lag = 1; lag <= 2; ++lag) {
    for (Eigen::Index b = 0; b + lag < bands; ++b) {
      feats.push_back(correlation(norm.col(b), norm.col(b + lag)));
    }
  }
  for (Eigen::Index b = 0; b < bands; ++b) {
    double d = 0.0;
    for (Eigen::Index t = 1; t < frames; ++t) d += std::abs(norm(t, b) - norm(t - 1, b));
    feats.push_back(frames > 1 ? d / static_cast<double>(frames - 1) : 0.0);
  }
  if (feats.size() > static_cast<std::size_t>(kEmbeddingDim)) feats.resize(static_cast<std::size_t>(kEmbeddingDim));

  SpeakerEmbedding out;
  out.vector = Eigen::VectorXd::Zero(kEmbeddingDim);
  for (std::size_t i = 0; i < feats.size(); ++i) out.vector(static_cast<Eigen::Index>(i)) = feats[i];
  return out;
}

}  // namespace indictts::speaker
