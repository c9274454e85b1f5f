#include "indictts/features/griffin_lim.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "indictts/common/error.hpp"
#include "indictts/features/mel.hpp"
#include "indictts/features/stft.hpp"

namespace indictts::features {

Matrix mel_to_linear(const MelSpectrogram& mel) {
  const Matrix fb = mel_filterbank(mel.params);
  const Matrix pinv = fb.completeOrthogonalDecomposition().pseudoInverse();
  const Matrix energies = mel.frames.array().exp().matrix();
  return (energies * pinv.transpose()).cwiseMax(0.0);
}

Audio griffin_lim(const MelSpectrogram& mel, int iterations, std::uint64_t seed) {
  if (iterations < 0) throw Error(ErrorCode::InvalidArgument, "iterations must be non-negative");
  validate(mel.params);
  if (mel.frames.rows() < 2) throw Error(ErrorCode::TooShort, "need at least two frames");
  const Matrix magnitude = mel_to_linear(mel);
  const Stft stft(mel.params.fftSize, mel.params.hopSize, mel.params.winSize);
  const std::size_t length = static_cast<std::size_t>(mel.frames.rows() - 1) * mel.params.hopSize;

  std::mt19937_64 rng(seed);
  ComplexMatrix spec(magnitude.rows(), magnitude.cols());
  for (Eigen::Index t = 0; t < spec.rows(); ++t) {
    for (Eigen::Index k = 0; k < spec.cols(); ++k) {
      spec(t, k) = std::polar(magnitude(t, k), 2.0 * std::numbers::pi * unit_uniform(rng));
    }
  }

  std::vector<double> signal = stft.synthesize(spec, length);
  for (int it = 0; it < iterations; ++it) {
    const ComplexMatrix est = stft.analyze(signal);
    for (Eigen::Index t = 0; t < spec.rows(); ++t) {
      for (Eigen::Index k = 0; k < spec.cols(); ++k) {
        const double a = std::abs(est(t, k));
        const std::complex<double> phase = a > 1e-12 ? est(t, k) / a : std::complex<double>(1.0, 0.0);
        spec(t, k) = magnitude(t, k) * phase;
      }
    }
    signal = stft.synthesize(spec, length);
  }
  return Audio{std::move(signal), mel.params.sampleRate};
}

double mel_distance(const MelSpectrogram& a, const MelSpectrogram& b) {
  if (a.frames.rows() != b.frames.rows() || a.frames.cols() != b.frames.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "mel spectrograms differ in shape");
  }
  return (a.frames - b.frames).cwiseAbs().mean();
}

}  // namespace indictts::features
