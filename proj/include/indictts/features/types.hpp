#pragma once

#include <Eigen/Core>
#include <complex>
#include <utility>
#include <vector>

namespace indictts::features {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexMatrix = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct MelParams {
  int sampleRate = 22050;
  int fftSize = 1024;
  int hopSize = 256;
  int winSize = 1024;
  int nMels = 80;
  double fMin = 0.0;
  double fMax = 8000.0;

  friend bool operator==(const MelParams&, const MelParams&) = default;
};

// Mel energies are clamped to this before the natural log.
inline constexpr double kLogFloor = 1e-5;
inline constexpr int kDefaultMcepOrder = 24;

// frames: [nFrames x nMels] natural-log mel energies.
struct MelSpectrogram {
  Matrix frames;
  MelParams params;
};

// frames: [nFrames x (order + 1)] coefficients c_0..c_order.
struct McepTrack {
  Matrix frames;
  int order = 0;
};

struct DtwPath {
  std::vector<std::pair<std::size_t, std::size_t>> steps;
};

}  // namespace indictts::features
