#pragma once

#include <vector>

#include "indictts/common/audio.hpp"
#include "indictts/features/notch.hpp"

namespace indictts::features {

struct LineNoiseCandidate {
  double frequencyHz = 0.0;
  double prominenceDb = 0.0;  // mean excess over the local spectral median
  double persistence = 0.0;   // fraction of frames showing the peak
};

struct LineNoiseOptions {
  int fftSize = 2048;
  int hopSize = 512;
  int medianHalfWidth = 15;   // bins on each side of the local baseline
  double thresholdDb = 6.0;
  double minPersistence = 0.9;
};

// Narrowband peaks that stand out from the local spectral baseline in at
// least minPersistence of the frames, strongest first. Throws TooShort for
// audio under one second.
std::vector<LineNoiseCandidate> detect_line_noise(const Audio& audio, const LineNoiseOptions& options = {});

inline constexpr int kMaxNotches = 3;

struct LineNoiseRemoval {
  Audio audio;
  std::vector<LineNoiseCandidate> removed;
};

// One notch per detected candidate, most prominent first, at most kMaxNotches.
LineNoiseRemoval remove_line_noise(const Audio& audio, double q = kDefaultNotchQ,
                                   const LineNoiseOptions& options = {});

}  // namespace indictts::features
