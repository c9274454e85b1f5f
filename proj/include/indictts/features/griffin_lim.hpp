#pragma once

#include <cstdint>

#include "indictts/common/audio.hpp"
#include "indictts/common/random.hpp"
#include "indictts/features/types.hpp"

namespace indictts::features {

inline constexpr int kDefaultGriffinLimIterations = 60;

// Linear magnitudes [nFrames x bins] from log-mel via the (non-negative)
// pseudo-inverse of the filterbank.
Matrix mel_to_linear(const MelSpectrogram& mel);

// Random initial phase from `seed`, then `iterations` rounds of
// ISTFT/STFT phase re-estimation. Output length (nFrames - 1) * hop, so
// re-analysis yields the same frame count.
Audio griffin_lim(const MelSpectrogram& mel, int iterations = kDefaultGriffinLimIterations,
                  std::uint64_t seed = kDefaultSeed);

// Mean absolute difference between log-mel matrices of equal shape.
double mel_distance(const MelSpectrogram& a, const MelSpectrogram& b);

}  // namespace indictts::features
