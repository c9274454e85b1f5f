#pragma once

#include <vector>

#include "indictts/common/audio.hpp"
#include "indictts/features/types.hpp"

namespace indictts::features {

// Slaney mel scale: linear below 1 kHz, logarithmic above.
double hz_to_mel(double hz);
double mel_to_hz(double mel);

// Throws InvalidArgument for inconsistent parameters.
void validate(const MelParams& p);

// [nMels x (fftSize/2 + 1)] triangular filters with Slaney area
// normalization.
Matrix mel_filterbank(const MelParams& p);
// Center frequency (Hz) of every mel filter.
std::vector<double> mel_center_frequencies(const MelParams& p);

// |STFT| -> mel filterbank -> natural log with kLogFloor. Throws TooShort
// (fewer than winSize samples) or RateMismatch.
MelSpectrogram mel_spectrogram(const Audio& audio, const MelParams& params = {});

// Per-frame orthonormal DCT-II of the log-mel vector, truncated to
// c_0..c_order. Throws OrderTooHigh when order >= nMels.
McepTrack mcep(const MelSpectrogram& mel, int order = kDefaultMcepOrder);
McepTrack mcep(const Matrix& logMel, int order = kDefaultMcepOrder);

}  // namespace indictts::features
