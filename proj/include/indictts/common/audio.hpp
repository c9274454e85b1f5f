#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace indictts {

// Mono audio with samples nominally in [-1, 1].
struct Audio {
  std::vector<double> samples;
  int sampleRate = 0;

  double duration_sec() const {
    return sampleRate > 0 ? static_cast<double>(samples.size()) / sampleRate : 0.0;
  }
};

struct WavInfo {
  int sampleRate = 0;
  int channels = 0;
  int bitsPerSample = 0;
  bool isFloat = false;
  std::uint64_t frames = 0;

  double duration_sec() const { return static_cast<double>(frames) / sampleRate; }
};

// Parses only the RIFF header; frame count comes from the data chunk size.
WavInfo read_wav_info(const std::filesystem::path& path);

// Decodes PCM 8/16/24/32-bit or 32-bit float. Multi-channel input is
// averaged down to mono.
Audio read_wav(const std::filesystem::path& path);

// Writes 16-bit PCM mono; samples are clipped to [-1, 1].
void write_wav(const std::filesystem::path& path, const Audio& audio);
std::string encode_wav(const Audio& audio);

}  // namespace indictts
