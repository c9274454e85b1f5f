#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "indictts/common/audio.hpp"
#include "indictts/corpus/manifest.hpp"
#include "indictts/eval/session.hpp"

namespace indictts::testing {

// mkdtemp directory, removed with everything in it on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

Audio sine(double freqHz, double seconds, int sampleRate = 22050, double amplitude = 0.5);
Audio white_noise(double seconds, std::uint64_t seed, int sampleRate = 22050, double amplitude = 0.1);
Audio silence(double seconds, int sampleRate = 22050);

// Voiced-speech stand-in: harmonics of f0 with a 1/k^tilt roll-off, a slow
// vibrato and a syllable-rate envelope, plus a little noise.
Audio speech_like(double seconds, double f0, double tilt, std::uint64_t seed, int sampleRate = 22050);

double rms(const std::vector<double>& x, std::size_t from = 0);

struct SyntheticCorpus {
  std::filesystem::path root;
  frontend::Language language;
  std::string speaker;
  std::vector<std::string> ids;
};

// Three languages (hindi, bengali, tamil), one speaker each, five
// utterances of 6-10 s: two minutes of audio in total, laid out as
// root/<speaker>/{transcript.tsv,wav/}.
std::vector<SyntheticCorpus> write_synthetic_corpus(const std::filesystem::path& root, int sampleRate = 22050);

// Manifest of `count` records of `seconds` each, metadata only.
corpus::Manifest metadata_manifest(frontend::Language lang, const std::string& speaker, int count, double seconds);

// `count` integer ratings in [1, 5] summing to `sum`, in a seeded order.
std::vector<int> ratings_with_sum(int count, int sum, std::uint64_t seed);

// DMOS (or similarity) session config with `rated` synthesized stimuli and
// `natural` natural stimuli (plus one reference clip for similarity). Paths
// are placeholders; use checkFiles=false.
nlohmann::json scale_session_config(eval::TestKind kind, const std::string& id, int rated, int natural);

// Ratings from `listeners` listeners over every rated stimulus whose values
// sum to `sum`. Natural anchors get 5.
std::vector<eval::RatingRecord> scale_ratings(const eval::TestSession& s, int listeners, int sum, std::uint64_t seed);

}  // namespace indictts::testing
