#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "indictts/common/random.hpp"
#include "indictts/frontend/script.hpp"

namespace indictts::corpus {

using frontend::Family;
using frontend::Language;
using frontend::Script;

struct UtteranceRecord {
  std::string id;
  Language language = Language::Hindi;
  Family family = Family::IndoAryan;
  std::string speaker;
  Script script = Script::Devanagari;
  std::string text;
  std::filesystem::path audioPath;
  double durationSec = 0.0;
  int sampleRate = 0;
};

// Throws InvalidArgument for non-positive duration or rate, or a family tag
// that disagrees with the language.
void validate(const UtteranceRecord& r);

// One JSON object per line, keyed by the UtteranceRecord field names.
std::string to_json_line(const UtteranceRecord& r);
UtteranceRecord from_json_line(std::string_view line);

struct Manifest {
  std::vector<UtteranceRecord> records;
  std::vector<std::string> provenance;
  double totalDurationSec = 0.0;
};

// Validates every record, rejects duplicate ids (DuplicateId) and fills
// totalDurationSec.
Manifest make_manifest(std::vector<UtteranceRecord> records, std::vector<std::string> provenance);

// Records go to `path` as JSON lines; provenance and the total go to the
// sidecar `path` + ".meta.json".
void write_manifest(const std::filesystem::path& path, const Manifest& m);
Manifest read_manifest(const std::filesystem::path& path);

struct BuildOptions {
  // Decode every file and require the decoded duration to match the header
  // within 1 ms.
  bool verifyDurations = false;
};

// Layout: dataRoot/transcript.tsv (`utterance-id <TAB> text` per line) and
// dataRoot/wav/<utterance-id>.wav. Throws MissingAudio, UnreadableHeader,
// TranscriptMismatch, DuplicateId, ScriptMismatch or EmptyAfterCleaning.
Manifest build_manifest(const std::filesystem::path& dataRoot, Language language, const std::string& speaker,
                        const BuildOptions& options = {});

inline constexpr std::string_view kTranscriptFile = "transcript.tsv";
inline constexpr std::string_view kAudioDir = "wav";

// NFC, control characters stripped, whitespace runs collapsed, punctuation
// kept only from the sentence whitelist. Throws EmptyAfterCleaning.
std::string clean_text(std::string_view raw);

// Keeps records with durationSec <= maxDurationSec (inclusive).
inline constexpr double kMaxTrainingDurationSec = 15.0;
Manifest filter_manifest(const Manifest& m, double maxDurationSec = kMaxTrainingDurationSec);

// Concatenates single-language, single-speaker manifests of one family.
// Throws CrossFamilyPooling (unless allowed), DuplicateId, InvalidArgument.
Manifest pool(std::span<const Manifest> manifests, Family family, bool allowCrossFamily = false);

// Seeded shuffle of the id-sorted records, then greedy accumulation until
// the target is reached. Subsets for growing targets under one seed are
// prefixes of each other. Throws InsufficientData.
Manifest select_adaptation_subset(const Manifest& m, double targetMinutes, std::uint64_t seed = kDefaultSeed);

}  // namespace indictts::corpus
