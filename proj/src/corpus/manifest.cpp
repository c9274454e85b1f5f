#include "indictts/corpus/manifest.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "indictts/common/audio.hpp"
#include "indictts/common/error.hpp"
#include "indictts/common/tsv.hpp"
#include "json.hpp"

namespace indictts::corpus {

namespace {

using nlohmann::json;

std::string meta_path(const std::filesystem::path& path) { return path.string() + ".meta.json"; }

double sum_durations(const std::vector<UtteranceRecord>& records) {
  double total = 0.0;
  for (const auto& r : records) total += r.durationSec;
  return total;
}

}  // namespace

void validate(const UtteranceRecord& r) {
  if (r.id.empty()) throw Error(ErrorCode::InvalidArgument, "record without id");
  if (!(r.durationSec > 0.0) || !std::isfinite(r.durationSec)) {
    throw Error(ErrorCode::InvalidArgument, r.id + ": duration must be positive");
  }
  if (r.sampleRate <= 0) throw Error(ErrorCode::InvalidArgument, r.id + ": sample rate must be positive");
  if (r.family != frontend::family_of(r.language)) {
    throw Error(ErrorCode::InvalidArgument, r.id + ": family tag disagrees with language");
  }
}

std::string to_json_line(const UtteranceRecord& r) {
  json j = {
      {"id", r.id},
      {"language", frontend::to_string(r.language)},
      {"family", frontend::to_string(r.family)},
      {"speaker", r.speaker},
      {"script", frontend::to_string(r.script)},
      {"text", r.text},
      {"audioPath", r.audioPath.string()},
      {"durationSec", r.durationSec},
      {"sampleRate", r.sampleRate},
  };
  return j.dump();
}

UtteranceRecord from_json_line(std::string_view line) {
  try {
    const json j = json::parse(line);
    UtteranceRecord r;
    r.id = j.at("id").get<std::string>();
    r.language = frontend::parse_language(j.at("language").get<std::string>());
    r.family = frontend::parse_family(j.at("family").get<std::string>());
    r.speaker = j.at("speaker").get<std::string>();
    r.script = frontend::parse_script(j.at("script").get<std::string>());
    r.text = j.at("text").get<std::string>();
    r.audioPath = j.at("audioPath").get<std::string>();
    r.durationSec = j.at("durationSec").get<double>();
    r.sampleRate = j.at("sampleRate").get<int>();
    validate(r);
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("manifest line: ") + e.what());
  }
}

Manifest make_manifest(std::vector<UtteranceRecord> records, std::vector<std::string> provenance) {
  std::set<std::string, std::less<>> ids;
  for (const auto& r : records) {
    validate(r);
    if (!ids.insert(r.id).second) throw Error(ErrorCode::DuplicateId, "duplicate utterance id '" + r.id + "'");
  }
  Manifest m;
  m.totalDurationSec = sum_durations(records);
  m.records = std::move(records);
  m.provenance = std::move(provenance);
  return m;
}

void write_manifest(const std::filesystem::path& path, const Manifest& m) {
  {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, path.string() + ": cannot write");
    for (const auto& r : m.records) out << to_json_line(r) << '\n';
  }
  std::ofstream meta(meta_path(path), std::ios::trunc);
  if (!meta) throw Error(ErrorCode::IoError, meta_path(path) + ": cannot write");
  meta << json{{"provenance", m.provenance}, {"totalDurationSec", m.totalDurationSec},
               {"records", m.records.size()}}
              .dump(2)
       << '\n';
}

Manifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, path.string() + ": cannot open");
  std::vector<UtteranceRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    records.push_back(from_json_line(line));
  }
  std::vector<std::string> provenance;
  if (std::filesystem::exists(meta_path(path))) {
    try {
      provenance = json::parse(read_file(meta_path(path))).at("provenance").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::InvalidArgument, meta_path(path) + ": " + e.what());
    }
  } else {
    provenance.push_back("read_manifest " + path.string());
  }
  return make_manifest(std::move(records), std::move(provenance));
}

Manifest build_manifest(const std::filesystem::path& dataRoot, Language language, const std::string& speaker,
                        const BuildOptions& options) {
  const auto transcriptPath = dataRoot / kTranscriptFile;
  if (!std::filesystem::exists(transcriptPath)) {
    throw Error(ErrorCode::TranscriptMismatch, transcriptPath.string() + ": transcript index missing");
  }
  const std::string transcript = read_file(transcriptPath);
  const auto audioDir = dataRoot / kAudioDir;

  std::vector<UtteranceRecord> records;
  std::set<std::string, std::less<>> ids;
  for (const TsvRow& row : parse_tsv(transcript)) {
    const std::string where = transcriptPath.string() + ":" + std::to_string(row.lineNumber);
    if (row.fields.size() != 2 || trim(row.fields[0]).empty()) {
      throw Error(ErrorCode::TranscriptMismatch, where + ": expected `utterance-id<TAB>text`");
    }
    UtteranceRecord r;
    r.id = std::string(trim(row.fields[0]));
    if (!ids.insert(r.id).second) throw Error(ErrorCode::DuplicateId, where + ": duplicate id '" + r.id + "'");
    r.language = language;
    r.family = frontend::family_of(language);
    r.speaker = speaker;
    r.text = clean_text(row.fields[1]);
    r.script = frontend::detect_script(r.text);
    if (r.script != frontend::script_of(language)) {
      throw Error(ErrorCode::ScriptMismatch, where + ": text is " + std::string(frontend::to_string(r.script)));
    }
    r.audioPath = audioDir / (r.id + ".wav");
    if (!std::filesystem::exists(r.audioPath)) {
      throw Error(ErrorCode::MissingAudio, where + ": " + r.audioPath.string() + " not found");
    }
    const WavInfo info = read_wav_info(r.audioPath);
    if (info.frames == 0) throw Error(ErrorCode::UnreadableHeader, r.audioPath.string() + ": no samples");
    r.sampleRate = info.sampleRate;
    r.durationSec = info.duration_sec();
    if (options.verifyDurations) {
      const Audio audio = read_wav(r.audioPath);
      if (std::abs(audio.duration_sec() - r.durationSec) > 1e-3) {
        throw Error(ErrorCode::UnreadableHeader, r.audioPath.string() + ": header duration disagrees with samples");
      }
    }
    records.push_back(std::move(r));
  }

  if (std::filesystem::is_directory(audioDir)) {
    for (const auto& entry : std::filesystem::directory_iterator(audioDir)) {
      if (entry.path().extension() != ".wav") continue;
      if (!ids.count(entry.path().stem().string())) {
        throw Error(ErrorCode::TranscriptMismatch, entry.path().string() + " has no transcript line");
      }
    }
  }

  std::ostringstream prov;
  prov << "build_manifest root=" << dataRoot.string() << " language=" << frontend::to_string(language)
       << " speaker=" << speaker << " records=" << records.size();
  return make_manifest(std::move(records), {prov.str()});
}

Manifest filter_manifest(const Manifest& m, double maxDurationSec) {
  std::vector<UtteranceRecord> kept;
  kept.reserve(m.records.size());
  for (const auto& r : m.records) {
    if (r.durationSec <= maxDurationSec) kept.push_back(r);
  }
  const std::size_t dropped = m.records.size() - kept.size();
  auto provenance = m.provenance;
  std::ostringstream note;
  note << "filter_manifest maxDurationSec=" << maxDurationSec << " kept=" << kept.size() << " dropped=" << dropped;
  provenance.push_back(note.str());
  return make_manifest(std::move(kept), std::move(provenance));
}

Manifest pool(std::span<const Manifest> manifests, Family family, bool allowCrossFamily) {
  std::vector<UtteranceRecord> records;
  std::vector<std::string> provenance;
  for (const Manifest& m : manifests) {
    if (m.records.empty()) continue;
    const auto& first = m.records.front();
    for (const auto& r : m.records) {
      if (r.language != first.language || r.speaker != first.speaker) {
        throw Error(ErrorCode::InvalidArgument, "pool inputs must be single-language, single-speaker manifests");
      }
      if (r.family != family && !allowCrossFamily) {
        throw Error(ErrorCode::CrossFamilyPooling,
                    r.id + " is " + std::string(frontend::to_string(r.family)) + ", pool is " +
                        std::string(frontend::to_string(family)));
      }
    }
    records.insert(records.end(), m.records.begin(), m.records.end());
    provenance.insert(provenance.end(), m.provenance.begin(), m.provenance.end());
  }
  std::ostringstream note;
  note << "pool family=" << frontend::to_string(family) << " inputs=" << manifests.size()
       << " crossFamily=" << (allowCrossFamily ? "allowed" : "rejected");
  provenance.push_back(note.str());
  return make_manifest(std::move(records), std::move(provenance));
}

}  // namespace indictts::corpus
