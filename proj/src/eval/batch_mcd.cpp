#include "indictts/eval/batch_mcd.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <thread>

#include "indictts/common/audio.hpp"
#include "indictts/common/error.hpp"
#include "indictts/features/dtw.hpp"
#include "indictts/features/mel.hpp"

namespace indictts::eval {

namespace {

std::map<std::string, std::filesystem::path> wav_files(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error(ErrorCode::IoError, "not a directory: " + dir.string());
  std::map<std::string, std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".wav") out[entry.path().stem().string()] = entry.path();
  }
  return out;
}

}  // namespace

double mcd_between_files(const std::filesystem::path& ref, const std::filesystem::path& syn,
                         const features::MelParams& params, int order) {
  const auto a = features::mcep(features::mel_spectrogram(read_wav(ref), params), order);
  const auto b = features::mcep(features::mel_spectrogram(read_wav(syn), params), order);
  return features::mcd(a, b);
}

BatchMcdReport batch_mcd(const std::filesystem::path& refDir, const std::filesystem::path& synDir,
                         const BatchMcdOptions& options) {
  const auto refs = wav_files(refDir);
  const auto syns = wav_files(synDir);
  std::vector<std::string> names;
  for (const auto& [k, _] : refs) names.push_back(k);
  for (const auto& [k, _] : syns) {
    if (refs.count(k) == 0) names.push_back(k);
  }
  std::sort(names.begin(), names.end());
  const bool anyPair = std::any_of(names.begin(), names.end(), [&](const auto& n) {
    return refs.count(n) != 0 && syns.count(n) != 0;
  });
  if (!anyPair) throw Error(ErrorCode::NoPairs, "no file name appears in both directories");

  BatchMcdReport report;
  report.rows.resize(names.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < names.size(); i = next++) {
      McdRow& row = report.rows[i];
      row.utteranceId = names[i];
      const auto r = refs.find(names[i]);
      const auto s = syns.find(names[i]);
      if (r == refs.end() || s == syns.end()) {
        row.error = std::string(to_string(ErrorCode::MissingAudio)) + ": no counterpart in " +
                    (r == refs.end() ? refDir : synDir).string();
        continue;
      }
      try {
        row.mcd = mcd_between_files(r->second, s->second, options.params, options.order);
      } catch (const Error& e) {
        row.error = std::string(to_string(e.code())) + ": " + e.what();
      }
    }
  };
  unsigned n = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(names.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  double sum = 0.0;
  for (const auto& row : report.rows) {
    if (row.mcd) {
      sum += *row.mcd;
      ++report.scored;
    }
  }
  if (report.scored > 0) report.mean = sum / static_cast<double>(report.scored);
  return report;
}

nlohmann::json to_json(const BatchMcdReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json j = {{"utteranceId", row.utteranceId}};
    if (row.mcd) j["mcd"] = *row.mcd;
    else j["error"] = row.error;
    rows.push_back(std::move(j));
  }
  nlohmann::json out = {{"rows", rows}, {"scored", r.scored}};
  out["mean"] = r.mean ? nlohmann::json(*r.mean) : nlohmann::json(nullptr);
  return out;
}

void write_report(const std::filesystem::path& file, const BatchMcdReport& r) {
  std::ofstream f(file, std::ios::trunc);
  if (!f) throw Error(ErrorCode::IoError, "cannot write " + file.string());
  f << to_json(r).dump(2) << "\n";
}

}  // namespace indictts::eval
