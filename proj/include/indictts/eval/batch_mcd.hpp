#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "indictts/features/types.hpp"
#include "json.hpp"

namespace indictts::eval {

struct McdRow {
  std::string utteranceId;
  std::optional<double> mcd;  // empty when the pair failed
  std::string error;          // error code name and message
};

struct BatchMcdReport {
  std::vector<McdRow> rows;  // sorted by utterance id
  std::optional<double> mean;  // over successful rows
  std::size_t scored = 0;
};

struct BatchMcdOptions {
  features::MelParams params;
  int order = features::kDefaultMcepOrder;
  unsigned threads = 0;  // 0: hardware concurrency
};

// Pairs *.wav files by name. A file present on one side only becomes an
// error row, as does any feature-lab failure; the mean covers the rest.
// Throws NoPairs when no name appears on both sides.
BatchMcdReport batch_mcd(const std::filesystem::path& refDir, const std::filesystem::path& synDir,
                         const BatchMcdOptions& options = {});

double mcd_between_files(const std::filesystem::path& ref, const std::filesystem::path& syn,
                         const features::MelParams& params, int order);

nlohmann::json to_json(const BatchMcdReport& r);
void write_report(const std::filesystem::path& file, const BatchMcdReport& r);

}  // namespace indictts::eval
