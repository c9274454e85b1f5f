#include <algorithm>
#include <sstream>

#include "indictts/common/error.hpp"
#include "indictts/corpus/manifest.hpp"

namespace indictts::corpus {

Manifest select_adaptation_subset(const Manifest& m, double targetMinutes, std::uint64_t seed) {
  if (!(targetMinutes > 0.0)) throw Error(ErrorCode::InvalidArgument, "target must be positive");
  const double targetSec = targetMinutes * 60.0;
  if (m.totalDurationSec < targetSec) {
    std::ostringstream msg;
    msg << "pool holds " << m.totalDurationSec << " s, target is " << targetSec << " s";
    throw Error(ErrorCode::InsufficientData, msg.str());
  }

  // Sorting first makes the result independent of the input record order.
  std::vector<const UtteranceRecord*> sorted;
  sorted.reserve(m.records.size());
  for (const auto& r : m.records) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) { return a->id < b->id; });

  std::vector<UtteranceRecord> selected;
  double total = 0.0;
  for (std::size_t idx : seeded_permutation(sorted.size(), seed)) {
    if (total >= targetSec) break;
    selected.push_back(*sorted[idx]);
    total += sorted[idx]->durationSec;
  }

  auto provenance = m.provenance;
  std::ostringstream note;
  note << "select_adaptation_subset targetMinutes=" << targetMinutes << " seed=" << seed
       << " selected=" << selected.size();
  provenance.push_back(note.str());
  return make_manifest(std::move(selected), std::move(provenance));
}

}  // namespace indictts::corpus
