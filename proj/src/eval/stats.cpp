#include "indictts/eval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "indictts/common/error.hpp"

namespace indictts::eval {

namespace {

MeanSummary summarize(const std::vector<double>& v) {
  MeanSummary m;
  m.count = v.size();
  if (!v.empty()) {
    m.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    m.rounded = round_to_hundredths(m.mean);
  }
  return m;
}

void require_kind(const TestSession& s, TestKind k) {
  if (s.kind != k) {
    throw Error(ErrorCode::WrongKind, "session '" + s.id + "' is " + std::string(to_string(s.kind)) + ", not " +
                                          std::string(to_string(k)));
  }
}

// Scale ratings of this session grouped by stimulus id.
std::map<std::string, std::vector<double>> by_stimulus(const TestSession& s, std::span<const RatingRecord> ratings) {
  std::map<std::string, std::vector<double>> out;
  for (const auto& r : ratings) {
    if (r.sessionId != s.id || !r.value.is_number()) continue;
    out[r.stimulusId].push_back(r.value.get<double>());
  }
  return out;
}

}  // namespace

double round_to_hundredths(double x) {
  // The nudge absorbs representation error (3.975 is stored as
  // 3.97499999...), far below anything a rating mean can resolve.
  const double scaled = x * 100.0;
  return std::floor(scaled + 0.5 + 1e-9 * std::max(1.0, std::abs(scaled))) / 100.0;
}

double trimmed_mean(std::vector<double> values, double fraction) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  auto drop = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(values.size())));
  if (2 * drop >= values.size()) drop = (values.size() - 1) / 2;
  const auto first = values.begin() + static_cast<std::ptrdiff_t>(drop);
  const auto last = values.end() - static_cast<std::ptrdiff_t>(drop);
  return std::accumulate(first, last, 0.0) / static_cast<double>(last - first);
}

DmosResult compute_dmos(const TestSession& s, std::span<const RatingRecord> ratings) {
  require_kind(s, TestKind::DMOS);
  std::vector<double> syn, nat;
  DmosResult out;
  for (const auto& [stim, values] : by_stimulus(s, ratings)) {
    const Stimulus* st = s.find(stim);
    if (st == nullptr) continue;
    auto& bucket = st->role == StimulusRole::natural ? nat : syn;
    bucket.insert(bucket.end(), values.begin(), values.end());
    out.perStimulus[stim] = summarize(values);
  }
  if (syn.empty()) throw Error(ErrorCode::NoRatings, "no ratings on synthesized stimuli in '" + s.id + "'");
  out.synthesized = summarize(syn);
  out.natural = summarize(nat);
  out.trimmedMean = trimmed_mean(syn);
  return out;
}

SimilarityResult compute_similarity_score(const TestSession& s, std::span<const RatingRecord> ratings) {
  require_kind(s, TestKind::SpeakerSimilarity);
  std::vector<double> all;
  SimilarityResult out;
  for (const auto& [stim, values] : by_stimulus(s, ratings)) {
    all.insert(all.end(), values.begin(), values.end());
    out.perStimulus[stim] = summarize(values);
  }
  if (all.empty()) throw Error(ErrorCode::NoRatings, "no ratings in '" + s.id + "'");
  out.score = summarize(all);
  out.trimmedMean = trimmed_mean(all);
  return out;
}

PreferenceResult compute_preference(const TestSession& s, std::span<const RatingRecord> ratings) {
  require_kind(s, TestKind::NativityPreference);
  PreferenceResult out;
  out.optionA = s.optionLabels.at(0);
  out.optionB = s.optionLabels.at(1);
  for (const auto& r : ratings) {
    if (r.sessionId != s.id || !r.value.is_string()) continue;
    const auto v = r.value.get<std::string>();
    if (v == out.optionA) ++out.countA;
    else if (v == out.optionB) ++out.countB;
  }
  out.total = out.countA + out.countB;
  if (out.total == 0) throw Error(ErrorCode::NoRatings, "no preference choices in '" + s.id + "'");
  out.percentA = round_to_hundredths(100.0 * static_cast<double>(out.countA) / static_cast<double>(out.total));
  out.percentB = round_to_hundredths(100.0 * static_cast<double>(out.countB) / static_cast<double>(out.total));
  return out;
}

DmosAggregate aggregate_dmos(std::span<const DmosResult> results) {
  if (results.empty()) throw Error(ErrorCode::NoRatings, "no sessions to aggregate");
  DmosAggregate a;
  double sumReported = 0.0, sumRatings = 0.0;
  for (const auto& r : results) {
    sumReported += r.synthesized.rounded;
    sumRatings += r.synthesized.mean * static_cast<double>(r.synthesized.count);
    a.ratings += r.synthesized.count;
  }
  a.sessions = results.size();
  a.meanOfSessionMeans = sumReported / static_cast<double>(a.sessions);
  a.meanOfSessionMeansRounded = round_to_hundredths(a.meanOfSessionMeans);
  a.pooledMean = sumRatings / static_cast<double>(a.ratings);
  return a;
}

nlohmann::json to_json(const MeanSummary& m) {
  return {{"mean", m.mean}, {"rounded", m.rounded}, {"count", m.count}};
}

nlohmann::json to_json(const DmosResult& r) {
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [k, v] : r.perStimulus) per[k] = to_json(v);
  return {{"kind", "DMOS"},
          {"mean", r.synthesized.rounded},
          {"rawMean", r.synthesized.mean},
          {"count", r.synthesized.count},
          {"naturalAnchors", to_json(r.natural)},
          {"perStimulus", per},
          {"trimmedMean", r.trimmedMean}};
}

nlohmann::json to_json(const SimilarityResult& r) {
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [k, v] : r.perStimulus) per[k] = to_json(v);
  return {{"kind", "SpeakerSimilarity"},
          {"mean", r.score.rounded},
          {"rawMean", r.score.mean},
          {"count", r.score.count},
          {"perStimulus", per},
          {"trimmedMean", r.trimmedMean}};
}

nlohmann::json to_json(const PreferenceResult& r) {
  return {{"kind", "NativityPreference"},
          {"optionA", r.optionA},
          {"optionB", r.optionB},
          {"optionAPercent", r.percentA},
          {"optionBPercent", r.percentB},
          {"countA", r.countA},
          {"countB", r.countB},
          {"total", r.total}};
}

nlohmann::json to_json(const DmosAggregate& a) {
  return {{"meanOfSessionMeans", a.meanOfSessionMeans},
          {"meanOfSessionMeansRounded", a.meanOfSessionMeansRounded},
          {"pooledMean", a.pooledMean},
          {"sessions", a.sessions},
          {"ratings", a.ratings}};
}

}  // namespace indictts::eval
