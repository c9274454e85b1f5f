#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "indictts/eval/session.hpp"

namespace indictts::eval {

// Half-up rounding to 2 decimals, robust to binary representation
// (3.975 -> 3.98).
double round_to_hundredths(double x);

struct MeanSummary {
  double mean = 0.0;
  double rounded = 0.0;
  std::size_t count = 0;
};

struct DmosResult {
  MeanSummary synthesized;                      // the DMOS figure
  MeanSummary natural;                          // anchors, reported separately
  std::map<std::string, MeanSummary> perStimulus;
  double trimmedMean = 0.0;                     // diagnostic only
};

struct SimilarityResult {
  MeanSummary score;
  std::map<std::string, MeanSummary> perStimulus;
  double trimmedMean = 0.0;
};

struct PreferenceResult {
  std::string optionA, optionB;
  std::size_t countA = 0, countB = 0, total = 0;
  double percentA = 0.0, percentB = 0.0;  // rounded to 2 decimals
};

inline constexpr double kDefaultTrimFraction = 0.1;

// Sorted values with floor(fraction * n) dropped at each end.
double trimmed_mean(std::vector<double> values, double fraction = kDefaultTrimFraction);

// Ratings for other sessions are ignored. Throw WrongKind or NoRatings.
DmosResult compute_dmos(const TestSession& s, std::span<const RatingRecord> ratings);
SimilarityResult compute_similarity_score(const TestSession& s, std::span<const RatingRecord> ratings);
PreferenceResult compute_preference(const TestSession& s, std::span<const RatingRecord> ratings);

struct DmosAggregate {
  // Mean of the per-session figures as reported (2 decimals).
  double meanOfSessionMeans = 0.0;
  double meanOfSessionMeansRounded = 0.0;
  // Every synthesized rating weighted equally.
  double pooledMean = 0.0;
  std::size_t sessions = 0;
  std::size_t ratings = 0;
};

// Throws NoRatings for an empty input.
DmosAggregate aggregate_dmos(std::span<const DmosResult> results);

nlohmann::json to_json(const MeanSummary& m);
nlohmann::json to_json(const DmosResult& r);
nlohmann::json to_json(const SimilarityResult& r);
nlohmann::json to_json(const PreferenceResult& r);
nlohmann::json to_json(const DmosAggregate& a);

}  // namespace indictts::eval
