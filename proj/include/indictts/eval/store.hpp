#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "indictts/eval/session.hpp"
#include "indictts/eval/stats.hpp"

namespace indictts::eval {

// Immutable view of everything persisted so far.
struct Snapshot {
  std::map<std::string, std::shared_ptr<const TestSession>, std::less<>> sessions;
  std::map<std::string, std::shared_ptr<const std::vector<RatingRecord>>, std::less<>> ratings;  // by session
  std::set<std::pair<std::string, std::string>> rated;  // (listener, stimulus)

  const TestSession& session(std::string_view id) const;  // throws UnknownSession
  std::span<const RatingRecord> ratings_for(std::string_view id) const;
};

struct NextStimulus {
  std::optional<Stimulus> stimulus;  // empty once the listener is done
  std::vector<Stimulus> references;
  std::size_t completed = 0;
  std::size_t total = 0;
};

// Durable store: sessions.jsonl and ratings.jsonl in dataDir, one record
// per line, append-only and fsynced. Indices are rebuilt from the logs on
// construction. Writers are serialized; readers take lock-free snapshots.
class EvalStore {
 public:
  explicit EvalStore(std::filesystem::path dataDir, bool checkFiles = true);

  const std::filesystem::path& data_dir() const { return dir_; }

  // Session ids come from config "id" when present (must be new and
  // [A-Za-z0-9_]+) or are generated. Throws InvalidConfig, MissingStimulus.
  TestSession create_session(const nlohmann::json& config);

  // Throws UnknownSession, UnknownStimulus, DuplicateRating, OutOfScale,
  // InvalidArgument (rating a reference clip).
  RatingRecord submit_rating(RatingRecord r);

  std::shared_ptr<const Snapshot> snapshot() const;

  NextStimulus next_stimulus(std::string_view sessionId, std::string_view listenerId) const;
  // The owning session and stimulus; throws UnknownStimulus.
  std::pair<std::shared_ptr<const TestSession>, Stimulus> find_stimulus(std::string_view stimulusId) const;

  // Statistics for the session's kind, as JSON.
  nlohmann::json results(std::string_view sessionId) const;
  DmosResult dmos(std::string_view sessionId) const;
  DmosAggregate aggregate(const std::vector<std::string>& sessionIds) const;

 private:
  void publish(std::shared_ptr<const Snapshot> s);
  void append_line(const std::filesystem::path& file, const std::string& line);

  std::filesystem::path dir_;
  bool checkFiles_;
  std::mutex writer_;
  std::shared_ptr<const Snapshot> current_;
};

inline constexpr std::string_view kSessionsLog = "sessions.jsonl";
inline constexpr std::string_view kRatingsLog = "ratings.jsonl";

}  // namespace indictts::eval
