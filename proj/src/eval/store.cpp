#include "indictts/eval/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cstring>
#include <fstream>

#include "indictts/common/error.hpp"
#include "indictts/common/random.hpp"

namespace indictts::eval {

namespace {

bool valid_session_id(std::string_view id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

// Each callback gets one parsed line. A torn final line (crash mid-write)
// is skipped; damage anywhere else is an error.
template <typename F>
void replay(const std::filesystem::path& file, F&& apply) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return;
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::size_t pos = 0, lineNo = 0;
  while (pos < content.size()) {
    ++lineNo;
    const auto nl = content.find('\n', pos);
    const bool complete = nl != std::string::npos;
    const std::string line = content.substr(pos, complete ? nl - pos : std::string::npos);
    pos = complete ? nl + 1 : content.size();
    if (line.empty()) continue;
    try {
      apply(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      if (!complete) break;
      throw Error(ErrorCode::IoError, file.string() + ":" + std::to_string(lineNo) + ": " + e.what());
    }
  }
}

}  // namespace

const TestSession& Snapshot::session(std::string_view id) const {
  const auto it = sessions.find(id);
  if (it == sessions.end()) throw Error(ErrorCode::UnknownSession, "no session '" + std::string(id) + "'");
  return *it->second;
}

std::span<const RatingRecord> Snapshot::ratings_for(std::string_view id) const {
  const auto it = ratings.find(id);
  if (it == ratings.end()) return {};
  return *it->second;
}

EvalStore::EvalStore(std::filesystem::path dataDir, bool checkFiles)
    : dir_(std::move(dataDir)), checkFiles_(checkFiles) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir_.string() + ": " + ec.message());

  auto snap = std::make_shared<Snapshot>();
  std::map<std::string, std::vector<RatingRecord>> ratings;
  replay(dir_ / kSessionsLog, [&](const nlohmann::json& j) {
    auto s = std::make_shared<const TestSession>(session_from_json(j));
    snap->sessions[s->id] = s;
  });
  replay(dir_ / kRatingsLog, [&](const nlohmann::json& j) {
    RatingRecord r = rating_from_json(j);
    if (!snap->rated.emplace(r.listenerId, r.stimulusId).second) return;
    ratings[r.sessionId].push_back(std::move(r));
  });
  for (auto& [id, list] : ratings) {
    snap->ratings[id] = std::make_shared<const std::vector<RatingRecord>>(std::move(list));
  }
  current_ = std::move(snap);
}

std::shared_ptr<const Snapshot> EvalStore::snapshot() const { return std::atomic_load(&current_); }

void EvalStore::publish(std::shared_ptr<const Snapshot> s) { std::atomic_store(&current_, std::move(s)); }

void EvalStore::append_line(const std::filesystem::path& file, const std::string& line) {
  const int fd = ::open(file.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd < 0) throw Error(ErrorCode::IoError, "cannot open " + file.string() + ": " + std::strerror(errno));
  const std::string data = line + "\n";
  std::size_t done = 0;
  while (done < data.size()) {
    const ssize_t n = ::write(fd, data.data() + done, data.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      const int err = errno;
      ::close(fd);
      throw Error(ErrorCode::IoError, "write to " + file.string() + " failed: " + std::strerror(err));
    }
    done += static_cast<std::size_t>(n);
  }
  const bool synced = ::fsync(fd) == 0;
  ::close(fd);
  if (!synced) throw Error(ErrorCode::IoError, "fsync of " + file.string() + " failed");
}

TestSession EvalStore::create_session(const nlohmann::json& config) {
  std::lock_guard lock(writer_);
  const auto snap = snapshot();
  std::string id;
  if (config.is_object() && config.contains("id")) {
    if (!config["id"].is_string() || !valid_session_id(config["id"].get<std::string>())) {
      throw Error(ErrorCode::InvalidConfig, "session id must match [A-Za-z0-9_]+");
    }
    id = config["id"].get<std::string>();
    if (snap->sessions.count(id) != 0) throw Error(ErrorCode::InvalidConfig, "session '" + id + "' already exists");
  } else {
    // Content-derived, with a counter to stay unique.
    const std::uint64_t h = fnv1a(config.dump());
    for (std::uint64_t salt = 0;; ++salt) {
      char buf[24];
      std::snprintf(buf, sizeof buf, "s%012llx", static_cast<unsigned long long>((h + salt) & 0xffffffffffffULL));
      if (snap->sessions.count(buf) == 0) {
        id = buf;
        break;
      }
    }
  }
  TestSession s = session_from_config(config, id, checkFiles_);
  append_line(dir_ / kSessionsLog, to_json(s).dump());

  auto next = std::make_shared<Snapshot>(*snap);
  next->sessions[s.id] = std::make_shared<const TestSession>(s);
  publish(std::move(next));
  return s;
}

RatingRecord EvalStore::submit_rating(RatingRecord r) {
  std::lock_guard lock(writer_);
  const auto snap = snapshot();
  const TestSession& s = snap->session(r.sessionId);
  const Stimulus* st = s.find(r.stimulusId);
  if (st == nullptr) {
    throw Error(ErrorCode::UnknownStimulus, "stimulus '" + r.stimulusId + "' is not in session '" + s.id + "'");
  }
  if (!s.is_rated(*st)) throw Error(ErrorCode::InvalidArgument, "reference-speaker clips are not rated");
  check_value(s, r.value);
  if (snap->rated.count({r.listenerId, r.stimulusId}) != 0) {
    throw Error(ErrorCode::DuplicateRating, "listener '" + r.listenerId + "' already rated '" + r.stimulusId + "'");
  }
  if (r.timestamp.empty()) r.timestamp = utc_timestamp();
  append_line(dir_ / kRatingsLog, to_json(r).dump());

  auto next = std::make_shared<Snapshot>(*snap);
  next->rated.emplace(r.listenerId, r.stimulusId);
  auto list = std::make_shared<std::vector<RatingRecord>>();
  if (auto it = snap->ratings.find(r.sessionId); it != snap->ratings.end()) *list = *it->second;
  list->push_back(r);
  next->ratings[r.sessionId] = std::move(list);
  publish(std::move(next));
  return r;
}

NextStimulus EvalStore::next_stimulus(std::string_view sessionId, std::string_view listenerId) const {
  const auto snap = snapshot();
  const TestSession& s = snap->session(sessionId);
  NextStimulus out;
  for (std::size_t i : s.reference_indices()) out.references.push_back(s.stimuli[i]);
  const auto order = listener_order(s, listenerId);
  out.total = order.size();
  const std::string listener(listenerId);
  for (std::size_t i : order) {
    if (snap->rated.count({listener, s.stimuli[i].id}) != 0) {
      ++out.completed;
    } else if (!out.stimulus) {
      out.stimulus = s.stimuli[i];
    }
  }
  return out;
}

std::pair<std::shared_ptr<const TestSession>, Stimulus> EvalStore::find_stimulus(std::string_view stimulusId) const {
  const auto snap = snapshot();
  // Stimulus ids are "<sessionId>-<nn>" and session ids carry no '-'.
  const auto dash = stimulusId.rfind('-');
  if (dash != std::string_view::npos) {
    if (auto it = snap->sessions.find(stimulusId.substr(0, dash)); it != snap->sessions.end()) {
      if (const Stimulus* st = it->second->find(stimulusId)) return {it->second, *st};
    }
  }
  throw Error(ErrorCode::UnknownStimulus, "no stimulus '" + std::string(stimulusId) + "'");
}

nlohmann::json EvalStore::results(std::string_view sessionId) const {
  const auto snap = snapshot();
  const TestSession& s = snap->session(sessionId);
  const auto ratings = snap->ratings_for(sessionId);
  nlohmann::json j;
  switch (s.kind) {
    case TestKind::DMOS: j = to_json(compute_dmos(s, ratings)); break;
    case TestKind::SpeakerSimilarity: j = to_json(compute_similarity_score(s, ratings)); break;
    case TestKind::NativityPreference: j = to_json(compute_preference(s, ratings)); break;
  }
  j["sessionId"] = s.id;
  return j;
}

DmosResult EvalStore::dmos(std::string_view sessionId) const {
  const auto snap = snapshot();
  return compute_dmos(snap->session(sessionId), snap->ratings_for(sessionId));
}

DmosAggregate EvalStore::aggregate(const std::vector<std::string>& sessionIds) const {
  std::vector<DmosResult> results;
  for (const auto& id : sessionIds) results.push_back(dmos(id));
  return aggregate_dmos(results);
}

}  // namespace indictts::eval
