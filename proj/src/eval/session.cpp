#include "indictts/eval/session.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <set>

#include "indictts/common/error.hpp"
#include "indictts/common/random.hpp"

namespace indictts::eval {

namespace {

Error invalid(const std::string& why) { return Error(ErrorCode::InvalidConfig, why); }

std::string stimulus_id(const std::string& session, std::size_t index, std::size_t total) {
  const int width = std::max(2, static_cast<int>(std::to_string(total).size()));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*zu", width, index + 1);
  return session + "-" + buf;
}

template <typename T>
T field(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw invalid(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

std::string_view to_string(TestKind k) {
  switch (k) {
    case TestKind::DMOS: return "DMOS";
    case TestKind::SpeakerSimilarity: return "SpeakerSimilarity";
    case TestKind::NativityPreference: return "NativityPreference";
  }
  return "?";
}

std::string_view to_string(StimulusRole r) {
  switch (r) {
    case StimulusRole::synthesized: return "synthesized";
    case StimulusRole::natural: return "natural";
    case StimulusRole::referenceSpeaker: return "referenceSpeaker";
  }
  return "?";
}

TestKind parse_kind(std::string_view s) {
  for (auto k : {TestKind::DMOS, TestKind::SpeakerSimilarity, TestKind::NativityPreference}) {
    if (to_string(k) == s) return k;
  }
  throw invalid("unknown test kind '" + std::string(s) + "'");
}

StimulusRole parse_role(std::string_view s) {
  for (auto r : {StimulusRole::synthesized, StimulusRole::natural, StimulusRole::referenceSpeaker}) {
    if (to_string(r) == s) return r;
  }
  throw invalid("unknown stimulus role '" + std::string(s) + "'");
}

std::vector<std::size_t> TestSession::rated_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < stimuli.size(); ++i) {
    if (is_rated(stimuli[i])) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> TestSession::reference_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < stimuli.size(); ++i) {
    if (!is_rated(stimuli[i])) out.push_back(i);
  }
  return out;
}

const Stimulus* TestSession::find(std::string_view stimulusId) const {
  for (const auto& s : stimuli) {
    if (s.id == stimulusId) return &s;
  }
  return nullptr;
}

TestSession session_from_config(const nlohmann::json& config, std::string id, bool checkFiles) {
  if (!config.is_object()) throw invalid("session config must be an object");
  TestSession s;
  s.id = std::move(id);
  s.kind = parse_kind(field<std::string>(config, "kind", ""));
  s.listenerCount = field<int>(config, "listenerCount", 1);
  if (s.listenerCount < 1) throw invalid("listenerCount must be at least 1");
  s.optionLabels = field<std::vector<std::string>>(config, "optionLabels", {});

  if (!config.contains("stimuli") || !config["stimuli"].is_array() || config["stimuli"].empty()) {
    throw invalid("session needs a non-empty stimuli list");
  }
  const auto& list = config["stimuli"];
  std::set<std::string> utterances;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& item = list[i];
    if (!item.is_object()) throw invalid("stimulus " + std::to_string(i) + " must be an object");
    Stimulus st;
    st.id = stimulus_id(s.id, i, list.size());
    st.utteranceId = field<std::string>(item, "utteranceId", "");
    st.audioPath = field<std::string>(item, "audioPath", "");
    st.role = parse_role(field<std::string>(item, "role", "synthesized"));
    st.optionLabels = field<std::vector<std::string>>(item, "optionLabels", {});
    if (st.utteranceId.empty() || st.audioPath.empty()) {
      throw invalid("stimulus " + std::to_string(i) + " needs utteranceId and audioPath");
    }
    if (checkFiles && !std::filesystem::is_regular_file(st.audioPath)) {
      throw Error(ErrorCode::MissingStimulus, "audio file not found: " + st.audioPath.string());
    }
    s.stimuli.push_back(std::move(st));
  }

  std::size_t synthesized = 0, natural = 0, references = 0;
  for (const auto& st : s.stimuli) {
    synthesized += st.role == StimulusRole::synthesized;
    natural += st.role == StimulusRole::natural;
    references += st.role == StimulusRole::referenceSpeaker;
  }
  switch (s.kind) {
    case TestKind::DMOS:
      if (synthesized == 0 || natural == 0) throw invalid("DMOS sessions need synthesized and natural stimuli");
      if (references > 0) throw invalid("DMOS sessions take no reference-speaker stimuli");
      break;
    case TestKind::SpeakerSimilarity:
      if (references == 0) throw invalid("similarity sessions need at least one reference-speaker stimulus");
      if (synthesized + natural == 0) throw invalid("similarity sessions need stimuli to rate");
      break;
    case TestKind::NativityPreference: {
      if (references > 0) throw invalid("preference sessions take no reference-speaker stimuli");
      // The pair may be given per session, per stimulus, or both; it must
      // be the same pair everywhere.
      std::vector<std::string> pair = s.optionLabels;
      for (const auto& st : s.stimuli) {
        if (st.optionLabels.empty()) continue;
        if (pair.empty()) pair = st.optionLabels;
        if (st.optionLabels != pair) throw invalid("all preference stimuli must share one option pair");
      }
      if (pair.size() != 2 || pair[0].empty() || pair[1].empty() || pair[0] == pair[1]) {
        throw invalid("preference sessions need exactly two distinct option labels");
      }
      s.optionLabels = pair;
      for (auto& st : s.stimuli) st.optionLabels = pair;
      break;
    }
  }
  if (s.kind != TestKind::NativityPreference && !s.optionLabels.empty()) {
    throw invalid("option labels only apply to preference sessions");
  }
  return s;
}

nlohmann::json to_json(const TestSession& s) {
  nlohmann::json stimuli = nlohmann::json::array();
  for (const auto& st : s.stimuli) {
    nlohmann::json j = {{"id", st.id},
                        {"utteranceId", st.utteranceId},
                        {"audioPath", st.audioPath.string()},
                        {"role", to_string(st.role)}};
    if (!st.optionLabels.empty()) j["optionLabels"] = st.optionLabels;
    stimuli.push_back(std::move(j));
  }
  nlohmann::json j = {{"id", s.id}, {"kind", to_string(s.kind)}, {"stimuli", stimuli}, {"listenerCount", s.listenerCount}};
  if (!s.optionLabels.empty()) j["optionLabels"] = s.optionLabels;
  return j;
}

TestSession session_from_json(const nlohmann::json& j) {
  TestSession s = session_from_config(j, j.at("id").get<std::string>(), false);
  // Stored ids win over regenerated ones.
  for (std::size_t i = 0; i < s.stimuli.size(); ++i) {
    if (j["stimuli"][i].contains("id")) s.stimuli[i].id = j["stimuli"][i]["id"].get<std::string>();
  }
  return s;
}

std::vector<std::size_t> listener_order(const TestSession& s, std::string_view listenerId) {
  const std::vector<std::size_t> rated = s.rated_indices();
  std::string key = s.id;
  key.push_back('\x1f');
  key.append(listenerId);
  const auto perm = seeded_permutation(rated.size(), fnv1a(key));
  std::vector<std::size_t> out;
  out.reserve(rated.size());
  for (std::size_t p : perm) out.push_back(rated[p]);
  return out;
}

nlohmann::json to_json(const RatingRecord& r) {
  return {{"sessionId", r.sessionId},
          {"listenerId", r.listenerId},
          {"stimulusId", r.stimulusId},
          {"value", r.value},
          {"timestamp", r.timestamp}};
}

RatingRecord rating_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "rating must be an object");
  RatingRecord r;
  try {
    r.sessionId = j.at("sessionId").get<std::string>();
    r.listenerId = j.at("listenerId").get<std::string>();
    r.stimulusId = j.at("stimulusId").get<std::string>();
    r.value = j.at("value");
    r.timestamp = j.value("timestamp", std::string());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("rating: ") + e.what());
  }
  if (r.listenerId.empty()) throw Error(ErrorCode::InvalidArgument, "listenerId must not be empty");
  return r;
}

void check_value(const TestSession& s, const nlohmann::json& value) {
  if (s.kind == TestKind::NativityPreference) {
    if (!value.is_string() ||
        std::find(s.optionLabels.begin(), s.optionLabels.end(), value.get<std::string>()) == s.optionLabels.end()) {
      throw Error(ErrorCode::OutOfScale, "value must be one of the session's two option labels");
    }
    return;
  }
  if (!value.is_number_integer()) throw Error(ErrorCode::OutOfScale, "value must be an integer 1-5");
  const auto v = value.get<long long>();
  if (v < kScaleMin || v > kScaleMax) {
    throw Error(ErrorCode::OutOfScale, "value " + std::to_string(v) + " outside 1-5");
  }
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday,
                tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(ms));
  return buf;
}

}  // namespace indictts::eval
