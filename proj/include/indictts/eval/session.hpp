#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace indictts::eval {

enum class TestKind { DMOS, SpeakerSimilarity, NativityPreference };
enum class StimulusRole { synthesized, natural, referenceSpeaker };

std::string_view to_string(TestKind k);
std::string_view to_string(StimulusRole r);
// Throw InvalidConfig for unknown names.
TestKind parse_kind(std::string_view s);
StimulusRole parse_role(std::string_view s);

struct Stimulus {
  std::string id;  // "<sessionId>-<nn>", assigned on creation
  std::string utteranceId;
  std::filesystem::path audioPath;
  StimulusRole role = StimulusRole::synthesized;
  std::vector<std::string> optionLabels;  // preference only
};

struct TestSession {
  std::string id;
  TestKind kind = TestKind::DMOS;
  std::vector<Stimulus> stimuli;
  std::vector<std::string> optionLabels;  // the pair shared by every stimulus
  int listenerCount = 1;

  // Stimuli listeners rate; reference-speaker clips are only played.
  bool is_rated(const Stimulus& s) const { return s.role != StimulusRole::referenceSpeaker; }
  std::vector<std::size_t> rated_indices() const;
  std::vector<std::size_t> reference_indices() const;
  const Stimulus* find(std::string_view stimulusId) const;
};

// Validates a session config (the TestSession field names; stimulus ids
// are ignored and reassigned). Throws InvalidConfig, or MissingStimulus
// when checkFiles is set and an audio file does not exist.
TestSession session_from_config(const nlohmann::json& config, std::string id, bool checkFiles = true);

nlohmann::json to_json(const TestSession& s);
TestSession session_from_json(const nlohmann::json& j);

// Seeded by FNV-1a of (sessionId, listenerId): indices into
// session.stimuli of the rated stimuli, in this listener's presentation
// order.
std::vector<std::size_t> listener_order(const TestSession& s, std::string_view listenerId);

struct RatingRecord {
  std::string sessionId;
  std::string listenerId;
  std::string stimulusId;
  nlohmann::json value;  // integer 1..5, or an option label
  std::string timestamp;
};

nlohmann::json to_json(const RatingRecord& r);
RatingRecord rating_from_json(const nlohmann::json& j);

inline constexpr int kScaleMin = 1;
inline constexpr int kScaleMax = 5;

// Throws OutOfScale when the value does not fit the session kind.
void check_value(const TestSession& s, const nlohmann::json& value);

std::string utc_timestamp();

}  // namespace indictts::eval
