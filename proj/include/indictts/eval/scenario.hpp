#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace indictts::eval {

struct ScenarioEntry {
  std::string textLanguage;
  std::string speaker;
  bool languageSeen = false;
  bool speakerSeen = false;
  bool switching = false;  // speaker's native language differs from the text
  char label = 'a';
};

struct ScenarioPlan {
  std::vector<ScenarioEntry> entries;
};

// a: seen language, seen native speaker; b: seen language, seen speaker of
// another language; c: seen language, unseen speaker; d: unseen language,
// unseen speaker; e: unseen language, seen speaker.
char scenario_label(bool languageSeen, bool speakerSeen, bool switching);
std::string_view describe_label(char label);

// Cross product of target languages and target speakers, in input order.
// Names compare case-insensitively. A speaker's native language defaults to
// the speaker name (corpus speakers are named after their language).
// Throws InvalidArgument for any empty set.
ScenarioPlan plan_scenarios(const std::vector<std::string>& seenLanguages, const std::vector<std::string>& seenSpeakers,
                            const std::vector<std::string>& targetLanguages,
                            const std::vector<std::string>& targetSpeakers,
                            const std::map<std::string, std::string>& nativeLanguage = {});

nlohmann::json to_json(const ScenarioPlan& plan);

}  // namespace indictts::eval
