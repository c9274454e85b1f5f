#include "indictts/eval/scenario.hpp"

#include <algorithm>
#include <cctype>

#include "indictts/common/error.hpp"

namespace indictts::eval {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool contains(const std::vector<std::string>& set, const std::string& x) {
  return std::any_of(set.begin(), set.end(), [&](const std::string& s) { return lower(s) == lower(x); });
}

}  // namespace

char scenario_label(bool languageSeen, bool speakerSeen, bool switching) {
  if (languageSeen) {
    if (!speakerSeen) return 'c';
    return switching ? 'b' : 'a';
  }
  return speakerSeen ? 'e' : 'd';
}

std::string_view describe_label(char label) {
  switch (label) {
    case 'a': return "seen language, native seen speaker";
    case 'b': return "seen language, seen speaker of another language";
    case 'c': return "seen language, unseen speaker";
    case 'd': return "unseen language, unseen speaker";
    case 'e': return "unseen language, seen speaker";
  }
  return "?";
}

ScenarioPlan plan_scenarios(const std::vector<std::string>& seenLanguages, const std::vector<std::string>& seenSpeakers,
                            const std::vector<std::string>& targetLanguages,
                            const std::vector<std::string>& targetSpeakers,
                            const std::map<std::string, std::string>& nativeLanguage) {
  if (seenLanguages.empty() || seenSpeakers.empty() || targetLanguages.empty() || targetSpeakers.empty()) {
    throw Error(ErrorCode::InvalidArgument, "scenario planning needs non-empty language and speaker sets");
  }
  std::map<std::string, std::string> native;
  for (const auto& [spk, lang] : nativeLanguage) native[lower(spk)] = lower(lang);

  ScenarioPlan plan;
  for (const auto& lang : targetLanguages) {
    for (const auto& spk : targetSpeakers) {
      ScenarioEntry e;
      e.textLanguage = lang;
      e.speaker = spk;
      e.languageSeen = contains(seenLanguages, lang);
      e.speakerSeen = contains(seenSpeakers, spk);
      const auto it = native.find(lower(spk));
      e.switching = (it != native.end() ? it->second : lower(spk)) != lower(lang);
      e.label = scenario_label(e.languageSeen, e.speakerSeen, e.switching);
      plan.entries.push_back(std::move(e));
    }
  }
  return plan;
}

nlohmann::json to_json(const ScenarioPlan& plan) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : plan.entries) {
    out.push_back({{"textLanguage", e.textLanguage},
                   {"speaker", e.speaker},
                   {"languageSeen", e.languageSeen},
                   {"speakerSeen", e.speakerSeen},
                   {"switching", e.switching},
                   {"label", std::string(1, e.label)}});
  }
  return {{"entries", out}};
}

}  // namespace indictts::eval
