#include "indictts/frontend/script.hpp"

#include <algorithm>
#include <cctype>

#include "indictts/common/error.hpp"
#include "indictts/common/unicode.hpp"

namespace indictts::frontend {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::optional<Script> script_of(char32_t cp) {
  for (Script s : kAllScripts) {
    const char32_t base = base_codepoint(s);
    if (cp >= base && cp < base + kBlockSize) return s;
  }
  return std::nullopt;
}

std::string_view to_string(Script s) {
  switch (s) {
    case Script::Devanagari: return "Devanagari";
    case Script::Bengali: return "Bengali";
    case Script::Gujarati: return "Gujarati";
    case Script::Odia: return "Odia";
    case Script::Tamil: return "Tamil";
    case Script::Telugu: return "Telugu";
    case Script::Kannada: return "Kannada";
    case Script::Malayalam: return "Malayalam";
  }
  return "?";
}

Script parse_script(std::string_view name) {
  const std::string key = lower(name);
  for (Script s : kAllScripts) {
    if (lower(to_string(s)) == key) return s;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown script '" + std::string(name) + "'");
}

Script script_of(Language lang) {
  switch (lang) {
    case Language::Hindi:
    case Language::Rajasthani: return Script::Devanagari;
    case Language::Bengali: return Script::Bengali;
    case Language::Gujarati: return Script::Gujarati;
    case Language::Odia: return Script::Odia;
    case Language::Kannada: return Script::Kannada;
    case Language::Malayalam: return Script::Malayalam;
    case Language::Tamil: return Script::Tamil;
    case Language::Telugu: return Script::Telugu;
  }
  return Script::Devanagari;
}

Family family_of(Language lang) {
  switch (lang) {
    case Language::Bengali:
    case Language::Gujarati:
    case Language::Hindi:
    case Language::Odia:
    case Language::Rajasthani: return Family::IndoAryan;
    case Language::Kannada:
    case Language::Malayalam:
    case Language::Tamil:
    case Language::Telugu: return Family::Dravidian;
  }
  return Family::IndoAryan;
}

std::string_view to_string(Language lang) {
  switch (lang) {
    case Language::Bengali: return "bengali";
    case Language::Gujarati: return "gujarati";
    case Language::Hindi: return "hindi";
    case Language::Odia: return "odia";
    case Language::Rajasthani: return "rajasthani";
    case Language::Kannada: return "kannada";
    case Language::Malayalam: return "malayalam";
    case Language::Tamil: return "tamil";
    case Language::Telugu: return "telugu";
  }
  return "?";
}

Language parse_language(std::string_view name) {
  const std::string key = lower(name);
  for (Language l : kAllLanguages) {
    if (to_string(l) == key) return l;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown language '" + std::string(name) + "'");
}

std::string_view to_string(Family f) { return f == Family::IndoAryan ? "IndoAryan" : "Dravidian"; }

Family parse_family(std::string_view name) {
  const std::string key = lower(name);
  if (key == "indoaryan" || key == "indo-aryan") return Family::IndoAryan;
  if (key == "dravidian") return Family::Dravidian;
  throw Error(ErrorCode::InvalidArgument, "unknown family '" + std::string(name) + "'");
}

Script detect_script(std::u32string_view text) {
  std::optional<Script> found;
  for (char32_t cp : text) {
    if (is_shared_punctuation(cp)) continue;
    const auto s = script_of(cp);
    if (!s) continue;
    if (found && *found != *s) {
      throw Error(ErrorCode::MixedScript, "text mixes " + std::string(to_string(*found)) + " and " +
                                              std::string(to_string(*s)));
    }
    found = s;
  }
  if (!found) throw Error(ErrorCode::NoIndicContent, "no codepoint from a supported Indic block");
  return *found;
}

Script detect_script(std::string_view utf8) { return detect_script(unicode::decode(utf8)); }

}  // namespace indictts::frontend
