#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace indictts::frontend {

enum class Script { Devanagari, Bengali, Gujarati, Odia, Tamil, Telugu, Kannada, Malayalam };

inline constexpr std::array<Script, 8> kAllScripts = {
    Script::Devanagari, Script::Bengali, Script::Gujarati, Script::Odia,
    Script::Tamil,      Script::Telugu,  Script::Kannada,  Script::Malayalam};

// Each script owns the 128 codepoints starting at its base.
inline constexpr char32_t kBlockSize = 0x80;

constexpr char32_t base_codepoint(Script s) {
  switch (s) {
    case Script::Devanagari: return 0x0900;
    case Script::Bengali: return 0x0980;
    case Script::Gujarati: return 0x0A80;
    case Script::Odia: return 0x0B00;
    case Script::Tamil: return 0x0B80;
    case Script::Telugu: return 0x0C00;
    case Script::Kannada: return 0x0C80;
    case Script::Malayalam: return 0x0D00;
  }
  return 0;
}

// The script whose block contains cp, if any of the eight does.
std::optional<Script> script_of(char32_t cp);

std::string_view to_string(Script s);
Script parse_script(std::string_view name);

enum class Language { Bengali, Gujarati, Hindi, Odia, Rajasthani, Kannada, Malayalam, Tamil, Telugu };

inline constexpr std::array<Language, 9> kAllLanguages = {
    Language::Bengali, Language::Gujarati,  Language::Hindi, Language::Odia,   Language::Rajasthani,
    Language::Kannada, Language::Malayalam, Language::Tamil, Language::Telugu};

enum class Family { IndoAryan, Dravidian };

Script script_of(Language lang);
Family family_of(Language lang);

// Lower-case names ("hindi"); parsing is case-insensitive.
std::string_view to_string(Language lang);
Language parse_language(std::string_view name);
std::string_view to_string(Family f);
Family parse_family(std::string_view name);

// Danda and double danda live in the Devanagari block but are shared by
// several scripts, so they never count as evidence for a script.
constexpr bool is_shared_punctuation(char32_t cp) { return cp == 0x0964 || cp == 0x0965; }

// The unique script covering every Indic codepoint in the text. Throws
// MixedScript or NoIndicContent.
Script detect_script(std::u32string_view text);
Script detect_script(std::string_view utf8);

}  // namespace indictts::frontend
