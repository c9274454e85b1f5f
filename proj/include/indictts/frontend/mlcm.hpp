#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "indictts/frontend/script.hpp"

namespace indictts::frontend {

enum class TokenCategory {
  IndependentVowel,
  Consonant,
  VowelSign,
  Virama,
  Nasalization,  // candrabindu, anusvara, visarga
  Nukta,
  Digit,
  Punctuation,
  Space,
};

std::string_view to_string(TokenCategory c);
TokenCategory parse_category(std::string_view name);

// Ids below 0x80 are offsets inside the Devanagari reference block. Named
// special tokens (SPACE, DIGIT_n, punctuation) get ids from 0x100 upwards in
// inventory order.
using LabelId = std::uint16_t;
inline constexpr LabelId kFirstSpecialId = 0x100;

constexpr bool is_special(LabelId id) { return id >= kFirstSpecialId; }

struct CommonToken {
  LabelId labelId = 0;
  TokenCategory category = TokenCategory::Consonant;

  friend bool operator==(const CommonToken&, const CommonToken&) = default;
};

struct MLCMSequence {
  std::vector<CommonToken> tokens;
  Script sourceScript = Script::Devanagari;
  Language language = Language::Hindi;
};

// The resolved multi-language character map: common inventory plus the
// per-script forward and inverse tables derived from the block-offset rule
// and the exception table. Immutable once built.
class MlcmTable {
 public:
  static MlcmTable parse(std::string_view inventoryTsv, std::string_view exceptionsTsv);
  static MlcmTable from_files(const std::filesystem::path& inventory,
                              const std::filesystem::path& exceptions);
  // Tables compiled in from data/.
  static const MlcmTable& builtin();

  int version() const { return version_; }

  bool has_label(LabelId id) const { return categories_.count(id) != 0; }
  TokenCategory category(LabelId id) const;
  // Two-digit hex for offsets ("15"), the NAME for special tokens.
  std::string label_name(LabelId id) const;
  std::optional<LabelId> find_label(std::string_view name) const;
  std::vector<LabelId> labels() const;

  // Labels for one NFC-normalized codepoint; nullopt when unmappable.
  std::optional<std::span<const LabelId>> forward(char32_t cp) const;
  // Codepoint that renders `id` in `script`; nullopt when the script has no
  // counterpart.
  std::optional<char32_t> render(LabelId id, Script script) const;
  // True when `script` has a codepoint that maps to exactly `id` and back.
  bool defines(Script script, LabelId id) const;

 private:
  struct Forward {
    std::array<LabelId, 2> labels{};
    std::uint8_t count = 0;  // 0 = unmappable
  };

  MlcmTable() = default;
  void resolve();

  int version_ = 0;
  std::map<LabelId, TokenCategory> categories_;
  std::map<LabelId, std::string> names_;
  std::map<LabelId, char32_t> referenceCodepoint_;
  std::map<char32_t, Forward> exceptions_;
  std::map<char32_t, LabelId> specialByCodepoint_;
  std::array<std::array<Forward, kBlockSize>, kAllScripts.size()> blockForward_{};
  std::array<std::map<LabelId, char32_t>, kAllScripts.size()> inverse_{};
};

// NFC, then drop ZWJ/ZWNJ.
std::u32string normalize_for_mlcm(std::u32string_view text);

// Throws MixedScript, NoIndicContent, ScriptMismatch (the language's script
// differs from the detected one) or UnmappableCodepoint.
MLCMSequence to_mlcm(std::string_view text, Language language,
                     const MlcmTable& table = MlcmTable::builtin());

// Throws UnrenderableToken when a token has no codepoint in `target`.
// Digits render as the target script's native digits.
std::string render_from_mlcm(const MLCMSequence& seq, Script target,
                             const MlcmTable& table = MlcmTable::builtin());

// Space-separated label names, e.g. "15 2E 32".
std::string format_tokens(const MLCMSequence& seq, const MlcmTable& table = MlcmTable::builtin());

}  // namespace indictts::frontend
