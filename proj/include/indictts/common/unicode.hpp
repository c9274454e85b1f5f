#pragma once

#include <string>
#include <string_view>

namespace indictts::unicode {

// Strict UTF-8 decoding; throws Error(InvalidUtf8) on malformed input.
std::u32string decode(std::string_view utf8);
std::string encode(std::u32string_view text);
std::string encode(char32_t cp);

// Canonical decomposition followed by canonical composition (NFC).
std::u32string nfc(std::u32string_view text);

bool is_assigned(char32_t cp);
// True when NFC leaves the lone codepoint unchanged; false for
// composition-excluded characters such as U+0958.
bool is_nfc_stable(char32_t cp);
bool is_whitespace(char32_t cp);
bool is_control(char32_t cp);
bool is_punctuation_or_symbol(char32_t cp);
bool is_letter_mark_or_digit(char32_t cp);

constexpr char32_t kZeroWidthNonJoiner = 0x200C;
constexpr char32_t kZeroWidthJoiner = 0x200D;

}  // namespace indictts::unicode
