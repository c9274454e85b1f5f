#include <algorithm>
#include <array>

#include "indictts/common/error.hpp"
#include "indictts/common/unicode.hpp"
#include "indictts/corpus/manifest.hpp"

namespace indictts::corpus {

namespace {

// Sentence punctuation that survives cleaning; other punctuation and symbols
// act as word separators.
constexpr std::array<char32_t, 13> kPunctuationWhitelist = {
    U'.', U',', U'?', U'!', U';', U':', U'\'', U'"', U'-', U'(', U')', 0x0964, 0x0965};

bool whitelisted(char32_t cp) {
  return std::find(kPunctuationWhitelist.begin(), kPunctuationWhitelist.end(), cp) != kPunctuationWhitelist.end();
}

}  // namespace

std::string clean_text(std::string_view raw) {
  const std::u32string text = unicode::nfc(unicode::decode(raw));
  std::u32string out;
  out.reserve(text.size());
  bool pendingSpace = false;
  auto append = [&](char32_t cp) {
    if (pendingSpace && !out.empty()) out.push_back(U' ');
    pendingSpace = false;
    out.push_back(cp);
  };
  for (char32_t cp : text) {
    if (unicode::is_whitespace(cp)) {
      pendingSpace = true;
    } else if (unicode::is_control(cp)) {
      continue;
    } else if (cp == unicode::kZeroWidthJoiner || cp == unicode::kZeroWidthNonJoiner) {
      append(cp);
    } else if (unicode::is_punctuation_or_symbol(cp)) {
      if (whitelisted(cp)) {
        append(cp);
      } else {
        pendingSpace = true;
      }
    } else if (unicode::is_letter_mark_or_digit(cp)) {
      append(cp);
    }
    // Remaining format characters (BOM, soft hyphen, ...) are dropped.
  }
  if (out.empty()) throw Error(ErrorCode::EmptyAfterCleaning, "nothing left after cleaning");
  return unicode::encode(out);
}

}  // namespace indictts::corpus
