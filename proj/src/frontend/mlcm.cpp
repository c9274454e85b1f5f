#include "indictts/frontend/mlcm.hpp"

#include <charconv>
#include <cstdio>

#include "indictts/common/error.hpp"
#include "indictts/common/tables.hpp"
#include "indictts/common/tsv.hpp"
#include "indictts/common/unicode.hpp"

namespace indictts::frontend {

namespace {

constexpr char32_t kReferenceBase = 0x0900;

std::size_t index_of(Script s) { return static_cast<std::size_t>(s); }

std::string hex(char32_t cp) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(cp));
  return buf;
}

Error bad_table(std::size_t line, const std::string& why) {
  return Error(ErrorCode::BadTable, "line " + std::to_string(line) + ": " + why);
}

std::optional<unsigned> parse_hex(std::string_view s) {
  unsigned value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value, 16);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return value;
}

bool is_label_hex(std::string_view s) {
  return s.size() == 2 && parse_hex(s).has_value();
}

}  // namespace

std::string_view to_string(TokenCategory c) {
  switch (c) {
    case TokenCategory::IndependentVowel: return "independent-vowel";
    case TokenCategory::Consonant: return "consonant";
    case TokenCategory::VowelSign: return "vowel-sign";
    case TokenCategory::Virama: return "virama";
    case TokenCategory::Nasalization: return "nasalization";
    case TokenCategory::Nukta: return "nukta";
    case TokenCategory::Digit: return "digit";
    case TokenCategory::Punctuation: return "punctuation";
    case TokenCategory::Space: return "space";
  }
  return "?";
}

TokenCategory parse_category(std::string_view name) {
  for (auto c : {TokenCategory::IndependentVowel, TokenCategory::Consonant, TokenCategory::VowelSign,
                 TokenCategory::Virama, TokenCategory::Nasalization, TokenCategory::Nukta,
                 TokenCategory::Digit, TokenCategory::Punctuation, TokenCategory::Space}) {
    if (to_string(c) == name) return c;
  }
  throw Error(ErrorCode::BadTable, "unknown category '" + std::string(name) + "'");
}

MlcmTable MlcmTable::parse(std::string_view inventoryTsv, std::string_view exceptionsTsv) {
  MlcmTable t;
  t.version_ = tsv_version(inventoryTsv);

  LabelId nextSpecial = kFirstSpecialId;
  for (const TsvRow& row : parse_tsv(inventoryTsv)) {
    if (row.fields.size() != 3) throw bad_table(row.lineNumber, "inventory rows need 3 fields");
    const auto cp = parse_hex(row.fields[0]);
    if (!cp) throw bad_table(row.lineNumber, "bad codepoint");
    TokenCategory category;
    try {
      category = parse_category(row.fields[2]);
    } catch (const Error& e) {
      throw bad_table(row.lineNumber, e.what());
    }
    LabelId id;
    if (is_label_hex(row.fields[1])) {
      id = static_cast<LabelId>(*parse_hex(row.fields[1]));
      if (*cp != kReferenceBase + id) throw bad_table(row.lineNumber, "label id must equal the reference offset");
    } else {
      id = nextSpecial++;
      if (t.find_label(row.fields[1])) throw bad_table(row.lineNumber, "duplicate name");
      t.names_[id] = std::string(row.fields[1]);
      t.specialByCodepoint_[static_cast<char32_t>(*cp)] = id;
    }
    if (!t.categories_.emplace(id, category).second) throw bad_table(row.lineNumber, "duplicate label");
    t.referenceCodepoint_[id] = static_cast<char32_t>(*cp);
  }

  for (const TsvRow& row : parse_tsv(exceptionsTsv)) {
    if (row.fields.size() != 3) throw bad_table(row.lineNumber, "exception rows need 3 fields");
    const auto cp = parse_hex(row.fields[0]);
    if (!cp || !script_of(static_cast<char32_t>(*cp))) {
      throw bad_table(row.lineNumber, "exception codepoint outside the supported blocks");
    }
    Forward f;
    if (row.fields[1] != "UNMAPPED") {
      std::string_view spec = row.fields[1];
      while (!spec.empty()) {
        const auto plus = spec.find('+');
        const auto part = spec.substr(0, plus);
        if (!is_label_hex(part)) throw bad_table(row.lineNumber, "bad label '" + std::string(part) + "'");
        const auto id = static_cast<LabelId>(*parse_hex(part));
        if (!t.has_label(id)) throw bad_table(row.lineNumber, "label not in inventory");
        if (f.count == f.labels.size()) throw bad_table(row.lineNumber, "at most two labels per row");
        f.labels[f.count++] = id;
        spec = plus == std::string_view::npos ? std::string_view{} : spec.substr(plus + 1);
      }
      if (f.count == 0) throw bad_table(row.lineNumber, "empty label list");
      TokenCategory declared;
      try {
        declared = parse_category(row.fields[2]);
      } catch (const Error& e) {
        throw bad_table(row.lineNumber, e.what());
      }
      if (declared != t.categories_.at(f.labels[0])) {
        throw bad_table(row.lineNumber, "category disagrees with the inventory");
      }
    }
    if (!t.exceptions_.emplace(static_cast<char32_t>(*cp), f).second) {
      throw bad_table(row.lineNumber, "duplicate exception");
    }
  }

  t.resolve();
  return t;
}

void MlcmTable::resolve() {
  for (Script s : kAllScripts) {
    auto& fwd = blockForward_[index_of(s)];
    const char32_t base = base_codepoint(s);
    for (char32_t off = 0; off < kBlockSize; ++off) {
      const char32_t cp = base + off;
      Forward f;
      if (auto ex = exceptions_.find(cp); ex != exceptions_.end()) {
        f = ex->second;
      } else if (auto sp = specialByCodepoint_.find(cp); sp != specialByCodepoint_.end()) {
        f.labels[0] = sp->second;
        f.count = 1;
      } else if (unicode::is_assigned(cp) && unicode::is_nfc_stable(cp)) {
        // Digits share offsets across blocks; their special token names the
        // Devanagari digit.
        const auto ref = specialByCodepoint_.find(kReferenceBase + off);
        if (ref != specialByCodepoint_.end() && categories_.at(ref->second) == TokenCategory::Digit) {
          f.labels[0] = ref->second;
          f.count = 1;
        } else if (has_label(static_cast<LabelId>(off))) {
          f.labels[0] = static_cast<LabelId>(off);
          f.count = 1;
        }
      }
      fwd[off] = f;
      if (f.count == 1 && !is_special(f.labels[0])) inverse_[index_of(s)].emplace(f.labels[0], cp);
    }
  }
}

MlcmTable MlcmTable::from_files(const std::filesystem::path& inventory,
                                const std::filesystem::path& exceptions) {
  return parse(read_file(inventory), read_file(exceptions));
}

const MlcmTable& MlcmTable::builtin() {
  static const MlcmTable table = parse(tables::mlcm_inventory, tables::mlcm_exceptions);
  return table;
}

TokenCategory MlcmTable::category(LabelId id) const {
  const auto it = categories_.find(id);
  if (it == categories_.end()) throw Error(ErrorCode::InvalidArgument, "label not in inventory");
  return it->second;
}

std::string MlcmTable::label_name(LabelId id) const {
  if (auto it = names_.find(id); it != names_.end()) return it->second;
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02X", static_cast<unsigned>(id));
  return buf;
}

std::optional<LabelId> MlcmTable::find_label(std::string_view name) const {
  for (const auto& [id, n] : names_) {
    if (n == name) return id;
  }
  if (is_label_hex(name)) {
    const auto id = static_cast<LabelId>(*parse_hex(name));
    if (has_label(id)) return id;
  }
  return std::nullopt;
}

std::vector<LabelId> MlcmTable::labels() const {
  std::vector<LabelId> out;
  out.reserve(categories_.size());
  for (const auto& [id, _] : categories_) out.push_back(id);
  return out;
}

std::optional<std::span<const LabelId>> MlcmTable::forward(char32_t cp) const {
  if (const auto s = script_of(cp)) {
    const Forward& f = blockForward_[index_of(*s)][cp - base_codepoint(*s)];
    if (f.count == 0) return std::nullopt;
    return std::span<const LabelId>(f.labels.data(), f.count);
  }
  if (auto sp = specialByCodepoint_.find(cp); sp != specialByCodepoint_.end()) {
    return std::span<const LabelId>(&sp->second, 1);
  }
  if (unicode::is_whitespace(cp)) {
    if (auto sp = specialByCodepoint_.find(U' '); sp != specialByCodepoint_.end()) {
      return std::span<const LabelId>(&sp->second, 1);
    }
  }
  if (cp >= U'0' && cp <= U'9') {
    if (auto sp = specialByCodepoint_.find(kReferenceBase + 0x66 + (cp - U'0')); sp != specialByCodepoint_.end()) {
      return std::span<const LabelId>(&sp->second, 1);
    }
  }
  return std::nullopt;
}

std::optional<char32_t> MlcmTable::render(LabelId id, Script script) const {
  if (is_special(id)) {
    const auto ref = referenceCodepoint_.find(id);
    if (ref == referenceCodepoint_.end()) return std::nullopt;
    if (categories_.at(id) == TokenCategory::Digit) {
      return base_codepoint(script) + (ref->second - kReferenceBase);
    }
    return ref->second;
  }
  const auto& inv = inverse_[index_of(script)];
  if (auto it = inv.find(id); it != inv.end()) return it->second;
  return std::nullopt;
}

bool MlcmTable::defines(Script script, LabelId id) const {
  const auto cp = render(id, script);
  if (!cp) return false;
  const auto f = forward(*cp);
  return f && f->size() == 1 && (*f)[0] == id;
}

std::u32string normalize_for_mlcm(std::u32string_view text) {
  std::u32string out = unicode::nfc(text);
  std::erase_if(out, [](char32_t c) {
    return c == unicode::kZeroWidthJoiner || c == unicode::kZeroWidthNonJoiner;
  });
  return out;
}

MLCMSequence to_mlcm(std::string_view text, Language language, const MlcmTable& table) {
  const std::u32string normalized = normalize_for_mlcm(unicode::decode(text));
  const Script detected = detect_script(normalized);
  if (detected != script_of(language)) {
    throw Error(ErrorCode::ScriptMismatch, std::string(to_string(language)) + " is written in " +
                                               std::string(to_string(script_of(language))) + ", text is " +
                                               std::string(to_string(detected)));
  }
  MLCMSequence seq;
  seq.sourceScript = detected;
  seq.language = language;
  seq.tokens.reserve(normalized.size());
  for (char32_t cp : normalized) {
    const auto labels = table.forward(cp);
    if (!labels) {
      throw Error(ErrorCode::UnmappableCodepoint, hex(cp) + " has no common label");
    }
    for (LabelId id : *labels) seq.tokens.push_back({id, table.category(id)});
  }
  return seq;
}

std::string render_from_mlcm(const MLCMSequence& seq, Script target, const MlcmTable& table) {
  std::u32string out;
  out.reserve(seq.tokens.size());
  for (const CommonToken& tok : seq.tokens) {
    const auto cp = table.render(tok.labelId, target);
    if (!cp) {
      throw Error(ErrorCode::UnrenderableToken,
                  "label " + table.label_name(tok.labelId) + " has no " + std::string(to_string(target)) +
                      " counterpart");
    }
    out.push_back(*cp);
  }
  return unicode::encode(out);
}

std::string format_tokens(const MLCMSequence& seq, const MlcmTable& table) {
  std::string out;
  for (const CommonToken& tok : seq.tokens) {
    if (!out.empty()) out.push_back(' ');
    out += table.label_name(tok.labelId);
  }
  return out;
}

}  // namespace indictts::frontend
