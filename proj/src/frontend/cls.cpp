#include "indictts/frontend/cls.hpp"

#include <charconv>

#include "indictts/common/error.hpp"
#include "indictts/common/tables.hpp"
#include "indictts/common/tsv.hpp"

namespace indictts::frontend {

namespace {

constexpr LabelId kNukta = 0x3C;
constexpr std::string_view kInherentVowel = "a";

struct Unit {
  std::string phone;
  bool inherent = false;
  std::size_t word = 0;
};

LabelId parse_label(std::string_view s, std::size_t line) {
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 16);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.size() != 2) {
    throw Error(ErrorCode::BadTable, "line " + std::to_string(line) + ": bad label '" + std::string(s) + "'");
  }
  return static_cast<LabelId>(v);
}

// Tamil writes voiced and unvoiced stops alike; the context decides.
struct VoicingRule {
  std::string_view unvoiced;
  std::string_view voiced;
  std::string_view nasal1;
  std::string_view nasal2;
};

constexpr VoicingRule kTamilVoicing[] = {
    {"k", "g", "ng", ""},
    {"c", "j", "nj", ""},
    {"tx", "dx", "nx", ""},
    {"t", "d", "n", "nd"},
    {"p", "b", "m", ""},
};

}  // namespace

std::string_view to_string(PhoneClass c) {
  switch (c) {
    case PhoneClass::Vowel: return "vowel";
    case PhoneClass::Stop: return "stop";
    case PhoneClass::Nasal: return "nasal";
    case PhoneClass::Approximant: return "approximant";
    case PhoneClass::Liquid: return "liquid";
    case PhoneClass::Flap: return "flap";
    case PhoneClass::Fricative: return "fricative";
    case PhoneClass::Modifier: return "modifier";
  }
  return "?";
}

ClsInventory ClsInventory::parse(std::string_view tsv) {
  ClsInventory inv;
  inv.version_ = tsv_version(tsv);
  for (const TsvRow& row : parse_tsv(tsv)) {
    if (row.fields.size() != 2) {
      throw Error(ErrorCode::BadTable, "line " + std::to_string(row.lineNumber) + ": expected label and class");
    }
    std::optional<PhoneClass> cls;
    for (auto c : {PhoneClass::Vowel, PhoneClass::Stop, PhoneClass::Nasal, PhoneClass::Approximant,
                   PhoneClass::Liquid, PhoneClass::Flap, PhoneClass::Fricative, PhoneClass::Modifier}) {
      if (to_string(c) == row.fields[1]) cls = c;
    }
    if (!cls) throw Error(ErrorCode::BadTable, "line " + std::to_string(row.lineNumber) + ": unknown class");
    if (!inv.classes_.emplace(std::string(row.fields[0]), *cls).second) {
      throw Error(ErrorCode::BadTable, "line " + std::to_string(row.lineNumber) + ": duplicate phone");
    }
  }
  return inv;
}

const ClsInventory& ClsInventory::builtin() {
  static const ClsInventory inv = parse(tables::cls_inventory);
  return inv;
}

PhoneClass ClsInventory::class_of(std::string_view phone) const {
  const auto it = classes_.find(phone);
  if (it == classes_.end()) throw Error(ErrorCode::InvalidArgument, "phone '" + std::string(phone) + "' not in inventory");
  return it->second;
}

std::vector<std::string> ClsInventory::labels() const {
  std::vector<std::string> out;
  for (const auto& [label, _] : classes_) out.push_back(label);
  return out;
}

std::string PhoneSequence::to_string() const {
  std::string out;
  for (const auto& p : phones) {
    if (!out.empty()) out.push_back(' ');
    out += p;
  }
  return out;
}

ClsParser::ClsParser(const MlcmTable& mlcm, ClsInventory inventory, std::string_view rulesTsv)
    : mlcm_(&mlcm), inventory_(std::move(inventory)) {
  if (!inventory_.contains(kInherentVowel)) throw Error(ErrorCode::BadTable, "inventory lacks the inherent vowel");
  for (const TsvRow& row : parse_tsv(rulesTsv)) {
    const auto where = "line " + std::to_string(row.lineNumber) + ": ";
    if (row.fields.size() != 2) throw Error(ErrorCode::BadTable, where + "expected labels and phone");
    const std::string phone(row.fields[1]);
    if (!inventory_.contains(phone)) throw Error(ErrorCode::BadTable, where + "phone '" + phone + "' not in inventory");
    const std::string_view labels = row.fields[0];
    const auto plus = labels.find('+');
    if (plus == std::string_view::npos) {
      const LabelId id = parse_label(labels, row.lineNumber);
      if (!mlcm.has_label(id)) throw Error(ErrorCode::BadTable, where + "label not in MLCM inventory");
      single_[id] = phone;
    } else {
      const LabelId a = parse_label(labels.substr(0, plus), row.lineNumber);
      const LabelId b = parse_label(labels.substr(plus + 1), row.lineNumber);
      pairs_[{a, b}] = phone;
    }
  }
}

const ClsParser& ClsParser::builtin() {
  static const ClsParser parser(MlcmTable::builtin(), ClsInventory::builtin(), tables::cls_rules);
  return parser;
}

ClsParser ClsParser::from_files(const MlcmTable& mlcm, const std::filesystem::path& inventory,
                                const std::filesystem::path& rules) {
  return ClsParser(mlcm, ClsInventory::parse(read_file(inventory)), read_file(rules));
}

PhoneSequence ClsParser::parse(std::string_view text, Language language, const ParseOptions& options) const {
  const MLCMSequence seq = to_mlcm(text, language, *mlcm_);
  const auto& toks = seq.tokens;

  auto phone_for = [&](LabelId id) -> const std::string& {
    const auto it = single_.find(id);
    if (it == single_.end()) {
      throw Error(ErrorCode::UnmappableCodepoint, "label " + mlcm_->label_name(id) + " has no phone rule");
    }
    return it->second;
  };

  // Syllabic expansion.
  std::vector<Unit> units;
  std::size_t word = 0;
  bool wordOpen = false;
  auto emit = [&](const std::string& phone, bool inherent) {
    units.push_back({phone, inherent, word});
    wordOpen = true;
  };
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const CommonToken& tok = toks[i];
    switch (tok.category) {
      case TokenCategory::Space:
      case TokenCategory::Punctuation:
        if (wordOpen) {
          ++word;
          wordOpen = false;
        }
        break;
      case TokenCategory::Digit:
        throw Error(ErrorCode::UnmappableCodepoint, "digits have no phone representation");
      case TokenCategory::Consonant: {
        std::string phone = phone_for(tok.labelId);
        std::size_t j = i + 1;
        if (j < toks.size() && toks[j].category == TokenCategory::Nukta) {
          if (auto it = pairs_.find({tok.labelId, kNukta}); it != pairs_.end()) phone = it->second;
          ++j;
        }
        emit(phone, false);
        if (j < toks.size() && toks[j].category == TokenCategory::Virama) {
          ++j;
        } else if (j < toks.size() && toks[j].category == TokenCategory::VowelSign) {
          emit(phone_for(toks[j].labelId), false);
          ++j;
        } else {
          emit(std::string(kInherentVowel), true);
        }
        i = j - 1;
        break;
      }
      case TokenCategory::IndependentVowel:
      case TokenCategory::VowelSign:
      case TokenCategory::Nasalization:
        emit(phone_for(tok.labelId), false);
        break;
      case TokenCategory::Virama:
      case TokenCategory::Nukta:
        // Orphan marks carry no sound of their own.
        break;
    }
  }

  auto is_vowel = [&](const Unit& u) { return inventory_.class_of(u.phone) == PhoneClass::Vowel; };
  auto is_consonant = [&](const Unit& u) {
    const PhoneClass c = inventory_.class_of(u.phone);
    return c != PhoneClass::Vowel && c != PhoneClass::Modifier;
  };

  // Word ranges [begin, end) over `units`.
  auto word_ranges = [&]() {
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    for (std::size_t k = 0; k < units.size(); ++k) {
      if (ranges.empty() || units[k].word != units[ranges.back().first].word) ranges.push_back({k, k});
      ranges.back().second = k + 1;
    }
    return ranges;
  };

  const bool schwa = options.schwaDeletion.value_or(family_of(language) == Family::IndoAryan);
  if (schwa) {
    std::vector<Unit> kept;
    kept.reserve(units.size());
    for (auto [begin, end] : word_ranges()) {
      std::vector<Unit> w(units.begin() + static_cast<std::ptrdiff_t>(begin),
                          units.begin() + static_cast<std::ptrdiff_t>(end));
      if (!w.empty() && w.back().inherent) w.pop_back();
      // Right to left, so each decision sees the already-reduced right context.
      for (std::size_t k = w.size(); k-- > 0;) {
        if (!w[k].inherent || k < 2 || k + 2 >= w.size()) continue;
        if (is_vowel(w[k - 2]) && is_consonant(w[k - 1]) && is_consonant(w[k + 1]) && is_vowel(w[k + 2])) {
          w.erase(w.begin() + static_cast<std::ptrdiff_t>(k));
        }
      }
      kept.insert(kept.end(), w.begin(), w.end());
    }
    units = std::move(kept);
  }

  const bool voicing = options.stopVoicing.value_or(language == Language::Tamil);
  if (voicing) {
    const std::vector<Unit> original = units;
    for (auto [begin, end] : word_ranges()) {
      for (std::size_t k = begin; k < end; ++k) {
        const VoicingRule* rule = nullptr;
        for (const auto& r : kTamilVoicing) {
          if (original[k].phone == r.unvoiced) rule = &r;
        }
        if (rule == nullptr || k == begin) continue;
        const std::string& prev = original[k - 1].phone;
        if (prev == rule->unvoiced) continue;  // geminate
        const bool postNasal = prev == rule->nasal1 || (!rule->nasal2.empty() && prev == rule->nasal2);
        const bool intervocalic = is_vowel(original[k - 1]) && k + 1 < end && is_vowel(original[k + 1]);
        if (postNasal || intervocalic) units[k].phone = std::string(rule->voiced);
      }
    }
  }

  PhoneSequence out;
  out.language = language;
  out.phones.reserve(units.size());
  for (std::size_t k = 0; k < units.size(); ++k) {
    if (k == 0 || units[k].word != units[k - 1].word) out.wordBoundaries.push_back(k);
    out.phones.push_back(std::move(units[k].phone));
  }
  return out;
}

PhoneSequence parse_to_cls(std::string_view text, Language language, const ParseOptions& options) {
  return ClsParser::builtin().parse(text, language, options);
}

}  // namespace indictts::frontend
