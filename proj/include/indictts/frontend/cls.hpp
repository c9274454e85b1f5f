#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "indictts/frontend/mlcm.hpp"
#include "indictts/frontend/script.hpp"

namespace indictts::frontend {

enum class PhoneClass { Vowel, Stop, Nasal, Approximant, Liquid, Flap, Fricative, Modifier };

std::string_view to_string(PhoneClass c);

// The closed common-label-set phone inventory.
class ClsInventory {
 public:
  static ClsInventory parse(std::string_view tsv);
  static const ClsInventory& builtin();

  bool contains(std::string_view phone) const { return classes_.count(std::string(phone)) != 0; }
  PhoneClass class_of(std::string_view phone) const;
  std::vector<std::string> labels() const;
  int version() const { return version_; }

 private:
  int version_ = 0;
  std::map<std::string, PhoneClass, std::less<>> classes_;
};

struct PhoneSequence {
  std::vector<std::string> phones;
  Language language = Language::Hindi;
  // Index of the first phone of every word, strictly increasing.
  std::vector<std::size_t> wordBoundaries;

  std::string to_string() const;  // phones joined by single spaces
};

struct ParseOptions {
  // Defaults: schwa deletion for Indo-Aryan languages, stop voicing for Tamil.
  std::optional<bool> schwaDeletion;
  std::optional<bool> stopVoicing;
};

class ClsParser {
 public:
  ClsParser(const MlcmTable& mlcm, ClsInventory inventory, std::string_view rulesTsv);
  static const ClsParser& builtin();
  static ClsParser from_files(const MlcmTable& mlcm, const std::filesystem::path& inventory,
                              const std::filesystem::path& rules);

  const ClsInventory& inventory() const { return inventory_; }

  // Throws the to_mlcm errors; digits have no phone and raise
  // UnmappableCodepoint.
  PhoneSequence parse(std::string_view text, Language language, const ParseOptions& options = {}) const;

 private:
  const MlcmTable* mlcm_;
  ClsInventory inventory_;
  std::map<LabelId, std::string> single_;
  std::map<std::pair<LabelId, LabelId>, std::string> pairs_;
};

PhoneSequence parse_to_cls(std::string_view text, Language language, const ParseOptions& options = {});

}  // namespace indictts::frontend
