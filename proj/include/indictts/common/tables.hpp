#pragma once

#include <string_view>

// Compiled-in copies of the data/*.tsv rule tables.
namespace indictts::tables {
extern const std::string_view mlcm_inventory;
extern const std::string_view mlcm_exceptions;
extern const std::string_view cls_inventory;
extern const std::string_view cls_rules;
}  // namespace indictts::tables
