#pragma once

#include <filesystem>
#include <string>

#include "doctest.h"
#include "indictts/common/error.hpp"

namespace indictts::testing {

inline std::filesystem::path source_dir() { return INDICTTS_SOURCE_DIR; }

// Name of the ErrorCode f throws; anything else comes back as a string
// that matches no code.
template <class F>
std::string error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return std::string(to_string(e.code()));
  } catch (const std::exception& e) {
    return std::string("foreign: ") + e.what();
  }
  return "nothing thrown";
}

}  // namespace indictts::testing

#define CHECK_ERROR(expr, code) CHECK(::indictts::testing::error_of([&] { (void)(expr); }) == #code)
