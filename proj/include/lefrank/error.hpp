#pragma once

#include <stdexcept>
#include <string>

namespace lefrank {

// Raised on malformed or semantically invalid caller input.  The CLI maps
// this to exit code 2.
struct invalid_input : std::runtime_error {
  explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a quantity the theory guarantees fails to hold at runtime
// (negative multiplicity, inconsistent f-solve on a graded piece, ...).
// The CLI maps this to exit code 3.  Seeing one of these is always a bug.
struct internal_error : std::logic_error {
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

inline void internal_check(bool ok, const std::string& what) {
  if (!ok) throw internal_error(what);
}

}  // namespace lefrank
