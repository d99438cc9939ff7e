#pragma once

#include <stdexcept>
#include <string>

namespace artin {

// Malformed caller input: unparsable graphs or words, unknown generators,
// operands built over different graphs, out-of-range enumeration bounds.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A computed certificate failed its own consistency check.  Reaching this
// indicates a bug in the library, never in the caller.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace artin
