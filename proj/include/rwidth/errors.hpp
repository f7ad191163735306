#pragma once

#include <stdexcept>
#include <string>

namespace rwidth {

// Instance exceeds a documented size cap (CLI exit code 2).
struct capacity_error : std::runtime_error {
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file (CLI exit code 3).  Messages name the offending line.
struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failure (CLI exit code 3).  Messages name the path.
struct io_error : std::runtime_error {
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rwidth
