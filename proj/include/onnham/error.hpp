#pragma once

#include <stdexcept>
#include <string>

namespace onnham {

// Precondition violations (bad dimensions, out-of-range levels, ...) throw
// std::invalid_argument. The two types below separate file problems from
// malformed content so the CLI can map them to distinct exit codes.

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace onnham
