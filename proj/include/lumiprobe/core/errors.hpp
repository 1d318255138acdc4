#pragma once

#include <stdexcept>
#include <string>

namespace lumiprobe {

// File/parse failures; the CLI maps these to exit code 3.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite results during optimization; the CLI maps these to exit code 4.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lumiprobe
