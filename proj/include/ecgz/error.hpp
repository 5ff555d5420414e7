#pragma once

#include <stdexcept>
#include <string>

namespace ecgz {

/// Invalid argument or violated precondition.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed text input; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Truncated or malformed binary input.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Entropy-coded payload that cannot be decoded (underrun, invalid code, bad codebook).
class CorruptStream : public DecodeError {
 public:
  explicit CorruptStream(const std::string& what) : DecodeError("corrupt stream: " + what) {}
};

class SegmentationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ecgz
