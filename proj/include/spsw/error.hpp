#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spsw {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File system / stream failures.
class IoError : public Error {
 public:
  using Error::Error;
};

// Invariant or parameter-domain violations (bad arity, capacity, ranges,
// malformed metadata).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Codebook or anchor capacity exhausted (n_u > 2^L, no anchor row).
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Fake-tuple uniqueness could not be satisfied within the retry budget.
class GenerationError : public Error {
 public:
  using Error::Error;
};

// External generator service unreachable or timed out.
class TransportError : public Error {
 public:
  using Error::Error;
};

// External generator returned a payload that does not match the protocol.
class FormatError : public Error {
 public:
  using Error::Error;
};

// CSV parse failure; `record()` is the 1-based record number within the file
// (the header, when present, is record 1).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t record)
      : Error(message), record_(record) {}
  std::size_t record() const noexcept { return record_; }

 private:
  std::size_t record_ = 0;
};

}  // namespace spsw
