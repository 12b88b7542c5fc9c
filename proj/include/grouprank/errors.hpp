#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace grouprank {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed inputs: bad construction specs, non-normal quotients,
/// violated preconditions.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A configured limit refused the computation before it started.
class CapExceeded : public Error {
 public:
  CapExceeded(std::string cap, const std::string& what)
      : Error(what), cap_(std::move(cap)) {}
  const std::string& cap() const noexcept { return cap_; }

 private:
  std::string cap_;
};

/// A capped search ran out of budget.  The answer is unknown; callers
/// must never fold this into `false`.
class Undecided : public Error {
 public:
  Undecided(std::string cap, const std::string& what)
      : Error(what), cap_(std::move(cap)) {}
  const std::string& cap() const noexcept { return cap_; }

 private:
  std::string cap_;
};

/// The set-based evaluator only accepts formulas it can recognize.
class UnsupportedSchema : public Error {
 public:
  using Error::Error;
};

class ParseFailure : public Error {
 public:
  ParseFailure(std::size_t offset, const std::string& what)
      : Error(what + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace grouprank
