#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dpgrad {

// Base for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured brute-force or table cap would be exceeded.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::size_t value, std::size_t cap)
      : Error(what + ": " + std::to_string(value) + " exceeds cap " +
              std::to_string(cap)),
        value_(value),
        cap_(cap) {}
  std::size_t value() const { return value_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t value_;
  std::size_t cap_;
};

// Coset enumeration did not close within max_cosets.
class Overflow : public Error {
 public:
  explicit Overflow(std::size_t max_cosets)
      : Error("coset enumeration overflow at " + std::to_string(max_cosets) +
              " cosets"),
        max_cosets_(max_cosets) {}
  std::size_t max_cosets() const { return max_cosets_; }

 private:
  std::size_t max_cosets_;
};

class NotNormal : public Error {
 public:
  NotNormal() : Error("subgroup is not normal") {}
};

class NotSurjective : public Error {
 public:
  NotSurjective() : Error("homomorphism is not surjective") {}
};

class Incomplete : public Error {
 public:
  Incomplete() : Error("coset table is incomplete") {}
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class UnknownSuite : public Error {
 public:
  explicit UnknownSuite(const std::string& name) : Error("unknown suite '" + name + "'") {}
};

}  // namespace dpgrad
