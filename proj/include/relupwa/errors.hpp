#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace relupwa {

/// Base class of everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

class DimensionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "dimension"; }
};

/// Point outside the domain of a PWA function or mp-LP.
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

class UsageError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "usage"; }
};

/// A bound's width hypothesis (n_l >= n_0) does not hold for the input.
class HypothesisError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "hypothesis"; }
};

class RegionCapExceeded : public Error {
 public:
  explicit RegionCapExceeded(std::size_t cap)
      : Error("region cap exceeded (" + std::to_string(cap) + ")"), cap_(cap) {}
  const char* kind() const noexcept override { return "region_cap"; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

/// Internal invariant broken by a constructed object (e.g. an infeasible mp-LP slice).
class ConstructionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "construction"; }
};

/// File parse failure; line is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  const char* kind() const noexcept override { return "parse"; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace relupwa
