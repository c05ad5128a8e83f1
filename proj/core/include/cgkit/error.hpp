#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgkit {

/// Argument outside the domain of a model-space formula (e.g. a spherical
/// triangle whose perimeter reaches 2*pi/sqrt(K)).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller violated a documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A neighborhood graph or metric split into several components.
class DisconnectedError : public std::runtime_error {
 public:
  DisconnectedError(const std::string& what, std::vector<std::size_t> component_sizes)
      : std::runtime_error(what), component_sizes_(std::move(component_sizes)) {}

  const std::vector<std::size_t>& component_sizes() const noexcept { return component_sizes_; }

 private:
  std::vector<std::size_t> component_sizes_;
};

/// Two certificates that must be ordered are not (e.g. GH lower > upper).
class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed configuration or serialized input; carries a 1-based line number
/// when one is known (0 otherwise).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace cgkit
