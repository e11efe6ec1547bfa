#pragma once

#include <stdexcept>
#include <string>

namespace msdiff {

// Input that violates a documented invariant or precondition.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A computation that cannot proceed: singular systems, stability bounds,
// integer overflow, insufficient quadrature degree.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Configuration parse or semantic error. `where` is a line reference or a
// field path such as `angular[1].pair`.
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string where, const std::string& what)
    : std::runtime_error(where.empty() ? what : where + ": " + what), where_(std::move(where)), detail_(what) {}

  const std::string& where() const noexcept { return where_; }
  // Message without the location prefix.
  const std::string& detail() const noexcept { return detail_; }

private:
  std::string where_;
  std::string detail_;
};

} // namespace msdiff
