#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shrinker {

/// Invalid argument or violated precondition of a library operation.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Adaptive quadrature ran out of panels before meeting its tolerance.
class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string& what, double value, double error_estimate)
      : std::runtime_error(what), value_(value), error_estimate_(error_estimate) {}

  double value() const noexcept { return value_; }
  double error_estimate() const noexcept { return error_estimate_; }

private:
  double value_;
  double error_estimate_;
};

/// Descriptor text that failed to parse. Line and column are 1-based.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string source, std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                           message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace shrinker
