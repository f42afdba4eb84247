#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace roth {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class KindMismatch : public Error {
public:
  using Error::Error;
};

class ShapeError : public Error {
public:
  using Error::Error;
};

// A system failed validation; `equation` is the offending equation index.
class ValidationError : public Error {
public:
  ValidationError(std::size_t equation, const std::string &what)
      : Error("equation " + std::to_string(equation) + ": " + what),
        equation_(equation) {}
  std::size_t equation() const noexcept { return equation_; }

private:
  std::size_t equation_;
};

class SingularMatrix : public Error {
public:
  using Error::Error;
};

class InvalidCertificate : public Error {
public:
  using Error::Error;
};

class InconsistentSystem : public Error {
public:
  using Error::Error;
};

// Matrices offered as a solution do not satisfy the system.
class NotASolution : public Error {
public:
  using Error::Error;
};

class NumericalError : public Error {
public:
  using Error::Error;
};

class GenerationError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string &what)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

} // namespace roth
