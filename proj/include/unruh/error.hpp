#pragma once

#include <stdexcept>
#include <string>

namespace unruh {

// Base for everything the library throws.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

// Trajectory grid too coarse for the requested phase integral.
class ResolutionError : public Error {
public:
  ResolutionError(const std::string& what, std::size_t required_samples)
      : Error(what), required_samples_(required_samples) {}
  std::size_t required_samples() const noexcept { return required_samples_; }

private:
  std::size_t required_samples_;
};

class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

// Configuration problems; line is 0 when the error is not tied to a file line.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::string key, int line = 0)
      : Error(what), key_(std::move(key)), line_(line) {}
  const std::string& key() const noexcept { return key_; }
  int line() const noexcept { return line_; }

private:
  std::string key_;
  int line_;
};

}  // namespace unruh
