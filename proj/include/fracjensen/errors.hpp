#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracjensen {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- expression front-end ----

class ParseError : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public ParseError {
 public:
  SyntaxError(std::size_t offset, const std::string& what)
      : ParseError("syntax error at offset " + std::to_string(offset) + ": " + what),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownIdentifier : public ParseError {
 public:
  explicit UnknownIdentifier(std::string name)
      : ParseError("unknown identifier '" + name + "'"), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

// ---- input / hypothesis problems ----

class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error("config error [" + key + "]: " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class UnsortedPoints : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class HypothesisError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

// ---- numerical failures ----

class NumericalError : public Error {
 public:
  using Error::Error;
};

class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularKernel : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DivergentIntegral : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class MaxSubdivisions : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonFiniteIntegrand : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class L1Violation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StepTooLarge : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace fracjensen
