#pragma once

#include <stdexcept>
#include <string>

namespace csl {

/// Argument outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidGeometry : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedDisplacement : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedOrder : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Problem size exceeds a documented cost guard.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateFit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace csl
