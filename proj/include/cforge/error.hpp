#pragma once

#include <stdexcept>
#include <string>

namespace cforge {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

// Adaptive quadrature exhausted its subdivision budget.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, double achieved_error)
      : Error(what), achieved_error(achieved_error) {}
  double achieved_error;
};

// Root bracket does not straddle a sign change.
class NoSignChangeError : public Error {
 public:
  explicit NoSignChangeError(const std::string& what) : Error(what) {}
};

class DimensionMismatchError : public Error {
 public:
  explicit DimensionMismatchError(const std::string& what) : Error(what) {}
};

class RankOutOfRangeError : public Error {
 public:
  explicit RankOutOfRangeError(const std::string& what) : Error(what) {}
};

class ConfigMismatchError : public Error {
 public:
  explicit ConfigMismatchError(const std::string& what) : Error(what) {}
};

class BudgetExceededError : public Error {
 public:
  explicit BudgetExceededError(const std::string& what) : Error(what) {}
};

class AcceptanceTooLowError : public Error {
 public:
  explicit AcceptanceTooLowError(const std::string& what) : Error(what) {}
};

class UnknownFigureError : public Error {
 public:
  explicit UnknownFigureError(const std::string& what) : Error(what) {}
};

}  // namespace cforge
