#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ckn {

// Argument outside the mathematical domain of a formula (non-positive Gamma
// argument, divergent integral, negative radicand, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Parameter triple rejected by validate(); one message per violated condition.
class ParamError : public std::invalid_argument {
 public:
  explicit ParamError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// Quadrature did not reach the requested tolerance within the node cap.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double best_estimate, double error_estimate)
      : std::runtime_error(what), best_(best_estimate), err_(error_estimate) {}

  double best_estimate() const noexcept { return best_; }
  double error_estimate() const noexcept { return err_; }

 private:
  double best_;
  double err_;
};

// Gram matrix of a Ritz basis too ill-conditioned to trust.
class ConditioningError : public std::runtime_error {
 public:
  ConditioningError(const std::string& what, double condition)
      : std::runtime_error(what), condition_(condition) {}

  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

// Root bracketing failed: no sign change between the end points.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ckn
