#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace degmlmc {

// Base of all library errors. Argument validation failures throw
// std::invalid_argument directly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

// A cyclic tridiagonal system produced a zero pivot.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

// An explicit update left the admissible state interval (CFL breach).
class StabilityViolation : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double residual, int iterations)
      : Error(what), residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

// Failure of one Monte Carlo sample, tagged with its (level, index).
class SampleFailure : public Error {
 public:
  SampleFailure(int level, std::size_t index, const std::string& cause)
      : Error("sample (level=" + std::to_string(level) + ", index=" + std::to_string(index) +
              ") failed: " + cause),
        level_(level),
        index_(index) {}
  int level() const { return level_; }
  std::size_t index() const { return index_; }

 private:
  int level_;
  std::size_t index_;
};

}  // namespace degmlmc
