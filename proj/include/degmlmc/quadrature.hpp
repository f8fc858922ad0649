#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace degmlmc {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (weights sum to 2).
const QuadratureRule& gauss_legendre(std::size_t n);

/// Gauss-Legendre rule mapped to [a, b], weights normalized to sum to one,
/// i.e. the expectation rule for U(a, b).
QuadratureRule gauss_legendre_uniform(std::size_t n, double a, double b);

/// Adaptive Gauss-Kronrod integral of f over [a, b]. Throws
/// QuadratureFailure if the error estimate stays above abs_tol.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-10);

/// Least-squares slope of log(ys) against log(xs).
double fit_log_log_slope(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace degmlmc
