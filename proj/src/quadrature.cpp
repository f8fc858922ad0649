#include "degmlmc/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "degmlmc/error.hpp"

namespace degmlmc {

namespace {

QuadratureRule compute_gauss_legendre(std::size_t n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const auto m = (n + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    if (n == 1) {
      x = 0.0;
      dp = 1.0;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: n must be positive");
  static std::mutex mutex;
  static std::map<std::size_t, QuadratureRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

QuadratureRule gauss_legendre_uniform(std::size_t n, double a, double b) {
  if (!(b > a)) throw std::invalid_argument("gauss_legendre_uniform: need a < b");
  const auto& ref = gauss_legendre(n);
  QuadratureRule rule;
  rule.nodes.reserve(n);
  rule.weights.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes.push_back(0.5 * (a + b) + 0.5 * (b - a) * ref.nodes[i]);
    rule.weights.push_back(0.5 * ref.weights[i]);
  }
  return rule;
}

namespace {

struct Piece {
  double value;
  double error;
  double l1;
};

// 7-point Gauss / 15-point Kronrod pair on [a, b] using boost's tables.
Piece kronrod15(const std::function<double(double)>& f, double a, double b) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  using G = boost::math::quadrature::gauss<double, 7>;
  const auto& x = GK::abscissa();
  const auto& wk = GK::weights();
  const auto& wg = G::weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f0 = f(mid);
  double kronrod = f0 * wk[0];
  double gauss = f0 * wg[0];
  double l1 = std::abs(f0) * wk[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double fp = f(mid + half * x[i]);
    const double fm = f(mid - half * x[i]);
    kronrod += (fp + fm) * wk[i];
    l1 += (std::abs(fp) + std::abs(fm)) * wk[i];
    if (i % 2 == 0) gauss += (fp + fm) * wg[i / 2];
  }
  return {kronrod * half, std::abs(kronrod - gauss) * std::abs(half), l1 * std::abs(half)};
}

Piece adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth,
            const Piece& whole) {
  const double floor = 50.0 * std::numeric_limits<double>::epsilon() * whole.l1;
  if (whole.error <= std::max(tol, floor) || depth == 0) return whole;
  const double mid = 0.5 * (a + b);
  const Piece left = adapt(f, a, mid, 0.5 * tol, depth - 1, kronrod15(f, a, mid));
  const Piece right = adapt(f, mid, b, 0.5 * tol, depth - 1, kronrod15(f, mid, b));
  return {left.value + right.value, left.error + right.error, left.l1 + right.l1};
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol) {
  if (a == b) return 0.0;
  const Piece r = adapt(f, a, b, 0.1 * abs_tol, 40, kronrod15(f, a, b));
  if (!std::isfinite(r.value) || r.error > abs_tol) {
    throw QuadratureFailure("adaptive quadrature on [" + std::to_string(a) + ", " +
                            std::to_string(b) + "] did not converge (error estimate " +
                            std::to_string(r.error) + ")");
  }
  return r.value;
}

double fit_log_log_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("fit_log_log_slope: need at least two matching points");
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
      throw std::invalid_argument("fit_log_log_slope: values must be positive");
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double lx = std::log(xs[i]) - mx;
    sxy += lx * (std::log(ys[i]) - my);
    sxx += lx * lx;
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_log_log_slope: degenerate abscissae");
  return sxy / sxx;
}

}  // namespace degmlmc
