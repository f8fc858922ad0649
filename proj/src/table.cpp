#include "degmlmc/table.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "degmlmc/quadrature.hpp"

namespace degmlmc {

MonotoneTable::MonotoneTable(double a, double b, std::vector<double> values,
                             std::vector<double> slopes)
    : a_(a), b_(b), values_(std::move(values)), slopes_(std::move(slopes)) {
  if (!(b > a)) throw std::invalid_argument("MonotoneTable: need a < b");
  if (values_.size() < 2 || values_.size() != slopes_.size())
    throw std::invalid_argument("MonotoneTable: need matching value/slope arrays of size >= 2");
  h_ = (b - a) / static_cast<double>(values_.size() - 1);
  inv_h_ = 1.0 / h_;

  for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
    const double secant = (values_[i + 1] - values_[i]) * inv_h_;
    if (secant == 0.0) {
      slopes_[i] = 0.0;
      slopes_[i + 1] = 0.0;
      continue;
    }
    if (slopes_[i] * secant < 0.0) slopes_[i] = 0.0;
    if (slopes_[i + 1] * secant < 0.0) slopes_[i + 1] = 0.0;
    const double alpha = slopes_[i] / secant;
    const double beta = slopes_[i + 1] / secant;
    const double r2 = alpha * alpha + beta * beta;
    if (r2 > 9.0) {
      const double tau = 3.0 / std::sqrt(r2);
      slopes_[i] = tau * alpha * secant;
      slopes_[i + 1] = tau * beta * secant;
    }
  }
}

double MonotoneTable::value(double x) const {
  if (x <= a_) return values_.front() + slopes_.front() * (x - a_);
  if (x >= b_) return values_.back() + slopes_.back() * (x - b_);
  const double s = (x - a_) * inv_h_;
  auto i = static_cast<std::size_t>(s);
  if (i >= values_.size() - 1) i = values_.size() - 2;
  const double t = s - static_cast<double>(i);
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * values_[i] + h10 * h_ * slopes_[i] + h01 * values_[i + 1] +
         h11 * h_ * slopes_[i + 1];
}

double MonotoneTable::derivative(double x) const {
  if (x <= a_) return slopes_.front();
  if (x >= b_) return slopes_.back();
  const double s = (x - a_) * inv_h_;
  auto i = static_cast<std::size_t>(s);
  if (i >= values_.size() - 1) i = values_.size() - 2;
  const double t = s - static_cast<double>(i);
  const double t2 = t * t;
  const double d00 = (6.0 * t2 - 6.0 * t) * inv_h_;
  const double d10 = 3.0 * t2 - 4.0 * t + 1.0;
  const double d01 = (-6.0 * t2 + 6.0 * t) * inv_h_;
  const double d11 = 3.0 * t2 - 2.0 * t;
  return d00 * values_[i] + d10 * slopes_[i] + d01 * values_[i + 1] + d11 * slopes_[i + 1];
}

MonotoneTable tabulate_primitive(const std::function<double(double)>& g, double a, double b,
                                 double p_a, std::size_t n_nodes, double abs_tol) {
  if (n_nodes < 2) throw std::invalid_argument("tabulate_primitive: need at least two nodes");
  const double h = (b - a) / static_cast<double>(n_nodes - 1);
  std::vector<double> values(n_nodes);
  std::vector<double> slopes(n_nodes);
  values[0] = p_a;
  double left = a;
  slopes[0] = g(a);
  for (std::size_t i = 1; i < n_nodes; ++i) {
    const double right = (i + 1 == n_nodes) ? b : a + static_cast<double>(i) * h;
    values[i] = values[i - 1] + integrate_adaptive(g, left, right, abs_tol);
    slopes[i] = g(right);
    left = right;
  }
  return MonotoneTable(a, b, std::move(values), std::move(slopes));
}

}  // namespace degmlmc
