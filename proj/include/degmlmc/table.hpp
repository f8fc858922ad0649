#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace degmlmc {

// Piecewise cubic Hermite interpolant on a uniform grid of [a, b].
// Node slopes are the supplied derivatives, limited with the
// Fritsch-Carlson conditions so that monotone data stays monotone.
// Outside [a, b] the interpolant is extended linearly with the end slopes.
class MonotoneTable {
 public:
  MonotoneTable() = default;
  MonotoneTable(double a, double b, std::vector<double> values, std::vector<double> slopes);

  double value(double x) const;
  double derivative(double x) const;

  double lower() const { return a_; }
  double upper() const { return b_; }
  std::size_t size() const { return values_.size(); }

 private:
  double a_ = 0.0;
  double b_ = 1.0;
  double h_ = 1.0;
  double inv_h_ = 1.0;
  std::vector<double> values_;
  std::vector<double> slopes_;
};

// Tabulates the primitive P(x) = p_a + integral_a^x g over n_nodes uniform
// nodes of [a, b] (adaptive quadrature per interval, absolute tolerance
// abs_tol each) with slopes g at the nodes.
MonotoneTable tabulate_primitive(const std::function<double(double)>& g, double a, double b,
                                 double p_a, std::size_t n_nodes, double abs_tol);

}  // namespace degmlmc
