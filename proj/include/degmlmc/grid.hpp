#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace degmlmc {

/// Uniform periodic mesh of [x_min, x_max) with n_cells cells.
class GridSpec {
 public:
  GridSpec(double x_min, double x_max, std::size_t n_cells);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  std::size_t n_cells() const { return n_cells_; }
  double dx() const { return dx_; }
  double length() const { return x_max_ - x_min_; }
  double center(std::size_t j) const { return x_min_ + (static_cast<double>(j) + 0.5) * dx_; }

  /// Same domain, refined by an integer factor.
  GridSpec refined(std::size_t factor) const;

  bool same_domain(const GridSpec& other) const;
  bool operator==(const GridSpec& other) const = default;

 private:
  double x_min_;
  double x_max_;
  std::size_t n_cells_;
  double dx_;
};

/// Cell averages u_j on a grid at a given time.
class SolutionField {
 public:
  SolutionField(GridSpec grid, std::vector<double> values, double time = 0.0);

  const GridSpec& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }
  double time() const { return time_; }
  void set_time(double t) { time_ = t; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t j) const { return values_[j]; }

 private:
  GridSpec grid_;
  std::vector<double> values_;
  double time_;
};

/// A real function on [x_min, x_max] with optional known discontinuities.
/// Breakpoints split the per-cell quadrature so that piecewise smooth data
/// is integrated at full order.
struct InitialData {
  std::function<double(double)> fn;
  double x_min = 0.0;
  double x_max = 1.0;
  std::vector<double> breakpoints;
  std::string label;

  double operator()(double x) const { return fn(x); }
};

/// (1/dx) * integral of u0 over each cell, by 5-point Gauss-Legendre on every
/// sub-interval delimited by cell faces and breakpoints. Throws
/// std::invalid_argument on a non-finite result.
SolutionField cell_average(const std::function<double(double)>& u0, const GridSpec& grid,
                           std::span<const double> breakpoints = {});
SolutionField cell_average(const InitialData& u0, const GridSpec& grid);

/// x -> u0(x - shift), periodic on [x_min, x_max).
InitialData periodic_shift(const InitialData& u0, double shift);

double l1_norm(const SolutionField& u);
double linf_norm(const SolutionField& u);
/// Periodic total variation: sum_j |u_{j+1} - u_j| with wraparound.
double bv_seminorm(const SolutionField& u);
double bv_seminorm(std::span<const double> values);

/// Piecewise-constant injection onto a grid nested in u's grid.
SolutionField prolong(const SolutionField& u, const GridSpec& fine);
/// Cell averaging onto a coarser nesting grid (left inverse of prolong).
SolutionField restrict_average(const SolutionField& u, const GridSpec& coarse);

/// Both fields prolonged to the finer grid, then the L1 norm of the difference.
double l1_distance(const SolutionField& u, const SolutionField& v);

/// Refinement ratio fine.n_cells / coarse.n_cells; throws if not nested.
std::size_t nesting_ratio(const GridSpec& coarse, const GridSpec& fine);

/// Plain-text dump: '#' header lines (grid metadata, time, extra lines),
/// then "x_center value [std]" per cell with round-trip precision.
void write_field(std::ostream& os, const SolutionField& u, const SolutionField* std_field = nullptr,
                 std::span<const std::string> header_lines = {});

struct FieldDump {
  SolutionField value;
  std::vector<double> std;  // empty when the dump had two columns
  std::vector<std::string> header;
};
FieldDump read_field(std::istream& is);

}  // namespace degmlmc
