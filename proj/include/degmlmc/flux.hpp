#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "degmlmc/table.hpp"

namespace degmlmc {

using ScalarFunction = std::function<double(double)>;

/// Number of points of the uniform probe grid used for suprema and
/// invariant checks over the admissible state interval.
inline constexpr std::size_t kProbePoints = 101;
/// Node count of the memoization tables for flux parts and primitives.
inline constexpr std::size_t kTableNodes = 4097;

std::vector<double> probe_grid(double a, double b, std::size_t n = kProbePoints);

/// One realization of convective flux f and diffusive primitive A
/// (A' = a >= 0) on the admissible state interval [m_minus, m_plus].
struct FluxModel {
  ScalarFunction f;
  ScalarFunction df;
  ScalarFunction A;
  ScalarFunction dA;
  double m_minus = 0.0;
  double m_plus = 1.0;
  double lip_f = 0.0;  // sup |f'| on the probe grid
  double lip_a = 0.0;  // sup A' on the probe grid
  std::string descriptor;

  /// Fills lip_f and lip_a from the probe grid.
  static FluxModel from_functions(ScalarFunction f, ScalarFunction df, ScalarFunction A,
                                  ScalarFunction dA, double m_minus, double m_plus,
                                  std::string descriptor = {});

  /// Throws std::invalid_argument when A' < 0, the Lipschitz bounds are
  /// exceeded or A decreases somewhere on the probe grid.
  void validate() const;
};

/// Monotone flux in split form F(u, v) = f1(u) + f2(v), f1 nondecreasing,
/// f2 nonincreasing.
class NumericalFlux {
 public:
  NumericalFlux(ScalarFunction f1, ScalarFunction f2, ScalarFunction df1, ScalarFunction df2,
                std::string label);
  NumericalFlux(MonotoneTable f1, MonotoneTable f2, std::string label);

  double f1(double u) const { return t1_ ? t1_->value(u) : f1_(u); }
  double f2(double v) const { return t2_ ? t2_->value(v) : f2_(v); }
  double df1(double u) const { return t1_ ? t1_->derivative(u) : df1_(u); }
  double df2(double v) const { return t2_ ? t2_->derivative(v) : df2_(v); }
  double operator()(double u, double v) const { return f1(u) + f2(v); }
  const std::string& label() const { return label_; }
  bool tabulated() const { return static_cast<bool>(t1_); }

 private:
  std::shared_ptr<const MonotoneTable> t1_;
  std::shared_ptr<const MonotoneTable> t2_;
  ScalarFunction f1_;
  ScalarFunction f2_;
  ScalarFunction df1_;
  ScalarFunction df2_;
  std::string label_;
};

enum class FluxEvaluation { tabulated, direct };

/// f1(u) = f(M-) + int_{M-}^u max(f', 0), f2(v) = int_{M-}^v min(f', 0).
/// Quadrature failures propagate as QuadratureFailure.
NumericalFlux engquist_osher(const FluxModel& model,
                             FluxEvaluation mode = FluxEvaluation::tabulated);

/// f1(u) = f(u)/2 + u/(2 theta), f2(v) = f(v)/2 - v/(2 theta), with theta
/// the mesh ratio dt/dx. Rejects theta * lip_f > 1.
NumericalFlux lax_friedrichs(const FluxModel& model, double theta);

inline double flux_eval(const NumericalFlux& F, double u, double v) { return F(u, v); }

}  // namespace degmlmc
