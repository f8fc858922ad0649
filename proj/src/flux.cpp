#include "degmlmc/flux.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "degmlmc/quadrature.hpp"

namespace degmlmc {

std::vector<double> probe_grid(double a, double b, std::size_t n) {
  if (n < 2) throw std::invalid_argument("probe_grid: need at least two points");
  std::vector<double> pts(n);
  for (std::size_t i = 0; i < n; ++i)
    pts[i] = (i + 1 == n) ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return pts;
}

FluxModel FluxModel::from_functions(ScalarFunction f, ScalarFunction df, ScalarFunction A,
                                    ScalarFunction dA, double m_minus, double m_plus,
                                    std::string descriptor) {
  if (!(m_plus > m_minus)) throw std::invalid_argument("FluxModel: need m_minus < m_plus");
  FluxModel m{std::move(f), std::move(df), std::move(A), std::move(dA),
              m_minus,      m_plus,        0.0,          0.0,          std::move(descriptor)};
  for (double z : probe_grid(m_minus, m_plus)) {
    m.lip_f = std::max(m.lip_f, std::abs(m.df(z)));
    m.lip_a = std::max(m.lip_a, m.dA(z));
  }
  return m;
}

void FluxModel::validate() const {
  const auto pts = probe_grid(m_minus, m_plus);
  const double slack = 1e-12;
  double prev_A = A(pts.front());
  for (double z : pts) {
    const double a = dA(z);
    if (a < 0.0) throw std::invalid_argument("FluxModel: A'(" + std::to_string(z) + ") < 0");
    if (std::abs(df(z)) > lip_f * (1.0 + slack) + slack)
      throw std::invalid_argument("FluxModel: |f'| exceeds lip_f");
    if (a > lip_a * (1.0 + slack) + slack)
      throw std::invalid_argument("FluxModel: A' exceeds lip_a");
    const double Az = A(z);
    if (Az < prev_A - slack * (1.0 + std::abs(prev_A)))
      throw std::invalid_argument("FluxModel: A is not nondecreasing");
    prev_A = Az;
  }
}

NumericalFlux::NumericalFlux(ScalarFunction f1, ScalarFunction f2, ScalarFunction df1,
                             ScalarFunction df2, std::string label)
    : f1_(std::move(f1)),
      f2_(std::move(f2)),
      df1_(std::move(df1)),
      df2_(std::move(df2)),
      label_(std::move(label)) {}

NumericalFlux::NumericalFlux(MonotoneTable f1, MonotoneTable f2, std::string label)
    : t1_(std::make_shared<const MonotoneTable>(std::move(f1))),
      t2_(std::make_shared<const MonotoneTable>(std::move(f2))),
      label_(std::move(label)) {}

NumericalFlux engquist_osher(const FluxModel& model, FluxEvaluation mode) {
  constexpr double kTol = 1e-10;
  const double lo = model.m_minus;
  const double f_lo = model.f(lo);
  ScalarFunction df = model.df;
  ScalarFunction pos = [df](double s) { return std::max(df(s), 0.0); };
  ScalarFunction neg = [df](double s) { return std::min(df(s), 0.0); };

  if (mode == FluxEvaluation::tabulated) {
    auto t1 = tabulate_primitive(pos, lo, model.m_plus, f_lo, kTableNodes, kTol);
    auto t2 = tabulate_primitive(neg, lo, model.m_plus, 0.0, kTableNodes, kTol);
    return NumericalFlux(std::move(t1), std::move(t2), "engquist_osher");
  }
  return NumericalFlux([pos, lo, f_lo](double u) { return f_lo + integrate_adaptive(pos, lo, u, kTol); },
                       [neg, lo](double v) { return integrate_adaptive(neg, lo, v, kTol); }, pos, neg,
                       "engquist_osher_direct");
}

NumericalFlux lax_friedrichs(const FluxModel& model, double theta) {
  if (!(theta > 0.0)) throw std::invalid_argument("lax_friedrichs: theta must be positive");
  if (theta * model.lip_f > 1.0)
    throw std::invalid_argument("lax_friedrichs: theta * lip_f > 1 breaks monotonicity");
  const double c = 0.5 / theta;
  ScalarFunction f = model.f;
  ScalarFunction df = model.df;
  return NumericalFlux([f, c](double u) { return 0.5 * f(u) + c * u; },
                       [f, c](double v) { return 0.5 * f(v) - c * v; },
                       [df, c](double u) { return 0.5 * df(u) + c; },
                       [df, c](double v) { return 0.5 * df(v) - c; }, "lax_friedrichs");
}

}  // namespace degmlmc
