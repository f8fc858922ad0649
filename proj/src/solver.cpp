#include "degmlmc/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "degmlmc/error.hpp"

namespace degmlmc {

std::string to_string(SchemeKind kind) {
  return kind == SchemeKind::explicit_euler ? "explicit" : "implicit";
}

SchemeKind parse_scheme_kind(const std::string& name) {
  if (name == "explicit") return SchemeKind::explicit_euler;
  if (name == "implicit") return SchemeKind::implicit_euler;
  throw std::invalid_argument("unknown scheme '" + name + "' (expected explicit|implicit)");
}

std::string to_string(FluxEvaluation mode) {
  return mode == FluxEvaluation::tabulated ? "tabulated" : "direct";
}

FluxEvaluation parse_flux_evaluation(const std::string& name) {
  if (name == "tabulated") return FluxEvaluation::tabulated;
  if (name == "direct") return FluxEvaluation::direct;
  throw std::invalid_argument("unknown flux_eval '" + name + "' (expected tabulated|direct)");
}

void SchemeConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("SchemeConfig: cfl must be in (0,1]");
  if (!(theta > 0.0)) throw std::invalid_argument("SchemeConfig: theta must be positive");
  if (!(newton_tol_factor > 0.0))
    throw std::invalid_argument("SchemeConfig: newton_tol_factor must be positive");
  if (newton_max_iter < 1) throw std::invalid_argument("SchemeConfig: newton_max_iter must be >= 1");
}

std::string SchemeConfig::describe() const {
  std::ostringstream os;
  os << "scheme=" << to_string(kind) << " cfl=" << cfl << " theta=" << theta
     << " newton_tol_factor=" << newton_tol_factor << " newton_max_iter=" << newton_max_iter
     << " strict_rate_cfl=" << (strict_rate_cfl ? "true" : "false")
     << " flux_eval=" << to_string(flux_eval);
  return os.str();
}

WorkCounter& WorkCounter::operator+=(const WorkCounter& other) {
  flux_evals += other.flux_evals;
  cell_updates += other.cell_updates;
  newton_iters += other.newton_iters;
  linear_solves += other.linear_solves;
  wall_seconds += other.wall_seconds;
  return *this;
}

double max_stable_dt(const FluxModel& model, const NumericalFlux& F, const GridSpec& grid,
                     const SchemeConfig& cfg, double remaining) {
  double sup_f1 = -std::numeric_limits<double>::infinity();
  double inf_f2 = std::numeric_limits<double>::infinity();
  double sup_a = 0.0;
  for (double z : probe_grid(model.m_minus, model.m_plus)) {
    sup_f1 = std::max(sup_f1, F.df1(z));
    inf_f2 = std::min(inf_f2, F.df2(z));
    sup_a = std::max(sup_a, model.dA(z));
  }
  const double dx = grid.dx();
  const double transport = std::max(sup_f1 - inf_f2, 0.0);
  const double rate = transport / dx + 2.0 * sup_a / (dx * dx);
  double dt = rate > 0.0 ? cfg.cfl / rate : remaining;
  if (cfg.strict_rate_cfl) dt = std::min(dt, cfg.cfl * std::pow(dx, 8.0 / 3.0));
  return dt;
}

namespace {

// Periodic index helpers over a ring of n cells.
inline std::size_t next(std::size_t j, std::size_t n) { return j + 1 == n ? 0 : j + 1; }
inline std::size_t prev(std::size_t j, std::size_t n) { return j == 0 ? n - 1 : j - 1; }

// values <- u - r (F_{j+1/2} - F_{j-1/2}) + s (A_{j+1} - 2 A_j + A_{j-1})
void explicit_update(std::span<const double> u, std::span<double> out, const FluxModel& model,
                     const NumericalFlux& F, double dt, double dx, WorkCounter& work,
                     std::vector<double>& scratch) {
  const auto n = u.size();
  scratch.resize(3 * n);
  double* f1 = scratch.data();
  double* f2 = f1 + n;
  double* A = f2 + n;
  for (std::size_t j = 0; j < n; ++j) {
    f1[j] = F.f1(u[j]);
    f2[j] = F.f2(u[j]);
    A[j] = model.A(u[j]);
  }
  const double r = dt / dx;
  const double s = dt / (dx * dx);
  const double lo = model.m_minus - 1e-8;
  const double hi = model.m_plus + 1e-8;
  for (std::size_t j = 0; j < n; ++j) {
    const auto jp = next(j, n);
    const auto jm = prev(j, n);
    const double flux_right = f1[j] + f2[jp];
    const double flux_left = f1[jm] + f2[j];
    const double v = u[j] - r * (flux_right - flux_left) + s * (A[jp] - 2.0 * A[j] + A[jm]);
    if (!(v >= lo && v <= hi)) {
      throw StabilityViolation("explicit step left the state interval at cell " +
                               std::to_string(j) + " (value " + std::to_string(v) +
                               "); CFL condition violated");
    }
    out[j] = v;
  }
  work.flux_evals += 2 * n;
  work.cell_updates += n;
}

// Residual G(w) of the implicit scheme; returns the scaled l1 norm.
double implicit_residual(std::span<const double> w, std::span<const double> u,
                         const FluxModel& model, const NumericalFlux& F, double r, double s,
                         double dx, std::span<double> G, std::vector<double>& scratch) {
  const auto n = w.size();
  scratch.resize(3 * n);
  double* f1 = scratch.data();
  double* f2 = f1 + n;
  double* A = f2 + n;
  for (std::size_t j = 0; j < n; ++j) {
    f1[j] = F.f1(w[j]);
    f2[j] = F.f2(w[j]);
    A[j] = model.A(w[j]);
  }
  double norm = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const auto jp = next(j, n);
    const auto jm = prev(j, n);
    G[j] = w[j] - u[j] + r * ((f1[j] + f2[jp]) - (f1[jm] + f2[j])) -
           s * (A[jp] - 2.0 * A[j] + A[jm]);
    norm += std::abs(G[j]);
  }
  return norm * dx;
}

}  // namespace

SolutionField explicit_step(const SolutionField& u, const FluxModel& model, const NumericalFlux& F,
                            double dt, WorkCounter& work) {
  if (!(dt > 0.0)) throw std::invalid_argument("explicit_step: dt must be positive");
  std::vector<double> out(u.size());
  std::vector<double> scratch;
  explicit_update(u.values(), out, model, F, dt, u.grid().dx(), work, scratch);
  return SolutionField(u.grid(), std::move(out), u.time() + dt);
}

std::vector<double> thomas_periodic(std::span<const double> lower, std::span<const double> diag,
                                    std::span<const double> upper, double corner_bottom_left,
                                    double corner_top_right, std::span<const double> rhs) {
  const auto n = diag.size();
  if (n < 3 || lower.size() != n || upper.size() != n || rhs.size() != n)
    throw std::invalid_argument("thomas_periodic: arrays must share a length n >= 3");

  // A = T + w v^T with w = (gamma, 0, ..., 0, alpha), v = (1, 0, ..., 0, beta/gamma).
  const double alpha = corner_bottom_left;
  const double beta = corner_top_right;
  const double gamma = diag[0] != 0.0 ? -diag[0] : -1.0;

  std::vector<double> b(diag.begin(), diag.end());
  b[0] -= gamma;
  b[n - 1] -= alpha * beta / gamma;

  // Forward sweep shared by both right-hand sides.
  std::vector<double> c_prime(n);
  std::vector<double> x(n);
  std::vector<double> z(n);
  auto pivot_check = [](double p, std::size_t i) {
    if (p == 0.0 || !std::isfinite(p))
      throw SingularMatrix("thomas_periodic: zero pivot at row " + std::to_string(i));
  };
  double piv = b[0];
  pivot_check(piv, 0);
  c_prime[0] = upper[0] / piv;
  x[0] = rhs[0] / piv;
  z[0] = gamma / piv;
  for (std::size_t i = 1; i < n; ++i) {
    piv = b[i] - lower[i] * c_prime[i - 1];
    pivot_check(piv, i);
    c_prime[i] = i + 1 < n ? upper[i] / piv : 0.0;
    x[i] = (rhs[i] - lower[i] * x[i - 1]) / piv;
    const double wi = i + 1 == n ? alpha : 0.0;
    z[i] = (wi - lower[i] * z[i - 1]) / piv;
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    x[i] -= c_prime[i] * x[i + 1];
    z[i] -= c_prime[i] * z[i + 1];
  }

  const double denom = 1.0 + z[0] + beta * z[n - 1] / gamma;
  pivot_check(denom, n);
  const double factor = (x[0] + beta * x[n - 1] / gamma) / denom;
  for (std::size_t i = 0; i < n; ++i) x[i] -= factor * z[i];
  return x;
}

SolutionField implicit_step(const SolutionField& u, const FluxModel& model, const NumericalFlux& F,
                            double dt, const SchemeConfig& cfg, WorkCounter& work,
                            StepReport* report) {
  if (!(dt > 0.0)) throw std::invalid_argument("implicit_step: dt must be positive");
  const auto n = u.size();
  const double dx = u.grid().dx();
  const double r = dt / dx;
  const double s = dt / (dx * dx);
  const double tol = cfg.newton_tol_factor * dx * dt;

  std::vector<double> w(u.values());
  std::vector<double> G(n);
  std::vector<double> lower(n);
  std::vector<double> diag(n);
  std::vector<double> upper(n);
  std::vector<double> d1(n);
  std::vector<double> d2(n);
  std::vector<double> da(n);
  std::vector<double> scratch;
  std::vector<double> trial(n);
  std::vector<double> trial_G(n);
  constexpr int kMaxHalvings = 30;

  int iters = 0;
  double residual = implicit_residual(w, u.values(), model, F, r, s, dx, G, scratch);
  work.flux_evals += 2 * n;
  while (residual > tol) {
    if (iters >= cfg.newton_max_iter) {
      work.newton_iters += static_cast<std::uint64_t>(iters);
      throw NonConvergence("implicit_step: Newton did not reach residual " + std::to_string(tol) +
                               " in " + std::to_string(iters) + " iterations (last " +
                               std::to_string(residual) + ")",
                           residual, iters);
    }
    for (std::size_t j = 0; j < n; ++j) {
      d1[j] = F.df1(w[j]);
      d2[j] = F.df2(w[j]);
      da[j] = model.dA(w[j]);
    }
    for (std::size_t j = 0; j < n; ++j) {
      diag[j] = 1.0 + r * (d1[j] - d2[j]) + 2.0 * s * da[j];
      lower[j] = -r * d1[prev(j, n)] - s * da[prev(j, n)];
      upper[j] = r * d2[next(j, n)] - s * da[next(j, n)];
      G[j] = -G[j];
    }
    // Row 0 couples to w[n-1] through lower[0]; row n-1 to w[0] through upper[n-1].
    const auto delta = thomas_periodic(lower, diag, upper, upper[n - 1], lower[0], G);
    ++iters;
    work.linear_solves += 1;
    // Backtracking on the scaled l1 residual; kinks in f or A can make full steps cycle.
    double lambda = 1.0;
    for (int halvings = 0;; ++halvings) {
      for (std::size_t j = 0; j < n; ++j) trial[j] = w[j] + lambda * delta[j];
      const double trial_residual =
          implicit_residual(trial, u.values(), model, F, r, s, dx, trial_G, scratch);
      work.flux_evals += 2 * n;
      if (trial_residual <= (1.0 - 1e-4 * lambda) * residual || halvings == kMaxHalvings) {
        std::swap(w, trial);
        std::swap(G, trial_G);
        residual = trial_residual;
        break;
      }
      lambda *= 0.5;
    }
  }
  work.newton_iters += static_cast<std::uint64_t>(iters);
  work.cell_updates += n;
  if (report) {
    report->residual = residual;
    report->newton_iters = iters;
  }
  return SolutionField(u.grid(), std::move(w), u.time() + dt);
}

double discrete_flux_variation(const SolutionField& u, const FluxModel& model,
                               const NumericalFlux& F) {
  const auto n = u.size();
  const double dx = u.grid().dx();
  std::vector<double> g(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto jp = next(j, n);
    g[j] = F(u[j], u[jp]) - (model.A(u[jp]) - model.A(u[j])) / dx;
  }
  return bv_seminorm(g);
}

RunResult run(const SolutionField& u0, const FluxModel& model, const NumericalFlux& F,
              const SchemeConfig& cfg, double T, const RunOptions& options) {
  if (!(T > 0.0)) throw std::invalid_argument("run: final time must be positive");
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  WorkCounter work;
  const double dx = u0.grid().dx();
  const double dt_nominal = cfg.kind == SchemeKind::explicit_euler
                                ? max_stable_dt(model, F, u0.grid(), cfg, T)
                                : cfg.theta * dx;
  const double ratio = T / dt_nominal;
  auto n_steps = static_cast<std::size_t>(std::ceil(ratio * (1.0 - 1e-12)));
  n_steps = std::max<std::size_t>(n_steps, 1);

  SolutionField u = u0;
  u.set_time(0.0);
  std::vector<double> next_values(u.size());
  std::vector<double> scratch;
  for (std::size_t step = 0; step < n_steps; ++step) {
    const double t0 = static_cast<double>(step) * dt_nominal;
    const double dt = step + 1 == n_steps ? T - t0 : dt_nominal;
    StepReport report;
    if (cfg.kind == SchemeKind::explicit_euler) {
      explicit_update(u.values(), next_values, model, F, dt, dx, work, scratch);
      std::swap(u.mutable_values(), next_values);
    } else {
      try {
        u = implicit_step(u, model, F, dt, cfg, work, &report);
      } catch (const NonConvergence&) {
        StepReport half;
        u = implicit_step(u, model, F, 0.5 * dt, cfg, work, &half);
        u = implicit_step(u, model, F, 0.5 * dt, cfg, work, &report);
        report.newton_iters += half.newton_iters;
      }
    }
    u.set_time(step + 1 == n_steps ? T : t0 + dt);
    if (options.trace) {
      *options.trace << std::setprecision(17) << step + 1 << ' ' << u.time() << ' ' << dt << ' '
                     << report.residual << ' ' << report.newton_iters << '\n';
    }
    if (options.observer) options.observer(u);
  }
  work.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return RunResult{std::move(u), work};
}

RunResult run(const InitialData& u0, const FluxModel& model, const GridSpec& grid,
              const SchemeConfig& cfg, double T, const RunOptions& options) {
  const auto field = cell_average(u0, grid);
  const auto F = engquist_osher(model, cfg.flux_eval);
  return run(field, model, F, cfg, T, options);
}

}  // namespace degmlmc
