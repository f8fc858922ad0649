#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "degmlmc/flux.hpp"
#include "degmlmc/grid.hpp"

namespace degmlmc {

enum class SchemeKind { explicit_euler, implicit_euler };

std::string to_string(SchemeKind kind);
SchemeKind parse_scheme_kind(const std::string& name);

std::string to_string(FluxEvaluation mode);
FluxEvaluation parse_flux_evaluation(const std::string& name);

struct SchemeConfig {
  SchemeKind kind = SchemeKind::explicit_euler;
  double cfl = 0.4;
  double theta = 1.0;              // implicit: dt = theta * dx
  double newton_tol_factor = 1.0;  // Newton stops at scaled l1 residual <= factor * dx * dt
  int newton_max_iter = 50;
  bool strict_rate_cfl = false;  // explicit: also dt <= cfl * dx^(8/3)
  FluxEvaluation flux_eval = FluxEvaluation::tabulated;

  void validate() const;
  std::string describe() const;
};

struct WorkCounter {
  std::uint64_t flux_evals = 0;
  std::uint64_t cell_updates = 0;
  std::uint64_t newton_iters = 0;
  std::uint64_t linear_solves = 0;
  double wall_seconds = 0.0;

  WorkCounter& operator+=(const WorkCounter& other);
};

/// Largest dt with (dt/dx)(sup f1' - inf f2') + 2 (dt/dx^2) sup A' <= cfl on
/// the probe grid (and dt <= cfl dx^(8/3) under strict_rate_cfl). Returns
/// `remaining` when the equation has no transport and no diffusion.
double max_stable_dt(const FluxModel& model, const NumericalFlux& F, const GridSpec& grid,
                     const SchemeConfig& cfg,
                     double remaining = std::numeric_limits<double>::infinity());

/// One step of the explicit monotone scheme. Throws StabilityViolation if a
/// value leaves [m_minus - 1e-8, m_plus + 1e-8].
SolutionField explicit_step(const SolutionField& u, const FluxModel& model, const NumericalFlux& F,
                            double dt, WorkCounter& work);

/// Solves the cyclic tridiagonal system
///   lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i]   (0 < i < n-1)
/// with the periodic corners A[n-1][0] = corner_bottom_left and
/// A[0][n-1] = corner_top_right; lower[0] and upper[n-1] are ignored.
/// Thomas algorithm on a rank-one modified system plus Sherman-Morrison.
/// Throws SingularMatrix on a zero pivot.
std::vector<double> thomas_periodic(std::span<const double> lower, std::span<const double> diag,
                                    std::span<const double> upper, double corner_bottom_left,
                                    double corner_top_right, std::span<const double> rhs);

struct StepReport {
  double residual = 0.0;
  int newton_iters = 0;
};

/// One step of the implicit scheme by Newton iteration from w = u.
/// Throws NonConvergence after newton_max_iter iterations.
SolutionField implicit_step(const SolutionField& u, const FluxModel& model, const NumericalFlux& F,
                            double dt, const SchemeConfig& cfg, WorkCounter& work,
                            StepReport* report = nullptr);

/// Total variation of g_j = F(u_j, u_{j+1}) - (A(u_{j+1}) - A(u_j))/dx, the
/// L1-Lipschitz-in-time constant of the discrete solution.
double discrete_flux_variation(const SolutionField& u, const FluxModel& model,
                               const NumericalFlux& F);

struct RunOptions {
  std::ostream* trace = nullptr;  // "step time dt residual newton_iters" per step
  std::function<void(const SolutionField&)> observer;  // called after every step
};

struct RunResult {
  SolutionField field;
  WorkCounter work;
};

/// Advances u0 to time T with the configured scheme. The last step is
/// truncated to land on T; an implicit step that fails to converge is
/// retried once as two half steps.
RunResult run(const SolutionField& u0, const FluxModel& model, const NumericalFlux& F,
              const SchemeConfig& cfg, double T, const RunOptions& options = {});

/// Cell-averages u0, builds the Engquist-Osher flux (cfg.flux_eval) and
/// advances to T.
RunResult run(const InitialData& u0, const FluxModel& model, const GridSpec& grid,
              const SchemeConfig& cfg, double T, const RunOptions& options = {});

}  // namespace degmlmc
