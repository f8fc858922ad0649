#include "degmlmc/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "degmlmc/parallel.hpp"
#include "degmlmc/quadrature.hpp"

namespace degmlmc {

void ExperimentConfig::validate() const {
  model.validate();
  scheme.validate();
  if (L_max < 0) throw std::invalid_argument("L must be >= 0");
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
  if (m_base < 1) throw std::invalid_argument("m_base must be >= 1");
  if (!(dx0 > 0.0) || !(dx > 0.0)) throw std::invalid_argument("dx0 and dx must be positive");
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  if (M < 1) throw std::invalid_argument("M must be >= 1");
  if (reference_nodes < 1) throw std::invalid_argument("reference_nodes must be >= 1");
  if (reference == ReferenceKind::quadrature && reference_extra_levels < 1)
    throw std::invalid_argument("reference_extra_levels must be >= 1");
  if (reference == ReferenceKind::mlmc && L_ref <= L_max)
    throw std::invalid_argument("L_ref must exceed L (reference must be strictly finer)");
}

double relative_error(const SolutionField& reference, std::span<const SolutionField> runs) {
  if (runs.empty()) throw std::invalid_argument("relative_error: no runs");
  double ref_norm = 0.0;
  for (double v : reference.values()) ref_norm += std::abs(v);
  if (ref_norm == 0.0) throw std::invalid_argument("relative_error: reference has zero norm");
  double sum_sq = 0.0;
  for (const auto& run : runs) {
    const auto r = nesting_ratio(run.grid(), reference.grid());
    double diff = 0.0;
    for (std::size_t j = 0; j < reference.size(); ++j) diff += std::abs(reference[j] - run[j / r]);
    const double re = 100.0 * diff / ref_norm;
    sum_sq += re * re;
  }
  return std::sqrt(sum_sq / static_cast<double>(runs.size()));
}

SolutionField quadrature_reference(const RandomDataModel& model, const GridSpec& grid,
                                   const SchemeConfig& cfg, double T, std::size_t n_nodes,
                                   std::size_t workers) {
  const auto box = model.parameter_box();
  if (box.size() > 2) throw std::invalid_argument("quadrature_reference: parameter dimension > 2");
  std::vector<std::vector<double>> points;
  std::vector<double> weights;
  if (box.empty()) {
    points.emplace_back();
    weights.push_back(1.0);
  } else {
    std::vector<QuadratureRule> rules;
    for (const auto& [lo, hi] : box) rules.push_back(gauss_legendre_uniform(n_nodes, lo, hi));
    if (rules.size() == 1) {
      for (std::size_t i = 0; i < n_nodes; ++i) {
        points.push_back({rules[0].nodes[i]});
        weights.push_back(rules[0].weights[i]);
      }
    } else {
      for (std::size_t i = 0; i < n_nodes; ++i)
        for (std::size_t k = 0; k < n_nodes; ++k) {
          points.push_back({rules[0].nodes[i], rules[1].nodes[k]});
          weights.push_back(rules[0].weights[i] * rules[1].weights[k]);
        }
    }
  }

  std::vector<std::optional<SolutionField>> fields(points.size());
  parallel_for(points.size(), workers, [&](std::size_t i) {
    const auto sample = build_sample(model, points[i]);
    fields[i] = run(sample.u0, sample.flux, grid, cfg, T).field;
  });
  std::vector<double> acc(grid.n_cells(), 0.0);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += weights[i] * (*fields[i])[j];
  return SolutionField(grid, std::move(acc), T);
}

LevelHierarchy make_hierarchy(const ExperimentConfig& cfg, int L) {
  const auto data = initial_data(cfg.model.initial);
  return LevelHierarchy(data.x_min, data.x_max, cfg.dx0, cfg.K, L, cfg.m_base);
}

SolutionField make_reference(const ExperimentConfig& cfg) {
  if (cfg.reference == ReferenceKind::mlmc) {
    const auto h = make_hierarchy(cfg, cfg.L_ref);
    return mlmc_run(cfg.model, h, cfg.scheme, cfg.T, cfg.reference_seed, cfg.workers).mean.mean;
  }
  const auto h = make_hierarchy(cfg, cfg.L_max);
  const auto grid = h.finest_grid().refined(std::size_t{1} << (cfg.K * cfg.reference_extra_levels));
  return quadrature_reference(cfg.model, grid, cfg.scheme, cfg.T, cfg.reference_nodes, cfg.workers);
}

void write_error_table_header(std::ostream& os) { os << "L,RE,dx_L,runtime_s,bv,linf\n"; }

void write_error_row(std::ostream& os, const ErrorRow& row, bool timing) {
  os << std::setprecision(17) << row.L << ',' << row.re << ',' << row.dx << ','
     << (timing ? row.runtime_s : 0.0) << ',' << row.bv << ',' << row.linf << '\n';
  os.flush();
}

void write_error_rate_row(std::ostream& os, const ErrorReport& report, bool timing) {
  os << std::setprecision(17) << "rate,," << report.rate_dx << ','
     << (timing ? report.rate_wall : report.rate_cell_updates) << ",,\n";
  os.flush();
}

ErrorReport convergence_study(const ExperimentConfig& cfg, std::ostream* csv) {
  cfg.validate();
  const auto reference = make_reference(cfg);
  if (!(reference.grid().n_cells() > make_hierarchy(cfg, cfg.L_max).finest_grid().n_cells()))
    throw std::invalid_argument("convergence_study: reference must be finer than dx at L_max");

  ErrorReport report;
  if (csv) write_error_table_header(*csv);
  const std::size_t outer = std::min(cfg.workers, cfg.N);
  const std::size_t inner = std::max<std::size_t>(1, cfg.workers / std::max<std::size_t>(outer, 1));
  for (int L = 0; L <= cfg.L_max; ++L) {
    const auto h = make_hierarchy(cfg, L);
    std::vector<std::optional<EstimatorResult>> runs(cfg.N);
    std::vector<double> walls(cfg.N);
    parallel_for(cfg.N, outer, [&](std::size_t k) {
      const auto start = std::chrono::steady_clock::now();
      runs[k] = mlmc_run(cfg.model, h, cfg.scheme, cfg.T, mix_seed(cfg.seed, L, k), inner).mean;
      walls[k] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    });
    std::vector<SolutionField> fields;
    ErrorRow row{L, 0.0, h.levels().back().dx, 0.0, 0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < cfg.N; ++k) {
      fields.push_back(runs[k]->mean);
      row.runtime_s += walls[k];
      row.cell_updates += static_cast<double>(runs[k]->work.cell_updates);
      row.bv += bv_seminorm(runs[k]->mean);
      row.linf += linf_norm(runs[k]->mean);
    }
    const auto n = static_cast<double>(cfg.N);
    row.runtime_s /= n;
    row.cell_updates /= n;
    row.bv /= n;
    row.linf /= n;
    row.re = relative_error(reference, fields);
    report.rows.push_back(row);
    if (csv) write_error_row(*csv, row, cfg.timing);
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  report.rate_dx = report.rate_wall = report.rate_cell_updates = nan;
  if (report.rows.size() >= 2) {
    std::vector<double> dx, re, wall, cells;
    for (const auto& r : report.rows) {
      dx.push_back(r.dx);
      re.push_back(r.re);
      wall.push_back(r.runtime_s);
      cells.push_back(r.cell_updates);
    }
    auto safe_fit = [&](const std::vector<double>& xs) {
      try {
        return fit_log_log_slope(xs, re);
      } catch (const std::invalid_argument&) {
        return nan;
      }
    };
    report.rate_dx = safe_fit(dx);
    report.rate_cell_updates = safe_fit(cells);
    report.rate_wall = cfg.timing ? safe_fit(wall) : nan;
  }
  if (csv) write_error_rate_row(*csv, report, cfg.timing);
  return report;
}

InvariantReport check_scheme_invariants(const InitialData& u0, const InitialData& v0,
                                        const FluxModel& model, const GridSpec& grid,
                                        const SchemeConfig& cfg, double T, double tol) {
  InvariantReport rep;
  const auto F = engquist_osher(model);

  auto track = [&](const SolutionField& init) {
    const double l1_0 = l1_norm(init);
    const double bv_0 = bv_seminorm(init);
    const auto [lo_it, hi_it] = std::minmax_element(init.values().begin(), init.values().end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    const double lip = discrete_flux_variation(init, model, F);
    SolutionField prev = init;
    RunOptions opts;
    opts.observer = [&](const SolutionField& u) {
      const double l1_excess = l1_norm(u) - l1_0;
      rep.worst_l1_excess = std::max(rep.worst_l1_excess, l1_excess);
      if (l1_excess > tol) rep.l1_stable = false;
      for (double v : u.values()) {
        const double ex = std::max(lo - v, v - hi);
        rep.worst_range_excess = std::max(rep.worst_range_excess, ex);
        if (ex > tol) rep.max_principle = false;
      }
      const double bv_excess = bv_seminorm(u) - bv_0;
      rep.worst_bv_excess = std::max(rep.worst_bv_excess, bv_excess);
      if (bv_excess > tol) rep.bv_diminishing = false;
      const double lip_excess = l1_distance(u, prev) - lip * (u.time() - prev.time());
      rep.worst_lipschitz_excess = std::max(rep.worst_lipschitz_excess, lip_excess);
      if (lip_excess > tol) rep.lipschitz_in_time = false;
      prev = u;
    };
    auto result = run(init, model, F, cfg, T, opts);
    const double total_excess = l1_distance(result.field, init) - lip * T;
    rep.worst_lipschitz_excess = std::max(rep.worst_lipschitz_excess, total_excess);
    if (total_excess > tol) rep.lipschitz_in_time = false;
    return result.field;
  };

  const auto a0 = cell_average(u0, grid);
  const auto b0 = cell_average(v0, grid);
  const auto a = track(a0);
  const auto b = track(b0);
  const double contraction_excess = l1_distance(a, b) - l1_distance(a0, b0);
  rep.worst_contraction_excess = std::max(0.0, contraction_excess);
  if (contraction_excess > tol) rep.l1_contraction = false;
  return rep;
}

}  // namespace degmlmc
