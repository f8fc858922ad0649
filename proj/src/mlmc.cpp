#include "degmlmc/mlmc.hpp"

#include <cmath>
#include <algorithm>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "degmlmc/error.hpp"
#include "degmlmc/parallel.hpp"
#include "degmlmc/sampling.hpp"

namespace degmlmc {

std::vector<std::size_t> sample_allocation(int K, int L, std::size_t m_base) {
  if (K < 1 || L < 0 || m_base < 1)
    throw std::invalid_argument("sample_allocation: need K >= 1, L >= 0, m_base >= 1");
  std::vector<std::size_t> M(static_cast<std::size_t>(L) + 1);
  for (int l = 0; l <= L; ++l) {
    const int e3 = 2 * K * (L - l);  // exponent times three
    if (e3 % 3 == 0) {
      M[l] = m_base << (e3 / 3);
    } else {
      M[l] = static_cast<std::size_t>(
          std::ceil(static_cast<double>(m_base) * std::exp2(static_cast<double>(e3) / 3.0)));
    }
  }
  return M;
}

std::vector<std::size_t> sample_allocation(const LevelHierarchy& h) {
  return sample_allocation(h.K(), h.L(), h.m_base());
}

LevelHierarchy::LevelHierarchy(double x_min, double x_max, double dx0, int K, int L,
                               std::size_t m_base)
    : dx0_(dx0), K_(K), L_(L), m_base_(m_base) {
  if (!(dx0 > 0.0)) throw std::invalid_argument("LevelHierarchy: dx0 must be positive");
  if (K < 1 || K > 8) throw std::invalid_argument("LevelHierarchy: K must lie in [1, 8]");
  if (L < 0 || K * L > 30) throw std::invalid_argument("LevelHierarchy: L out of range");
  const double cells = (x_max - x_min) / dx0;
  const double rounded = std::round(cells);
  if (rounded < 2.0 || std::abs(cells - rounded) > 1e-9 * rounded)
    throw std::invalid_argument("LevelHierarchy: domain length is not a multiple of dx0");
  const auto n0 = static_cast<std::size_t>(rounded);
  const auto M = sample_allocation(K, L, m_base);
  for (int l = 0; l <= L; ++l) {
    const std::size_t factor = std::size_t{1} << (K * l);
    const GridSpec grid(x_min, x_max, n0 * factor);
    levels_.push_back(Level{std::ldexp(dx0, -K * l), grid, M[l]});
  }
}

MlmcResult mlmc_run(const RandomDataModel& model, const LevelHierarchy& h, const SchemeConfig& cfg,
                    double T, std::uint64_t seed, std::size_t workers) {
  struct Task {
    std::size_t level;
    std::size_t index;
  };
  struct Outcome {
    std::vector<double> detail;
    std::vector<double> detail_sq;
    double detail_l1 = 0.0;
    WorkCounter work;
  };

  const auto& levels = h.levels();
  std::vector<Task> tasks;
  std::vector<std::size_t> offset(levels.size());
  for (std::size_t l = 0; l < levels.size(); ++l) {
    offset[l] = tasks.size();
    for (std::size_t i = 0; i < levels[l].samples; ++i) tasks.push_back({l, i});
  }
  std::vector<Outcome> outcomes(tasks.size());

  parallel_for(tasks.size(), workers, [&](std::size_t t) {
    const auto [l, i] = tasks[t];
    try {
      auto stream = stream_for(seed, static_cast<std::uint32_t>(l), static_cast<std::uint32_t>(i));
      const auto sample = draw_sample(model, stream);
      auto fine = run(sample.u0, sample.flux, levels[l].grid, cfg, T);
      Outcome& out = outcomes[t];
      out.work = fine.work;
      out.detail = fine.field.values();
      out.detail_sq = fine.field.values();
      for (auto& v : out.detail_sq) v *= v;
      if (l > 0) {
        auto coarse = run(sample.u0, sample.flux, levels[l - 1].grid, cfg, T);
        out.work += coarse.work;
        const auto up = prolong(coarse.field, levels[l].grid);
        for (std::size_t j = 0; j < out.detail.size(); ++j) {
          out.detail[j] -= up[j];
          out.detail_sq[j] -= up[j] * up[j];
        }
      }
      double s = 0.0;
      for (double v : out.detail) s += std::abs(v);
      out.detail_l1 = s * levels[l].grid.dx();
    } catch (const std::exception& e) {
      throw SampleFailure(static_cast<int>(l), i, e.what());
    }
  });

  const GridSpec& finest = h.finest_grid();
  std::vector<double> mean(finest.n_cells(), 0.0);
  std::vector<double> var(finest.n_cells(), 0.0);
  std::vector<double> mean2(finest.n_cells(), 0.0);
  std::vector<double> var2(finest.n_cells(), 0.0);
  MlmcResult result{
      EstimatorResult{SolutionField(finest, mean, T), SolutionField(finest, var, T), {}, {}, {}},
      EstimatorResult{SolutionField(finest, mean, T), SolutionField(finest, var, T), {}, {}, {}},
      {}};
  WorkCounter total;

  auto accumulate = [&finest](std::vector<double>& target, const std::vector<double>& level_vals) {
    const auto r = finest.n_cells() / level_vals.size();
    for (std::size_t j = 0; j < target.size(); ++j) target[j] += level_vals[j / r];
  };

  for (std::size_t l = 0; l < levels.size(); ++l) {
    const auto M = levels[l].samples;
    std::vector<std::vector<double>> d;
    std::vector<std::vector<double>> d2;
    std::vector<double> norms;
    LevelStats stats{static_cast<int>(l), levels[l].dx, M, 0.0, 0.0, {}};
    d.reserve(M);
    d2.reserve(M);
    for (std::size_t i = 0; i < M; ++i) {
      auto& o = outcomes[offset[l] + i];
      d.push_back(std::move(o.detail));
      d2.push_back(std::move(o.detail_sq));
      norms.push_back(o.detail_l1);
      stats.work += o.work;
    }
    const auto m1 = sample_moments(d);
    const auto m2 = sample_moments(d2);
    accumulate(mean, m1.mean);
    accumulate(var, m1.variance);
    accumulate(mean2, m2.mean);
    accumulate(var2, m2.variance);

    stats.detail_l1_mean = pairwise_sum(norms) / static_cast<double>(M);
    if (M > 1) {
      std::vector<double> dev(M);
      for (std::size_t i = 0; i < M; ++i) {
        const double e = norms[i] - stats.detail_l1_mean;
        dev[i] = e * e;
      }
      stats.detail_l1_var = pairwise_sum(dev) / static_cast<double>(M - 1);
    }
    total += stats.work;
    result.diagnostics.levels.push_back(stats);
  }

  for (auto& v : var) v = std::sqrt(v);
  for (auto& v : var2) v = std::sqrt(v);
  const auto provenance = provenance_line(model, cfg, seed) + " K=" + std::to_string(h.K()) +
                          " L=" + std::to_string(h.L()) + " m_base=" + std::to_string(h.m_base());
  auto m_samples = sample_allocation(h);
  result.mean = EstimatorResult{SolutionField(finest, std::move(mean), T),
                                SolutionField(finest, std::move(var), T), m_samples, total,
                                provenance};
  result.second_moment = EstimatorResult{SolutionField(finest, std::move(mean2), T),
                                         SolutionField(finest, std::move(var2), T), m_samples,
                                         total, provenance};
  return result;
}

std::pair<EstimatorResult, LevelDiagnostics> mlmc_estimate(const RandomDataModel& model,
                                                           const LevelHierarchy& h,
                                                           const SchemeConfig& cfg, double T,
                                                           std::uint64_t seed,
                                                           std::size_t workers) {
  auto r = mlmc_run(model, h, cfg, T, seed, workers);
  return {std::move(r.mean), std::move(r.diagnostics)};
}

EstimatorResult mlmc_second_moment(const RandomDataModel& model, const LevelHierarchy& h,
                                   const SchemeConfig& cfg, double T, std::uint64_t seed,
                                   std::size_t workers) {
  return mlmc_run(model, h, cfg, T, seed, workers).second_moment;
}

VarianceAssembly assemble_variance(const MlmcResult& result) {
  const auto& m1 = result.mean.mean;
  const auto& m2 = result.second_moment.mean;
  VarianceAssembly out{SolutionField(m1.grid(), std::vector<double>(m1.size()), m1.time())};
  out.eps = 10.0 * std::numeric_limits<double>::epsilon() * linf_norm(m2);
  auto& v = out.variance.mutable_values();
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double raw = m2[j] - m1[j] * m1[j];
    out.most_negative = std::min(out.most_negative, raw);
    if (raw < -out.eps) ++out.flagged;
    v[j] = std::max(raw, 0.0);
  }
  return out;
}

void write_level_diagnostics(std::ostream& os, const LevelDiagnostics& diag, bool timing) {
  os << "level,dx,M,detail_l1_mean,detail_l1_var,work_cell_updates,wall_seconds\n";
  os << std::setprecision(17);
  for (const auto& s : diag.levels) {
    os << s.level << ',' << s.dx << ',' << s.samples << ',' << s.detail_l1_mean << ','
       << s.detail_l1_var << ',' << s.work.cell_updates << ','
       << (timing ? s.work.wall_seconds : 0.0) << '\n';
  }
}

}  // namespace degmlmc
