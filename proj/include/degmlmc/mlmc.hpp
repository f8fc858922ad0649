#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "degmlmc/mc.hpp"

namespace degmlmc {

/// Nested grids dx_l = 2^(-K l) dx0 on a fixed periodic domain, l = 0..L,
/// with M_l = ceil(m_base 2^(2K(L-l)/3)) samples (m_base at the finest level).
class LevelHierarchy {
 public:
  struct Level {
    double dx;
    GridSpec grid;
    std::size_t samples;
  };

  LevelHierarchy(double x_min, double x_max, double dx0, int K, int L, std::size_t m_base);

  int K() const { return K_; }
  int L() const { return L_; }
  double dx0() const { return dx0_; }
  std::size_t m_base() const { return m_base_; }
  const std::vector<Level>& levels() const { return levels_; }
  const GridSpec& finest_grid() const { return levels_.back().grid; }

 private:
  double dx0_;
  int K_;
  int L_;
  std::size_t m_base_;
  std::vector<Level> levels_;
};

/// M_l for l = 0..L (see LevelHierarchy).
std::vector<std::size_t> sample_allocation(int K, int L, std::size_t m_base);
std::vector<std::size_t> sample_allocation(const LevelHierarchy& h);

struct LevelStats {
  int level;
  double dx;
  std::size_t samples;
  double detail_l1_mean;  // mean of ||u_l - u_{l-1}||_L1 over the samples
  double detail_l1_var;   // unbiased sample variance of the same norms
  WorkCounter work;
};

struct LevelDiagnostics {
  std::vector<LevelStats> levels;
};

/// Everything one MLMC pass produces: first and second moment estimates
/// share the same samples.
struct MlmcResult {
  EstimatorResult mean;
  EstimatorResult second_moment;
  LevelDiagnostics diagnostics;
};

/// Runs every (level, sample) task. Each detail uses one draw from
/// stream_for(seed, l, i) solved on grid_l and grid_{l-1}.
MlmcResult mlmc_run(const RandomDataModel& model, const LevelHierarchy& h, const SchemeConfig& cfg,
                    double T, std::uint64_t seed, std::size_t workers = 1);

std::pair<EstimatorResult, LevelDiagnostics> mlmc_estimate(const RandomDataModel& model,
                                                           const LevelHierarchy& h,
                                                           const SchemeConfig& cfg, double T,
                                                           std::uint64_t seed,
                                                           std::size_t workers = 1);

EstimatorResult mlmc_second_moment(const RandomDataModel& model, const LevelHierarchy& h,
                                   const SchemeConfig& cfg, double T, std::uint64_t seed,
                                   std::size_t workers = 1);

/// Pointwise E^(2) - (E)^2. Cells below -eps, eps = 10 machine epsilon
/// times linf of the second moment, are counted as flagged; every negative
/// value is clipped to 0.
struct VarianceAssembly {
  SolutionField variance;
  std::size_t flagged = 0;
  double most_negative = 0.0;  // smallest raw value, 0 when none is negative
  double eps = 0.0;
};
VarianceAssembly assemble_variance(const MlmcResult& result);

/// CSV with header "level,dx,M,detail_l1_mean,detail_l1_var,work_cell_updates,wall_seconds".
/// With timing disabled the wall_seconds column is written as 0.
void write_level_diagnostics(std::ostream& os, const LevelDiagnostics& diag, bool timing = true);

}  // namespace degmlmc
