#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "degmlmc/grid.hpp"
#include "degmlmc/models.hpp"
#include "degmlmc/solver.hpp"

namespace degmlmc {

/// Mean and pointwise standard deviation of a sampled field, with the
/// aggregated work of all solver runs.
struct EstimatorResult {
  SolutionField mean;
  SolutionField std;
  std::vector<std::size_t> m_samples;
  WorkCounter work;
  std::string provenance;
};

/// Sample mean (pairwise sum over the sample order divided by M) and
/// unbiased pointwise standard deviation (zero when M = 1).
struct SampleMoments {
  std::vector<double> mean;
  std::vector<double> variance;
};
SampleMoments sample_moments(const std::vector<std::vector<double>>& samples);

/// Solves sample (level, i) for i in [0, M) on `grid`, each drawn from
/// stream_for(seed, level, i). Results are indexed by sample.
std::vector<SolutionField> solve_samples(const RandomDataModel& model, const GridSpec& grid,
                                         const SchemeConfig& cfg, double T, std::size_t M,
                                         std::uint64_t seed, std::uint32_t level,
                                         std::size_t workers, WorkCounter& work);

/// Single-level MC estimate of E[u(T)] from M samples of stream level 0.
EstimatorResult mc_estimate(const RandomDataModel& model, const GridSpec& grid,
                            const SchemeConfig& cfg, double T, std::size_t M, std::uint64_t seed,
                            std::size_t workers = 1);

/// Pointwise second moment (1/M) sum u_i^2 in `mean`, sampling std of u_i^2 in `std`.
EstimatorResult mc_second_moment(const RandomDataModel& model, const GridSpec& grid,
                                 const SchemeConfig& cfg, double T, std::size_t M,
                                 std::uint64_t seed, std::size_t workers = 1);

std::string provenance_line(const RandomDataModel& model, const SchemeConfig& cfg,
                            std::uint64_t seed);

}  // namespace degmlmc
