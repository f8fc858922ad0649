#include "degmlmc/mc.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include "degmlmc/error.hpp"
#include "degmlmc/parallel.hpp"
#include "degmlmc/sampling.hpp"

namespace degmlmc {

SampleMoments sample_moments(const std::vector<std::vector<double>>& samples) {
  if (samples.empty()) throw std::invalid_argument("sample_moments: no samples");
  const auto M = samples.size();
  const auto n = samples.front().size();
  std::vector<const std::vector<double>*> parts;
  parts.reserve(M);
  for (const auto& s : samples) parts.push_back(&s);
  SampleMoments out;
  out.mean = pairwise_sum(parts);
  for (auto& v : out.mean) v /= static_cast<double>(M);
  out.variance.assign(n, 0.0);
  if (M > 1) {
    std::vector<std::vector<double>> sq(M, std::vector<double>(n));
    for (std::size_t i = 0; i < M; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double d = samples[i][j] - out.mean[j];
        sq[i][j] = d * d;
      }
    std::vector<const std::vector<double>*> sq_parts;
    for (const auto& s : sq) sq_parts.push_back(&s);
    out.variance = pairwise_sum(sq_parts);
    for (auto& v : out.variance) v /= static_cast<double>(M - 1);
  }
  return out;
}

std::vector<SolutionField> solve_samples(const RandomDataModel& model, const GridSpec& grid,
                                         const SchemeConfig& cfg, double T, std::size_t M,
                                         std::uint64_t seed, std::uint32_t level,
                                         std::size_t workers, WorkCounter& work) {
  if (M < 1) throw std::invalid_argument("sample count must be at least 1");
  std::vector<std::optional<SolutionField>> results(M);
  std::vector<WorkCounter> works(M);
  parallel_for(M, workers, [&](std::size_t i) {
    try {
      auto stream = stream_for(seed, level, static_cast<std::uint32_t>(i));
      const auto sample = draw_sample(model, stream);
      auto res = run(sample.u0, sample.flux, grid, cfg, T);
      results[i] = std::move(res.field);
      works[i] = res.work;
    } catch (const std::exception& e) {
      throw SampleFailure(static_cast<int>(level), i, e.what());
    }
  });
  std::vector<SolutionField> fields;
  fields.reserve(M);
  for (std::size_t i = 0; i < M; ++i) {
    fields.push_back(std::move(*results[i]));
    work += works[i];
  }
  return fields;
}

std::string provenance_line(const RandomDataModel& model, const SchemeConfig& cfg,
                            std::uint64_t seed) {
  return model.describe() + " " + cfg.describe() + " seed=" + std::to_string(seed);
}

namespace {

EstimatorResult estimate_from(const std::vector<std::vector<double>>& samples, const GridSpec& grid,
                              double T, WorkCounter work, std::string provenance) {
  const auto mom = sample_moments(samples);
  std::vector<double> sd(mom.variance.size());
  for (std::size_t j = 0; j < sd.size(); ++j) sd[j] = std::sqrt(mom.variance[j]);
  return EstimatorResult{SolutionField(grid, mom.mean, T), SolutionField(grid, std::move(sd), T),
                         {samples.size()}, work, std::move(provenance)};
}

}  // namespace

EstimatorResult mc_estimate(const RandomDataModel& model, const GridSpec& grid,
                            const SchemeConfig& cfg, double T, std::size_t M, std::uint64_t seed,
                            std::size_t workers) {
  WorkCounter work;
  const auto fields = solve_samples(model, grid, cfg, T, M, seed, 0, workers, work);
  std::vector<std::vector<double>> samples;
  samples.reserve(M);
  for (const auto& f : fields) samples.push_back(f.values());
  return estimate_from(samples, grid, T, work, provenance_line(model, cfg, seed));
}

EstimatorResult mc_second_moment(const RandomDataModel& model, const GridSpec& grid,
                                 const SchemeConfig& cfg, double T, std::size_t M,
                                 std::uint64_t seed, std::size_t workers) {
  WorkCounter work;
  const auto fields = solve_samples(model, grid, cfg, T, M, seed, 0, workers, work);
  std::vector<std::vector<double>> samples;
  samples.reserve(M);
  for (const auto& f : fields) {
    auto v = f.values();
    for (auto& x : v) x *= x;
    samples.push_back(std::move(v));
  }
  return estimate_from(samples, grid, T, work, provenance_line(model, cfg, seed));
}

}  // namespace degmlmc
