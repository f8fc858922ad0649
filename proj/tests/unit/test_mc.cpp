#include <doctest.h>

#include <atomic>
#include <cmath>

#include "degmlmc/error.hpp"
#include "degmlmc/mc.hpp"
#include "degmlmc/parallel.hpp"

using namespace degmlmc;

namespace {

const GridSpec kGrid(0.0, 2.0, 32);

RandomDataModel model_of(ModelKind kind) {
  RandomDataModel m;
  m.kind = kind;
  return m;
}

RunResult single_sample(const RandomDataModel& m, std::uint32_t i, std::uint64_t seed,
                        const SchemeConfig& cfg, double T) {
  auto st = stream_for(seed, 0, i);
  const auto s = draw_sample(m, st);
  return run(s.u0, s.flux, kGrid, cfg, T);
}

}  // namespace

TEST_CASE("pairwise summation and parallel_for") {
  std::vector<double> v{1e16, 1.0, -1e16, 1.0};
  CHECK(pairwise_sum(v) == pairwise_sum(v));
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  CHECK(pairwise_sum(std::vector<double>{0.5, 0.25, 0.125}) == 0.875);

  std::vector<std::atomic<int>> hits(100);
  parallel_for(100, 4, [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits) CHECK(h.load() == 1);

  try {
    parallel_for(50, 3, [](std::size_t i) {
      if (i == 7 || i == 31) throw std::runtime_error(std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "7");
  }
  CHECK(resolve_workers(3) >= 1);
}

TEST_CASE("sample moments") {
  const auto one = sample_moments({{1.0, -2.0}});
  CHECK(one.mean == std::vector<double>{1.0, -2.0});
  CHECK(one.variance == std::vector<double>{0.0, 0.0});
  const auto m = sample_moments({{1.0}, {2.0}, {3.0}, {6.0}});
  CHECK(m.mean[0] == 3.0);
  CHECK(m.variance[0] == doctest::Approx(14.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(sample_moments({}), std::invalid_argument);
}

TEST_CASE("mc_estimate with a single sample") {
  const auto m = model_of(ModelKind::random_exponent);
  const SchemeConfig cfg;
  const auto r = mc_estimate(m, kGrid, cfg, 0.1, 1, 21);
  const auto s = single_sample(m, 0, 21, cfg, 0.1);
  CHECK(r.mean.values() == s.field.values());
  for (double v : r.std.values()) CHECK(v == 0.0);
  CHECK(r.m_samples == std::vector<std::size_t>{1});
  CHECK(r.work.cell_updates == s.work.cell_updates);
  CHECK(r.provenance.find("seed=21") != std::string::npos);
  CHECK(r.mean.time() == r.std.time());

  const auto sq = mc_second_moment(m, kGrid, cfg, 0.1, 1, 21);
  for (std::size_t j = 0; j < kGrid.n_cells(); ++j) CHECK(sq.mean[j] == s.field[j] * s.field[j]);
}

TEST_CASE("mc_estimate with deterministic data") {
  const auto m = model_of(ModelKind::deterministic);
  const SchemeConfig cfg;
  const auto r = mc_estimate(m, kGrid, cfg, 0.2, 5, 1);
  const auto s = single_sample(m, 0, 1, cfg, 0.2);
  for (std::size_t j = 0; j < kGrid.n_cells(); ++j) {
    CHECK(r.mean[j] == doctest::Approx(s.field[j]).epsilon(1e-15));
    CHECK(r.std[j] <= 1e-15);
  }
  const auto sq = mc_second_moment(m, kGrid, cfg, 0.2, 5, 1);
  for (std::size_t j = 0; j < kGrid.n_cells(); ++j)
    CHECK(sq.mean[j] == doctest::Approx(s.field[j] * s.field[j]).epsilon(1e-14));
}

TEST_CASE("mc_estimate stability and moment consistency") {
  const auto m = model_of(ModelKind::random_exponent);
  SchemeConfig cfg;
  const std::size_t M = 12;
  const auto r = mc_estimate(m, kGrid, cfg, 0.3, M, 8);
  const auto sq = mc_second_moment(m, kGrid, cfg, 0.3, M, 8);
  const auto u0 = cell_average(initial_data(InitialDataKind::riemann_u02), kGrid);
  // Every sample shares the same initial data.
  CHECK(l1_norm(r.mean) <= l1_norm(u0) + 1e-10);
  CHECK(linf_norm(r.mean) <= 0.8 + 1e-12);
  for (std::size_t j = 0; j < kGrid.n_cells(); ++j) {
    CHECK(r.std[j] >= 0.0);
    const double biased = sq.mean[j] - r.mean[j] * r.mean[j];
    CHECK(r.std[j] * r.std[j] <= biased * M / (M - 1.0) + 1e-12);
    CHECK(r.std[j] * r.std[j] == doctest::Approx(biased * M / (M - 1.0)).epsilon(1e-6).scale(1e-10));
  }
  CHECK(r.work.cell_updates > 0);
}

TEST_CASE("mc_estimate is independent of the worker count") {
  for (auto kind : {SchemeKind::explicit_euler, SchemeKind::implicit_euler}) {
    SchemeConfig cfg;
    cfg.kind = kind;
    const auto m = model_of(ModelKind::random_residual);
    const auto a = mc_estimate(m, kGrid, cfg, 0.2, 9, 4, 1);
    const auto b = mc_estimate(m, kGrid, cfg, 0.2, 9, 4, 8);
    CHECK(a.mean.values() == b.mean.values());
    CHECK(a.std.values() == b.std.values());
    CHECK(a.work.cell_updates == b.work.cell_updates);
  }
}

TEST_CASE("mc_estimate reports failing samples") {
  const auto m = model_of(ModelKind::random_exponent);
  CHECK_THROWS_AS(mc_estimate(m, kGrid, SchemeConfig{}, 0.1, 0, 1), std::invalid_argument);
  try {
    mc_estimate(m, kGrid, SchemeConfig{}, -1.0, 3, 1, 2);
    FAIL("expected SampleFailure");
  } catch (const SampleFailure& e) {
    CHECK(e.level() == 0);
    CHECK(e.index() == 0);
  }
}
