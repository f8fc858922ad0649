#include <doctest.h>

#include <cmath>
#include <sstream>

#include "degmlmc/harness.hpp"
#include "degmlmc/quadrature.hpp"

using namespace degmlmc;

TEST_CASE("relative error") {
  const GridSpec g(0.0, 1.0, 4);
  const SolutionField ref(g, {1.0, 2.0, 3.0, 4.0});
  const std::vector<SolutionField> same{ref, ref};
  CHECK(relative_error(ref, same) == 0.0);

  // ||diff|| = 0.02 ||ref|| = 0.2.
  const SolutionField off(g, {1.2, 2.0, 3.0, 4.0});
  CHECK(relative_error(ref, std::vector<SolutionField>{off}) == doctest::Approx(2.0).epsilon(1e-14));

  // Every run at RE_k = r gives r.
  const SolutionField off2(g, {1.0, 2.0, 3.0, 3.8});
  CHECK(relative_error(ref, std::vector<SolutionField>{off, off2, off}) ==
        doctest::Approx(2.0).epsilon(1e-14));
  // Root mean square of 2 and 4.
  const SolutionField off4(g, {1.0, 2.4, 3.0, 4.0});
  CHECK(relative_error(ref, std::vector<SolutionField>{off, off4}) ==
        doctest::Approx(std::sqrt(10.0)).epsilon(1e-14));

  // Coarse runs are prolonged onto the reference grid.
  const SolutionField coarse(GridSpec(0.0, 1.0, 2), {1.5, 3.5});
  CHECK(relative_error(ref, std::vector<SolutionField>{coarse}) == doctest::Approx(20.0));

  // Scale invariance.
  const double c = -3.7;
  auto scaled = [c](const SolutionField& u) {
    auto v = u.values();
    for (auto& x : v) x *= c;
    return SolutionField(u.grid(), v);
  };
  CHECK(relative_error(scaled(ref), std::vector<SolutionField>{scaled(off), scaled(off4)}) ==
        doctest::Approx(relative_error(ref, std::vector<SolutionField>{off, off4})).epsilon(1e-14));

  CHECK_THROWS_AS(relative_error(SolutionField(g, {0, 0, 0, 0}), same), std::invalid_argument);
  CHECK_THROWS_AS(relative_error(ref, std::vector<SolutionField>{}), std::invalid_argument);
  CHECK_THROWS_AS(relative_error(ref, std::vector<SolutionField>{SolutionField(GridSpec(0, 1, 3), {1, 1, 1})}),
                  std::invalid_argument);
}

TEST_CASE("rate fit on an exact power law") {
  std::vector<double> dx, e;
  for (int L = 0; L <= 5; ++L) {
    dx.push_back(std::ldexp(0.125, -L));
    e.push_back(17.0 * std::pow(dx.back(), 2.0 / 3.0));
  }
  CHECK(std::abs(fit_log_log_slope(dx, e) - 2.0 / 3.0) < 1e-6);
}

TEST_CASE("quadrature reference") {
  const GridSpec grid(0.0, 2.0, 128);
  SchemeConfig cfg;

  RandomDataModel det;
  det.kind = ModelKind::deterministic;
  const auto q = quadrature_reference(det, grid, cfg, 0.3, 7);
  const auto s = build_sample(det, {});
  CHECK(q.values() == run(s.u0, s.flux, grid, cfg, 0.3).field.values());

  RandomDataModel ex;
  {
    // With a tight Newton tolerance the implicit solution is smooth in p.
    SchemeConfig imp;
    imp.kind = SchemeKind::implicit_euler;
    imp.newton_tol_factor = 1e-6;
    const auto q16 = quadrature_reference(ex, grid, imp, 0.3, 16);
    const auto q32 = quadrature_reference(ex, grid, imp, 0.3, 32, 4);
    CHECK(l1_distance(q16, q32) < 1e-6 * l1_norm(q32));
  }
  {
    // The explicit step count ceil(T/dt(p)) jumps with p, which caps the agreement.
    const auto q16 = quadrature_reference(ex, grid, cfg, 0.3, 16);
    const auto q32 = quadrature_reference(ex, grid, cfg, 0.3, 32, 4);
    CHECK(l1_distance(q16, q32) < 1e-4 * l1_norm(q32));
  }

  const auto r = gauss_legendre_uniform(16, 0.05, 0.35);
  const auto o = gauss_legendre_uniform(16, 0.6, 0.95);
  double w = 0.0;
  for (double a : r.weights)
    for (double b : o.weights) w += a * b;
  CHECK(w == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("experiment configuration") {
  ExperimentConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.N = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = ExperimentConfig{};
  cfg.T = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = ExperimentConfig{};
  cfg.reference = ReferenceKind::mlmc;
  cfg.L_ref = cfg.L_max;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = ExperimentConfig{};
  cfg.reference_extra_levels = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg = ExperimentConfig{};
  const auto h = make_hierarchy(cfg, 2);
  CHECK(h.finest_grid().n_cells() == 64);
  cfg.model.initial = InitialDataKind::sine;
  CHECK(make_hierarchy(cfg, 2).finest_grid().n_cells() == 16);
}

TEST_CASE("convergence study on deterministic data") {
  ExperimentConfig cfg;
  cfg.model.kind = ModelKind::deterministic;
  cfg.L_max = 3;
  cfg.N = 2;
  cfg.m_base = 1;
  cfg.timing = false;
  std::ostringstream csv;
  const auto rep = convergence_study(cfg, &csv);
  REQUIRE(rep.rows.size() == 4);

  // Every replicate is the deterministic solve, so RE is the discretization error.
  const auto ref = make_reference(cfg);
  for (const auto& row : rep.rows) {
    const auto h = make_hierarchy(cfg, row.L);
    const auto s = build_sample(cfg.model, {});
    const auto u = run(s.u0, s.flux, h.finest_grid(), cfg.scheme, cfg.T).field;
    CHECK(row.re == doctest::Approx(relative_error(ref, std::vector<SolutionField>{u})).epsilon(1e-10));
    CHECK(row.dx == h.levels().back().dx);
    CHECK(row.bv == doctest::Approx(bv_seminorm(u)).epsilon(1e-10));
    CHECK(row.linf == doctest::Approx(linf_norm(u)).epsilon(1e-12));
  }
  CHECK(rep.rate_dx >= 0.33);
  CHECK(std::isnan(rep.rate_wall));
  CHECK(std::isfinite(rep.rate_cell_updates));

  std::istringstream in(csv.str());
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "L,RE,dx_L,runtime_s,bv,linf");
  for (int i = 1; i <= 4; ++i) CHECK(lines[i].rfind(std::to_string(i - 1) + ",", 0) == 0);
  CHECK(lines[5].rfind("rate,,", 0) == 0);
}

TEST_CASE("scheme invariants hold for both schemes and models") {
  const double tol = 1e-8;
  const auto u0 = initial_data(InitialDataKind::riemann_u02);
  const auto v0 = periodic_shift(u0, 0.25);
  for (auto kind : {SchemeKind::explicit_euler, SchemeKind::implicit_euler}) {
    SchemeConfig cfg;
    cfg.kind = kind;
    cfg.newton_tol_factor = 1e-8;
    for (const auto& perm : {exponent_permeability(2.0), residual_permeability(0.2, 0.8)}) {
      const auto model = build_flux_model(perm, TwoPhaseParams{}, 0.1, 0.8);
      const auto rep = check_scheme_invariants(u0, v0, model, GridSpec(0.0, 2.0, 32), cfg, 0.3, tol);
      CAPTURE(static_cast<int>(kind));
      CAPTURE(perm.label);
      CHECK(rep.l1_stable);
      CHECK(rep.max_principle);
      CHECK(rep.bv_diminishing);
      CHECK(rep.lipschitz_in_time);
      CHECK(rep.l1_contraction);
      CHECK(rep.all());
    }
  }
}

TEST_CASE("invariant checker detects violations") {
  // Negative diffusion is anti-monotone: the step data overshoots at once.
  const auto model = FluxModel::from_functions([](double) { return 0.0; }, [](double) { return 0.0; },
                                               [](double u) { return -0.01 * u; },
                                               [](double) { return -0.01; }, 0.0, 1.0);
  SchemeConfig cfg;
  const auto u0 = initial_data(InitialDataKind::riemann_u02);
  const auto rep = check_scheme_invariants(u0, periodic_shift(u0, 0.25), model,
                                           GridSpec(0.0, 2.0, 32), cfg, 0.05, 1e-8);
  CHECK_FALSE(rep.all());
  CHECK_FALSE(rep.max_principle);
  CHECK(rep.worst_range_excess > 1e-8);
  CHECK_FALSE(rep.bv_diminishing);
}
