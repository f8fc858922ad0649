#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "degmlmc/grid.hpp"
#include "degmlmc/models.hpp"

using namespace degmlmc;

TEST_CASE("GridSpec validates and refines") {
  CHECK_THROWS_AS(GridSpec(1.0, 1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(0.0, 1.0, 1), std::invalid_argument);
  const GridSpec g(0.0, 2.0, 4);
  CHECK(g.dx() == 0.5);
  CHECK(g.center(0) == 0.25);
  const auto f = g.refined(4);
  CHECK(f.n_cells() == 16);
  CHECK(f.same_domain(g));
  CHECK_FALSE(f == g);
}

TEST_CASE("cell_average examples") {
  SUBCASE("constant") {
    const auto u = cell_average([](double) { return 0.3; }, GridSpec(-1.0, 3.0, 7));
    for (double v : u.values()) CHECK(v == doctest::Approx(0.3).epsilon(1e-15));
  }
  SUBCASE("step data on four cells") {
    const auto u = cell_average(initial_data(InitialDataKind::riemann_u02), GridSpec(0.0, 2.0, 4));
    // Cell [0,0.5): 0.1*0.1 + 0.4*0.8 over 0.5 = 0.66.
    CHECK(u[0] == doctest::Approx(0.66).epsilon(1e-14));
    CHECK(u[1] == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(u[2] == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(u[3] == doctest::Approx(0.1).epsilon(1e-14));
  }
  SUBCASE("sine data on two cells") {
    // [0, 0.5] is one period of sin(4 pi x); each cell holds half of it.
    const auto u = cell_average(initial_data(InitialDataKind::sine), GridSpec(0.0, 0.5, 2));
    CHECK(u[0] == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-6));
    CHECK(u[1] == doctest::Approx(-2.0 / std::numbers::pi).epsilon(1e-6));
    CHECK(std::abs(u[0] + u[1]) < 1e-15);
  }
  SUBCASE("cells spanning full periods") {
    const auto u = cell_average([](double x) { return std::sin(4 * std::numbers::pi * x); },
                                GridSpec(0.0, 1.0, 2));
    CHECK(std::abs(u[0]) < 1e-15);
    CHECK(std::abs(u[1]) < 1e-15);
  }
  SUBCASE("non-finite data is rejected") {
    CHECK_THROWS_AS(cell_average([](double) { return NAN; }, GridSpec(0.0, 1.0, 4)),
                    std::invalid_argument);
  }
  SUBCASE("L-infinity contraction on smooth data") {
    const auto u = cell_average(initial_data(InitialDataKind::sine), GridSpec(0.0, 0.5, 37));
    CHECK(linf_norm(u) <= 1.0);
  }
}

TEST_CASE("norms") {
  const GridSpec g2(0.0, 1.0, 2);
  CHECK(l1_norm(SolutionField(GridSpec(0.0, 2.0, 5), std::vector<double>(5, 1.0))) ==
        doctest::Approx(2.0));
  CHECK(l1_norm(SolutionField(g2, {1.0, -1.0})) == 1.0);
  const auto u02 = cell_average(initial_data(InitialDataKind::riemann_u02), GridSpec(0.0, 2.0, 4));
  CHECK(l1_norm(u02) == doctest::Approx(0.83).epsilon(1e-14));
  CHECK(linf_norm(SolutionField(g2, {0.8, 0.8})) == 0.8);
  CHECK(linf_norm(SolutionField(g2, {0.0, 0.0})) == 0.0);
  CHECK(linf_norm(cell_average(initial_data(InitialDataKind::riemann_u02), GridSpec(0, 2, 20))) ==
        doctest::Approx(0.8));
  CHECK(bv_seminorm(SolutionField(g2, {0.3, 0.3})) == 0.0);
  CHECK(bv_seminorm(cell_average(initial_data(InitialDataKind::riemann_u02), GridSpec(0, 2, 20))) ==
        doctest::Approx(1.4));
  CHECK(bv_seminorm(SolutionField(GridSpec(0.0, 7.0, 4), {0.0, 1.0, 0.0, 1.0})) == 4.0);
}

TEST_CASE("prolong, restrict and distance") {
  const GridSpec coarse(0.0, 1.0, 2);
  const GridSpec fine(0.0, 1.0, 4);
  const SolutionField u(coarse, {0.25, -2.0});
  const auto p = prolong(u, fine);
  CHECK(p.values() == std::vector<double>{0.25, 0.25, -2.0, -2.0});
  CHECK(restrict_average(p, coarse).values() == u.values());
  CHECK(bv_seminorm(p) == bv_seminorm(u));
  CHECK(l1_norm(p) == l1_norm(u));
  CHECK(linf_norm(p) == linf_norm(u));
  CHECK_THROWS_AS(prolong(u, GridSpec(0.0, 1.0, 3)), std::invalid_argument);
  CHECK_THROWS_AS(prolong(u, GridSpec(0.0, 2.0, 4)), std::invalid_argument);

  CHECK(l1_distance(u, u) == 0.0);
  CHECK(l1_distance(SolutionField(coarse, {1, 1}), SolutionField(coarse, {0, 0})) == 1.0);
  CHECK(l1_distance(SolutionField(coarse, {1, 0}), SolutionField(fine, {1, 1, 0, 0})) == 0.0);
  CHECK_THROWS_AS(l1_distance(u, SolutionField(GridSpec(0.0, 1.0, 3), {0, 0, 0})),
                  std::invalid_argument);

  // Triangle inequality on the common refinement.
  const SolutionField v(fine, {0.1, -0.3, 0.7, 0.2});
  CHECK(l1_distance(u, v) <= l1_norm(u) + l1_norm(v));
  CHECK(nesting_ratio(coarse, fine) == 2);
}

TEST_CASE("periodic_shift moves data and breakpoints") {
  const auto u0 = initial_data(InitialDataKind::riemann_u02);
  const auto v0 = periodic_shift(u0, 0.25);
  CHECK(v0(0.3) == 0.1);
  CHECK(v0(0.4) == 0.8);
  CHECK(v0(1.2) == 0.8);
  CHECK(v0(1.3) == 0.1);
  const auto a = cell_average(v0, GridSpec(0.0, 2.0, 8));
  // Exact averages: 0.8 on [0.35, 1.25), 0.1 elsewhere.
  CHECK(a[1] == doctest::Approx((0.15 * 0.8 + 0.1 * 0.1) / 0.25).epsilon(1e-14));
  CHECK(a[4] == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(a[5] == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("field dump round trip") {
  const GridSpec g(0.0, 2.0, 3);
  const SolutionField u(g, {0.1, 1.0 / 3.0, std::nextafter(0.8, 1.0)}, 0.3);
  const SolutionField s(g, {0.0, 1e-17, 2.5}, 0.3);
  std::stringstream ss;
  const std::vector<std::string> extra{"seed=7"};
  write_field(ss, u, &s, extra);
  const auto dump = read_field(ss);
  CHECK(dump.value.values() == u.values());
  CHECK(dump.std == s.values());
  CHECK(dump.value.time() == 0.3);
  CHECK(dump.value.grid() == g);
  bool found = false;
  for (const auto& h : dump.header) found = found || h.find("seed=7") != std::string::npos;
  CHECK(found);

  std::stringstream two;
  write_field(two, u);
  CHECK(read_field(two).std.empty());
}
