#include <doctest.h>

#include <cmath>
#include <random>

#include "degmlmc/flux.hpp"
#include "degmlmc/models.hpp"

using namespace degmlmc;

namespace {

FluxModel linear_advection(double a, double b) {
  return FluxModel::from_functions([](double u) { return u; }, [](double) { return 1.0; },
                                   [](double) { return 0.0; }, [](double) { return 0.0; }, a, b);
}

FluxModel burgers() {
  return FluxModel::from_functions([](double u) { return 0.5 * u * u; }, [](double u) { return u; },
                                   [](double) { return 0.0; }, [](double) { return 0.0; }, -1.0,
                                   1.0);
}

FluxModel no_flux(double a, double b) {
  return FluxModel::from_functions([](double) { return 0.0; }, [](double) { return 0.0; },
                                   [](double) { return 0.0; }, [](double) { return 0.0; }, a, b);
}

FluxModel two_phase(double p = 2.0) {
  return build_flux_model(exponent_permeability(p), TwoPhaseParams{}, 0.1, 0.8);
}

}  // namespace

TEST_CASE("FluxModel bounds and validation") {
  const auto m = burgers();
  CHECK(m.lip_f == doctest::Approx(1.0));
  CHECK(m.lip_a == 0.0);
  CHECK_NOTHROW(m.validate());
  auto bad = FluxModel::from_functions([](double u) { return u; }, [](double) { return 1.0; },
                                       [](double u) { return -u; }, [](double) { return -1.0; }, 0, 1);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("Engquist-Osher examples") {
  for (auto mode : {FluxEvaluation::tabulated, FluxEvaluation::direct}) {
    CAPTURE(static_cast<int>(mode));
    const auto up = engquist_osher(linear_advection(0.0, 1.0), mode);
    CHECK(up(0.3, 0.9) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(up(0.7, 0.2) == doctest::Approx(0.7).epsilon(1e-12));
    const auto eo = engquist_osher(burgers(), mode);
    CHECK(eo(1.0, -1.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(eo(-1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(eo(0.4, 0.4) == doctest::Approx(0.08).epsilon(1e-10));
    CHECK(flux_eval(eo, 0.2, 0.2) == doctest::Approx(0.02).epsilon(1e-10));
  }
  const auto tp = two_phase();
  const auto F = engquist_osher(tp);
  CHECK(F(0.37, 0.37) == doctest::Approx(tp.f(0.37)).epsilon(1e-10));
}

TEST_CASE("Engquist-Osher is monotone and splits f'") {
  const auto tp = two_phase(1.7);
  const auto F = engquist_osher(tp);
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> U(tp.m_minus, tp.m_plus);
  const double h = 1e-6;
  for (int k = 0; k < 50; ++k) {
    const double u = U(gen);
    const double v = U(gen);
    CHECK((F(u + h, v) - F(u - h, v)) / (2 * h) >= -1e-8);
    CHECK((F(u, v + h) - F(u, v - h)) / (2 * h) <= 1e-8);
  }
  for (double u : probe_grid(tp.m_minus + h, tp.m_plus - h)) {
    const double d1 = (F.f1(u + h) - F.f1(u - h)) / (2 * h);
    const double d2 = (F.f2(u + h) - F.f2(u - h)) / (2 * h);
    CHECK(d1 + d2 == doctest::Approx(tp.df(u)).epsilon(1e-6));
  }
  // Fractional flow is nondecreasing, so EO reduces to upwind.
  for (double u : probe_grid(tp.m_minus, tp.m_plus, 23))
    for (double v : probe_grid(tp.m_minus, tp.m_plus, 17))
      CHECK(F(u, v) == doctest::Approx(tp.f(u)).epsilon(1e-10));
}

TEST_CASE("tabulated and direct Engquist-Osher agree for a non-monotone flux") {
  const auto m = FluxModel::from_functions([](double u) { return u * u * (1 - u); },
                                           [](double u) { return 2 * u - 3 * u * u; },
                                           [](double) { return 0.0; }, [](double) { return 0.0; },
                                           -0.5, 1.0);
  const auto t = engquist_osher(m, FluxEvaluation::tabulated);
  const auto d = engquist_osher(m, FluxEvaluation::direct);
  CHECK(t.tabulated());
  CHECK_FALSE(d.tabulated());
  for (double u : probe_grid(-0.5, 1.0, 31))
    for (double v : probe_grid(-0.5, 1.0, 7)) CHECK(std::abs(t(u, v) - d(u, v)) < 1e-8);
}

TEST_CASE("Lax-Friedrichs examples") {
  const auto F0 = lax_friedrichs(no_flux(-1.0, 1.0), 1.0);
  CHECK(F0(1.0, -1.0) == 1.0);
  CHECK(F0(0.3, 0.1) == doctest::Approx(0.1));
  const auto F1 = lax_friedrichs(linear_advection(0.0, 1.0), 0.5);
  CHECK(F1(1.0, 0.0) == 1.5);
  for (double u : {0.0, 0.25, 0.9}) CHECK(F1(u, u) == doctest::Approx(u));
  CHECK_THROWS_AS(lax_friedrichs(linear_advection(0.0, 1.0), 1.5), std::invalid_argument);
  CHECK_THROWS_AS(lax_friedrichs(linear_advection(0.0, 1.0), 0.0), std::invalid_argument);
}
