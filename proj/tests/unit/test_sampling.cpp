#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "degmlmc/sampling.hpp"

using namespace degmlmc;

using Block = std::array<std::uint32_t, 4>;

TEST_CASE("Philox4x32-10 known answers") {
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are pure functions of their triple") {
  auto a = stream_for(42, 3, 17);
  auto b = stream_for(42, 3, 17);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_unit() == b.next_unit());
  CHECK(a.blocks_used() == b.blocks_used());
  CHECK(a.master_seed() == 42);
  CHECK(a.level() == 3);
  CHECK(a.sample_index() == 17);

  auto c = stream_for(42, 3, 18);
  auto d = stream_for(42, 4, 17);
  auto e = stream_for(43, 3, 17);
  auto f = stream_for(42, 3, 17);
  const double x = f.next_unit();
  CHECK(c.next_unit() != x);
  CHECK(d.next_unit() != x);
  CHECK(e.next_unit() != x);
}

TEST_CASE("neighbouring streams pass a two-sample KS test") {
  const std::size_t n = 10'000;
  // Critical value at alpha = 0.01 for n = m = 10^4: 1.62762 * sqrt(2/n).
  const double critical = 0.02302;
  for (std::uint32_t i : {0u, 1u, 1000u}) {
    auto s1 = stream_for(2024, 1, i);
    auto s2 = stream_for(2024, 1, i + 1);
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = s1.next_unit();
    for (auto& v : y) v = s2.next_unit();
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    double D = 0.0;
    std::size_t ix = 0, iy = 0;
    while (ix < n && iy < n) {
      const double t = std::min(x[ix], y[iy]);
      while (ix < n && x[ix] <= t) ++ix;
      while (iy < n && y[iy] <= t) ++iy;
      D = std::max(D, std::abs(static_cast<double>(ix) - static_cast<double>(iy)) / n);
    }
    CAPTURE(i);
    CHECK(D < critical);
  }
}

TEST_CASE("uniform variates") {
  const double a = 1.5, b = 2.5;
  const std::size_t n = 100'000;
  auto st = stream_for(7, 0, 0);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += uniform(st, a, b);
  const double sigma = (b - a) / std::sqrt(12.0);
  CHECK(std::abs(sum / n - 0.5 * (a + b)) <= 3.0 * sigma / std::sqrt(static_cast<double>(n)));

  auto s2 = stream_for(8, 0, 0);
  for (std::size_t i = 0; i < 1'000'000; ++i) {
    const double u = uniform(s2, -0.3, 0.05);
    if (!(u >= -0.3 && u < 0.05)) {
      FAIL("variate outside support: " << u);
      break;
    }
  }
  CHECK_THROWS_AS(uniform(s2, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(uniform(s2, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("chi-square uniformity over 100 bins") {
  const std::size_t n = 1'000'000;
  const std::size_t bins = 100;
  // 0.99 quantile of chi-square with 99 degrees of freedom.
  const double critical = 134.6416;
  auto st = stream_for(11, 2, 5);
  std::vector<std::size_t> count(bins, 0);
  for (std::size_t i = 0; i < n; ++i) ++count[static_cast<std::size_t>(uniform(st, 0.0, 1.0) * bins)];
  const double expected = static_cast<double>(n) / bins;
  double chi2 = 0.0;
  for (auto c : count) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 < critical);
}

TEST_CASE("mix_seed") {
  CHECK(mix_seed(1, 2, 3) == mix_seed(1, 2, 3));
  CHECK(mix_seed(1, 2, 3) != mix_seed(1, 3, 2));
  CHECK(mix_seed(1, 2, 3) != mix_seed(2, 2, 3));
}
