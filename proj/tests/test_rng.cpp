#include <cmath>
#include <set>

#include "doctest.h"
#include "lambdach/rng.hpp"

using namespace lambdach;

TEST_CASE("mix64 matches the SplitMix64 reference sequence") {
  // First three outputs of SplitMix64 seeded with 0.
  constexpr std::uint64_t gamma = 0x9E3779B97F4A7C15;
  CHECK(mix64(gamma) == 0xE220A8397B1DCDAF);
  CHECK(mix64(2 * gamma) == 0x6E789E6AA1B965F4);
  CHECK(mix64(3 * gamma) == 0x06C45D188009454F);
}

TEST_CASE("streams are reproducible and distinct") {
  StreamRng a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  std::set<std::uint64_t> firsts;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    firsts.insert(x);
    CHECK(x != c());
    CHECK(x != d());
  }
  CHECK(firsts.size() == 100);
  CHECK(a.draws() == 100);
}

TEST_CASE("variate moments") {
  StreamRng rng(1, 0);
  const int n = 1'000'000;
  double su = 0, su2 = 0, se = 0;
  Vec3 sd;
  bool open = true;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    open = open && u > 0.0 && u < 1.0;
    su += u;
    su2 += u * u;
    se += rng.exponential();
    const auto dir = rng.direction();
    CHECK_UNARY(std::abs(dir.vec().norm() - 1.0) <= 1e-12);
    sd = sd + dir.vec();
  }
  CHECK(open);
  CHECK(std::abs(su / n - 0.5) < 4 * std::sqrt(1.0 / 12 / n));
  CHECK(std::abs(su2 / n - 1.0 / 3) < 4 * std::sqrt(4.0 / 45 / n));
  CHECK(std::abs(se / n - 1.0) < 4 / std::sqrt(n));
  for (double m : {sd.x, sd.y, sd.z}) CHECK(std::abs(m / n) < 4 * std::sqrt(1.0 / 3 / n));
}
