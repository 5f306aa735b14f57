#include <cmath>

#include "doctest.h"
#include "lambdach/ch_inequality.hpp"
#include "lambdach/spacelike.hpp"

using namespace lambdach;

TEST_CASE("space-like classification") {
  CHECK(is_spacelike(1.3, 1.3, 0.2));
  CHECK(is_spacelike(2.0, 2.0, 0.0));
  CHECK_FALSE(is_spacelike(2.0, 2.0 + 1e-9, 0.0));
  CHECK(light_cone_ratio(0.664) == doctest::Approx(1.664 / 0.336));
  CHECK_FALSE(is_spacelike(5.0, 1.0, 0.664));
  CHECK(is_spacelike(4.9, 1.0, 0.664));
  CHECK(is_spacelike(1.0, 1e6, 1.0));
  // Boundary ratio is inclusive.
  CHECK(is_spacelike(3.0, 1.0, 0.5));
  CHECK(is_spacelike(1.0, 3.0, 0.5));

  for (double x1 : {0.1, 0.7, 2.5, 9.0})
    for (double x2 : {0.05, 1.0, 4.0})
      for (double beta : {0.1, 0.5, 0.664, 0.95}) CHECK(is_spacelike(x1, x2, beta) == is_spacelike(x2, x1, beta));

  CHECK_THROWS_AS(is_spacelike(0.0, 1.0, 0.5), ParameterError);
  CHECK_THROWS_AS(is_spacelike(1.0, 1.0, 1.5), ParameterError);
}

TEST_CASE("space-like fraction equals beta") {
  for (double beta : {0.0, 0.2, 0.5, 0.664, 0.9}) {
    CHECK(spacelike_fraction_analytic(beta) == beta);
    if (beta > 0) {
      const double k = light_cone_ratio(beta);
      CHECK(std::abs((k - 1) / (k + 1) - beta) < 1e-12);
    }

    // Quadrature oracle: integrate exp(-x2) (exp(-x2/k) - exp(-k x2)) on [0, 60].
    const double k = beta > 0 ? light_cone_ratio(beta) : 1.0;
    const int n = 2000000;
    const double h = 60.0 / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x2 = (i + 0.5) * h;
      sum += std::exp(-x2) * (std::exp(-x2 / k) - std::exp(-k * x2));
    }
    CHECK(std::abs(sum * h - beta) < 1e-8);
  }
}

TEST_CASE("Monte Carlo space-like fraction") {
  for (double beta : {0.2, 0.5, 0.664, 0.9}) {
    const auto est = spacelike_fraction_mc(beta, 1'000'000, 12345);
    CHECK(std::abs(est.value - beta) <= 3 * est.std_error);
  }
  const auto zero = spacelike_fraction_mc(0.0, 10'000, 1);
  CHECK(zero.value == 0.0);
  CHECK(spacelike_fraction_mc(0.5, 200'000, 9, 1).value == spacelike_fraction_mc(0.5, 200'000, 9, 3).value);
}

TEST_CASE("bounds with time-like contamination") {
  CHECK(timelike_max(0.75) == 0.28125);
  CHECK(timelike_max(0.0) == 0.0);
  CHECK(timelike_max(1.0) == 0.5);
  CHECK(mixed_bound(0.75, 0.664) == doctest::Approx(0.0945).epsilon(1e-12));
  CHECK(mixed_bound(0.75, 1.0) == 0.0);
  CHECK(mixed_bound(0.75, 0.0) == 0.28125);
  CHECK(critical_beta() == doctest::Approx(0.5857864376269049).epsilon(1e-15));
  for (int i = 0; i <= 100; ++i) {
    const double alpha = i / 100.0;
    CHECK(std::abs(mixed_bound(alpha, critical_beta()) - coplanar_max(alpha)) < 1e-12);
  }
  // Above the critical speed the quantum maximum clears the mixed bound.
  CHECK(mixed_bound(0.75, 0.664) < coplanar_max(0.75));
  CHECK(mixed_bound(0.75, 0.5) > coplanar_max(0.75));
}

TEST_CASE("two-body kinematics") {
  CHECK(std::abs(beta_from_masses(2983.9, 1115.683) - 0.664) < 1e-3);
  CHECK(beta_from_masses(2.0 * 1115.683 + 1e-6, 1115.683) < 1e-3);
  CHECK_THROWS_AS(beta_from_masses(2000.0, 1115.683), ParameterError);
  CHECK_THROWS_AS(beta_from_masses(-1.0, 1.0), ParameterError);

  const auto k = KinematicConfig::from_masses(2983.9, 1115.683);
  CHECK(k.beta == beta_from_masses(2983.9, 1115.683));
  CHECK_NOTHROW(k.validate());
  CHECK_THROWS_AS((KinematicConfig{1.0}).validate(), ParameterError);
}
