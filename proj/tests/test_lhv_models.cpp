#include <numbers>

#include "doctest.h"
#include "lambdach/lhv_models.hpp"
#include "test_support.hpp"

using namespace lambdach;

namespace {

constexpr double kAlpha = 0.75;

bool within_sigma(const Estimate& e, double expected, double k = 3.0) {
  return std::abs(e.value - expected) <= k * e.std_error;
}

}  // namespace

TEST_CASE("linear spin model joint and marginal") {
  const UnitVector3 z;
  const LhvSampling cfg{200'000, 7, 0};

  // (1 + a l.n1)(1 - a l.n2)/4 averaged over the sphere: (1 - a^2 n1.n2/3)/4.
  const LinearSpinModel anti(kAlpha, -1);
  const auto j = lhv_joint(anti, z, z, cfg);
  CHECK(within_sigma(j, 0.25 * (1 - kAlpha * kAlpha / 3)));
  CHECK(0.25 * (1 - kAlpha * kAlpha / 3) == doctest::Approx(0.203125));

  const LinearSpinModel model(kAlpha);
  std::mt19937_64 gen(3);
  for (int i = 0; i < 10; ++i) {
    const auto n1 = testing::random_direction(gen);
    const auto n2 = testing::random_direction(gen);
    CHECK(within_sigma(lhv_joint(model, n1, n2, cfg), 0.25 * (1 + kAlpha * kAlpha * n1.dot(n2) / 3)));
    CHECK(within_sigma(lhv_marginal(model, n1, cfg), 0.5));
    CHECK(within_sigma(lhv_marginal(model, n2, cfg, Side::antilambda), 0.5));
  }
}

TEST_CASE("constant model is exact") {
  const ConstantModel model(kAlpha);
  const LhvSampling cfg{5000, 1, 0};
  const auto j = lhv_joint(model, UnitVector3(), UnitVector3(1, 0, 0), cfg);
  CHECK(j.value == 0.25);
  CHECK(j.std_error == 0.0);
  CHECK(lhv_marginal(model, UnitVector3(), cfg).value == 0.5);
  CHECK_THROWS_AS(ConstantModel(kAlpha, 0.95), ParameterError);
}

TEST_CASE("clipped deterministic model against the hemisphere-overlap oracle") {
  const ClippedDeterministicModel model(kAlpha);
  const Bounds b = model.bounds();
  const LhvSampling cfg{200'000, 11, 0};
  std::mt19937_64 gen(12);
  for (int i = 0; i < 10; ++i) {
    const auto n1 = testing::random_direction(gen);
    const auto n2 = i == 0 ? n1 : testing::random_direction(gen);
    // Fraction of lambda with equal signs on both axes is 1 - gamma/pi.
    const double same = 1.0 - angle_between(n1, n2) / std::numbers::pi;
    const double expected = same * (b.a1 * b.a1 + b.b1 * b.b1) / 2 + (1 - same) * b.a1 * b.b1;
    CHECK(within_sigma(lhv_joint(model, n1, n2, cfg), expected));
    CHECK(within_sigma(lhv_marginal(model, n1, cfg), (b.a1 + b.b1) / 2));
  }
}

TEST_CASE("verify_ch reference values") {
  const auto settings = CHSettings::coplanar(std::numbers::pi / 4);
  const LhvSampling cfg{200'000, 5, 0};

  const auto linear = verify_ch(LinearSpinModel(kAlpha), settings, cfg);
  const double expected = kAlpha * kAlpha * (std::sqrt(2.0) / 6 - 0.5);
  CHECK(expected == doctest::Approx(-0.14867).epsilon(1e-4));
  CHECK(std::abs(linear.value - expected) <= 3 * linear.std_error + 1e-12);
  CHECK(linear.value <= 0.0);

  const auto constant = verify_ch(ConstantModel(kAlpha), settings, cfg);
  CHECK(constant.value == doctest::Approx(-kAlpha * kAlpha / 2).epsilon(1e-12));
}

TEST_CASE("bundled models satisfy the generalized CH bound") {
  std::mt19937_64 gen(99);
  for (const auto& name : bundled_lhv_models()) {
    const auto model = make_lhv_model(name, {});
    for (std::uint64_t seed : {1u, 2u}) {
      for (int i = 0; i < 15; ++i) {
        const CHSettings s{testing::random_direction(gen), testing::random_direction(gen),
                           testing::random_direction(gen), testing::random_direction(gen)};
        const auto check = verify_ch(*model, s, {20'000, seed, 0});
        CHECK_MESSAGE(check.value <= 3 * check.std_error, name);
      }
    }
  }
}

TEST_CASE("joint estimate is symmetric for symmetric models") {
  std::mt19937_64 gen(4);
  const LhvSampling cfg{100'000, 21, 0};
  for (const char* name : {"linear_spin", "clipped"}) {
    const auto model = make_lhv_model(name, {});
    const auto n1 = testing::random_direction(gen);
    const auto n2 = testing::random_direction(gen);
    const auto a = lhv_joint(*model, n1, n2, cfg);
    const auto b = lhv_joint(*model, n2, n1, cfg);
    CHECK(std::abs(a.value - b.value) <= 3 * std::hypot(a.std_error, b.std_error));
  }
}

TEST_CASE("standard error scales like 1/sqrt(samples)") {
  const LinearSpinModel model(kAlpha);
  const auto n1 = UnitVector3::spherical(0.3, 0.2);
  const auto n2 = UnitVector3::spherical(1.1, 2.0);
  const auto small = lhv_joint(model, n1, n2, {10'000, 3, 0});
  const auto large = lhv_joint(model, n1, n2, {100'000, 3, 0});
  const double ratio = small.std_error / large.std_error;
  CHECK(ratio > std::sqrt(10.0) * 0.8);
  CHECK(ratio < std::sqrt(10.0) * 1.2);
}

TEST_CASE("weighted hidden-variable density") {
  // Density proportional to 1 + l_z: E[l_z] = 1/3.
  const Bounds b = Bounds::symmetric(kAlpha);
  auto r = [](const UnitVector3& l, const UnitVector3& n) { return 0.5 * (1 + kAlpha * l.dot(n)); };
  const FunctionModel model("tilted", b, r, r, [](const UnitVector3& l) { return 0.5 * (1 + l.z()); }, 1.0);
  const auto m = lhv_marginal(model, UnitVector3(), {200'000, 8, 0});
  CHECK(within_sigma(m, 0.5 * (1 + kAlpha / 3)));
}

TEST_CASE("model contract and parameter errors") {
  const Bounds b = Bounds::symmetric(kAlpha);
  const FunctionModel bad("bad", b, [](const UnitVector3&, const UnitVector3&) { return 0.95; },
                          [](const UnitVector3&, const UnitVector3&) { return 0.5; });
  CHECK_THROWS_AS(lhv_joint(bad, UnitVector3(), UnitVector3(), {2000, 1, 0}), ModelContractError);
  CHECK_THROWS_AS(lhv_joint(LinearSpinModel(kAlpha), UnitVector3(), UnitVector3(), {999, 1, 0}), ParameterError);
  CHECK_THROWS_AS(make_lhv_model("nope", {}), ParameterError);
  CHECK_THROWS_AS(make_lhv_model("clipped", {{"p", 0.5}}), ParameterError);
  CHECK_THROWS_AS(make_lhv_model("linear_spin", {{"correlation", 0.5}}), ParameterError);
  CHECK(make_lhv_model("constant", {{"alpha", 0.5}, {"p", 0.6}})->bounds().b1 == 0.75);
}

TEST_CASE("sampling is independent of the thread count") {
  const LinearSpinModel model(kAlpha);
  const auto s = CHSettings::coplanar(0.7);
  const auto one = verify_ch(model, s, {150'000, 17, 1});
  const auto many = verify_ch(model, s, {150'000, 17, 4});
  CHECK(one.value == many.value);
  CHECK(one.std_error == many.std_error);
}
