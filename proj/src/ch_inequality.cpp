#include "lambdach/ch_inequality.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "lambdach/parallel.hpp"
#include "lambdach/scalar_search.hpp"

namespace lambdach {

namespace {

constexpr double kPi = std::numbers::pi;

void check_probability(double p, const char* name) {
  if (!(p >= -kTolerance && p <= 1.0 + kTolerance)) {
    throw ParameterError(std::string("probability ") + name + " = " + std::to_string(p) + " is outside [0, 1]");
  }
}

void check_in_range(double v, double lo, double hi, const char* name) {
  if (!(v >= lo - kTolerance && v <= hi + kTolerance)) {
    throw ParameterError(std::string("scalar_ch: ") + name + " = " + std::to_string(v) + " is outside [" +
                         std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

}  // namespace

Bounds Bounds::symmetric(double alpha) {
  if (!(std::abs(alpha) <= 1.0)) throw ParameterError("Bounds::symmetric: |alpha| must be <= 1");
  const double a = 0.5 * (1.0 - std::abs(alpha));
  const double b = 0.5 * (1.0 + std::abs(alpha));
  return {a, b, a, b};
}

void Bounds::validate() const {
  auto ok = [](double a, double b) { return 0.0 <= a && a <= b && b <= 1.0; };
  if (!ok(a1, b1) || !ok(a2, b2)) throw ParameterError("bounds must satisfy 0 <= a_i <= b_i <= 1");
}

CHSettings CHSettings::coplanar(double theta) {
  auto at = [](double angle) { return UnitVector3::spherical(angle, 0.0); };
  return {at(0.0), at(2.0 * theta), at(theta), at(3.0 * theta)};
}

double ch_functional(const ProbabilityTable& t, const Bounds& b) {
  b.validate();
  check_probability(t.p_12, "P(n1,n2)");
  check_probability(t.p_12p, "P(n1,n2')");
  check_probability(t.p_1p2, "P(n1',n2)");
  check_probability(t.p_1p2p, "P(n1',n2')");
  check_probability(t.p_1p, "P(n1')");
  check_probability(t.p_2, "P(n2)");
  return t.p_12 - t.p_12p + t.p_1p2 + t.p_1p2p - (b.a2 + b.b2) * t.p_1p - (b.a1 + b.b1) * t.p_2 + b.a1 * b.b2 +
         b.b1 * b.a2;
}

double scalar_ch(double x1, double x2, double y1, double y2, const Bounds& b) {
  b.validate();
  check_in_range(x1, b.a1, b.b1, "x1");
  check_in_range(x2, b.a1, b.b1, "x2");
  check_in_range(y1, b.a2, b.b2, "y1");
  check_in_range(y2, b.a2, b.b2, "y2");
  return x1 * y1 - x1 * y2 + x2 * y1 + x2 * y2 - (b.a2 + b.b2) * x2 - (b.a1 + b.b1) * y1 + b.a1 * b.b2 +
         b.b1 * b.a2;
}

double coplanar_lhs(double theta, double alpha) {
  if (!(std::abs(alpha) <= 1.0)) throw ParameterError("coplanar_lhs: |alpha| must be <= 1");
  return alpha * alpha * ((3.0 * std::cos(theta) - std::cos(3.0 * theta)) / 4.0 - 0.5);
}

double coplanar_max(double alpha) { return alpha * alpha * (std::numbers::sqrt2 / 2.0 - 0.5); }

ProbabilityTable quantum_table(const CHSettings& s, double alpha) {
  if (!(std::abs(alpha) <= 1.0)) throw ParameterError("quantum_table: |alpha| must be <= 1");
  return {singlet_joint_closed_form(s.n1, s.n2, alpha),
          singlet_joint_closed_form(s.n1, s.n2p, alpha),
          singlet_joint_closed_form(s.n1p, s.n2, alpha),
          singlet_joint_closed_form(s.n1p, s.n2p, alpha),
          0.5,
          0.5};
}

ProbabilityTable quantum_table(const CHSettings& s, const BipartiteSpinState& rho, const DecayParams& params) {
  return {joint_probability(rho, s.n1, s.n2, params),
          joint_probability(rho, s.n1, s.n2p, params),
          joint_probability(rho, s.n1p, s.n2, params),
          joint_probability(rho, s.n1p, s.n2p, params),
          marginal_probability(rho, s.n1p, params, Side::lambda),
          marginal_probability(rho, s.n2, params, Side::antilambda)};
}

namespace {

// Search coordinates: polar angle of n1' in the xz-plane, then (theta, phi)
// for n2 and for n2'.
using Angles = std::array<double, 5>;

CHSettings settings_from(const Angles& x) {
  return {UnitVector3{}, UnitVector3::spherical(x[0], 0.0), UnitVector3::spherical(x[1], x[2]),
          UnitVector3::spherical(x[3], x[4])};
}

struct GridBest {
  double value = -1.0e300;
  Angles x{};
};

}  // namespace

ViolationSearchResult maximize_violation(double alpha, double grid_step, double refine_tol, unsigned threads) {
  if (!(std::abs(alpha) <= 1.0)) throw ParameterError("maximize_violation: |alpha| must be <= 1");
  if (!(grid_step > 0.0 && grid_step <= kPi / 8.0 + 1e-15)) {
    throw ParameterError("maximize_violation: grid step must lie in (0, pi/8]");
  }
  if (!(refine_tol > 0.0)) throw ParameterError("maximize_violation: refine tolerance must be positive");

  const Bounds bounds = Bounds::symmetric(alpha);
  auto objective = [&](const Angles& x) { return ch_functional(quantum_table(settings_from(x), alpha), bounds); };

  const auto n_polar = static_cast<std::size_t>(std::floor(kPi / grid_step + 1e-9)) + 1;
  const auto n_azimuth = static_cast<std::size_t>(std::ceil(2.0 * kPi / grid_step - 1e-9));

  auto chunk_best = [&](std::size_t i) {
    GridBest best;
    Angles x{static_cast<double>(i) * grid_step, 0.0, 0.0, 0.0, 0.0};
    // The n2 and n2' contributions separate; scan each with the other held.
    for (std::size_t slot : {std::size_t{1}, std::size_t{3}}) {
      Angles best_x = x;
      double best_v = -1.0e300;
      for (std::size_t j = 0; j < n_polar; ++j) {
        for (std::size_t k = 0; k < n_azimuth; ++k) {
          Angles trial = x;
          trial[slot] = static_cast<double>(j) * grid_step;
          trial[slot + 1] = static_cast<double>(k) * grid_step;
          const double v = objective(trial);
          if (v > best_v) {
            best_v = v;
            best_x = trial;
          }
        }
      }
      x = best_x;
      best.value = best_v;
    }
    best.x = x;
    return best;
  };

  const auto per_chunk = map_chunks<GridBest>(n_polar, threads, chunk_best);
  GridBest best;
  for (const auto& c : per_chunk) {
    if (c.value > best.value) best = c;
  }
  long evaluations = static_cast<long>(n_polar * 2 * n_polar * n_azimuth);

  Angles x = best.x;
  double value = best.value;
  const double half_width = grid_step;
  for (int sweep = 0; sweep < 2000; ++sweep) {
    const double start = value;
    for (std::size_t c = 0; c < x.size(); ++c) {
      auto along = [&](double t) {
        Angles trial = x;
        trial[c] = t;
        ++evaluations;
        return objective(trial);
      };
      const auto opt = golden_section_maximize(along, x[c] - half_width, x[c] + half_width, 1e-12);
      evaluations += 2;
      if (opt.value > value) {
        x[c] = opt.x;
        value = opt.value;
      }
    }
    if (value - start < 1e-3 * refine_tol) break;
  }

  return {settings_from(x), value, evaluations};
}

std::optional<AngleInterval> violation_region(double alpha, double bound) {
  if (!(bound >= 0.0)) throw ParameterError("violation_region: bound must be non-negative");
  constexpr double kTol = 1e-10;
  constexpr int kMaxIter = 200;
  auto excess = [&](double theta) { return coplanar_lhs(theta, alpha) - bound; };
  auto violated = [&](double theta) { return excess(theta) > 0.0; };

  const double lo = 0.0;
  const double hi = kPi / 2.0;
  const auto peak = golden_section_maximize(excess, lo, hi, kTol, kMaxIter);
  if (!(peak.value > 0.0)) return std::nullopt;

  return AngleInterval{violated(lo) ? lo : bisect_boundary(violated, lo, peak.x, kTol, kMaxIter),
                       violated(hi) ? hi : bisect_boundary(violated, peak.x, hi, kTol, kMaxIter)};
}

}  // namespace lambdach
