#pragma once

#include <optional>

#include "lambdach/quantum_model.hpp"
#include "lambdach/spin_algebra.hpp"

namespace lambdach {

/// Response-probability ranges [a1, b1] (particle 1) and [a2, b2] (particle 2).
struct Bounds {
  double a1 = 0.0;
  double b1 = 1.0;
  double a2 = 0.0;
  double b2 = 1.0;

  /// Both sides [(1 - |alpha|)/2, (1 + |alpha|)/2].
  static Bounds symmetric(double alpha);

  /// Throws ParameterError unless 0 <= a_i <= b_i <= 1.
  void validate() const;
};

/// The four measurement directions: n1, n1' on the Lambda side and n2, n2'
/// on the anti-Lambda side.
struct CHSettings {
  UnitVector3 n1;
  UnitVector3 n1p;
  UnitVector3 n2;
  UnitVector3 n2p;

  /// Coplanar family in the xz-plane with n1, n2, n1', n2' at polar angles
  /// 0, theta, 2 theta, 3 theta. Then theta_12 = theta_1'2 = theta_1'2' = theta
  /// and theta_12' = 3 theta.
  static CHSettings coplanar(double theta);

  bool operator==(const CHSettings&) const = default;
};

/// The six probabilities entering the CH combination.
struct ProbabilityTable {
  double p_12 = 0.0;    // P(n1, n2)
  double p_12p = 0.0;   // P(n1, n2')
  double p_1p2 = 0.0;   // P(n1', n2)
  double p_1p2p = 0.0;  // P(n1', n2')
  double p_1p = 0.0;    // P(n1')
  double p_2 = 0.0;     // P(n2)
};

/// P(n1,n2) - P(n1,n2') + P(n1',n2) + P(n1',n2') - (a2+b2) P(n1')
///   - (a1+b1) P(n2) + a1 b2 + b1 a2.
///
/// Local realism bounds this by 0. Inputs are used as given; nothing is
/// clamped or rescaled. Throws ParameterError for entries outside [0, 1].
double ch_functional(const ProbabilityTable& table, const Bounds& bounds);

/// Pointwise form x1 y1 - x1 y2 + x2 y1 + x2 y2 - (a2+b2) x2 - (a1+b1) y1
/// + a1 b2 + b1 a2, with x in [a1, b1] and y in [a2, b2]. Non-positive on
/// the whole box; throws ParameterError for inputs outside it.
double scalar_ch(double x1, double x2, double y1, double y2, const Bounds& bounds);

/// alpha^2 [ (3 cos theta - cos 3 theta)/4 - 1/2 ], the CH value of the
/// singlet along the coplanar family.
double coplanar_lhs(double theta, double alpha);

/// Closed-form alpha^2 (sqrt(2)/2 - 1/2), attained at theta = pi/4.
double coplanar_max(double alpha);

/// Table of singlet predictions from the closed forms (1 + alpha^2 n.m)/4
/// and marginals 1/2.
ProbabilityTable quantum_table(const CHSettings& settings, double alpha);

/// Same table computed by traces against an explicit state.
ProbabilityTable quantum_table(const CHSettings& settings, const BipartiteSpinState& rho,
                               const DecayParams& params);

struct ViolationSearchResult {
  CHSettings settings;
  double value = 0.0;
  long evaluations = 0;
};

/// Maximize the singlet CH value over all four directions.
///
/// Rotations are factored out by fixing n1 = +z and n1' in the xz-plane,
/// leaving five angles. For every n1' on the coarse grid, n2 and n2' are
/// each scanned over a (theta, phi) grid; because the CH combination is a
/// sum of a term in n2 and a term in n2' once the Lambda-side directions are
/// fixed, the two scans together give the exact grid optimum. The best grid
/// point is then polished by cyclic golden-section line searches in each
/// angle until a sweep gains less than refine_tol.
///
/// Deterministic: ties on the grid resolve to the lowest grid index, and the
/// result does not depend on `threads`.
ViolationSearchResult maximize_violation(double alpha, double grid_step, double refine_tol,
                                         unsigned threads = 0);

struct AngleInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Interval of theta in (0, pi/2) on which coplanar_lhs(theta, alpha) > bound.
/// Edges are located by bisection to 1e-10 rad. Returns nullopt when the
/// curve never exceeds the bound. Throws ParameterError for bound < 0.
std::optional<AngleInterval> violation_region(double alpha, double bound);

}  // namespace lambdach
