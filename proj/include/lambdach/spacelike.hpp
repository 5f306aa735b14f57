#pragma once

#include <cstdint>
#include <optional>

#include "lambdach/lhv_models.hpp"

namespace lambdach {

/// eta_c -> Lambda anti-Lambda hyperon speed used throughout.
inline constexpr double kDefaultBeta = 0.664;

/// Hyperon speed in the parent rest frame, either given directly or derived
/// from two-body kinematics.
struct KinematicConfig {
  double beta = kDefaultBeta;
  std::optional<double> m_parent;
  std::optional<double> m_daughter;

  static KinematicConfig from_masses(double m_parent, double m_daughter);
  /// Throws ParameterError unless 0 <= beta < 1.
  void validate() const;
};

/// Light-cone ratio k = (1 + beta) / (1 - beta); infinite at beta = 1.
double light_cone_ratio(double beta);

/// Whether decays at lab distances x1 and x2 (units of the mean decay length)
/// are space-like separated: 1/k <= x1/x2 <= k, boundary inclusive.
/// beta = 1 makes every pair with x1, x2 > 0 space-like.
bool is_spacelike(double x1, double x2, double beta);

/// Fraction of space-like pairs for independent unit-mean exponential decay
/// lengths. The double integral evaluates to (k-1)/(k+1), which is beta.
double spacelike_fraction_analytic(double beta);

Estimate spacelike_fraction_mc(double beta, std::uint64_t n, std::uint64_t seed, unsigned threads = 0);

/// Largest value of the CH combination reachable by local models when the
/// two decays can communicate: alpha^2 / 2.
double timelike_max(double alpha);

/// Local-realist bound for a mixture with a space-like fraction beta:
/// beta * 0 + (1 - beta) * alpha^2 / 2.
double mixed_bound(double alpha, double beta);

/// Speed above which the singlet maximum still beats mixed_bound: 2 - sqrt(2).
double critical_beta();

/// Daughter speed in a symmetric two-body decay, sqrt(1 - 4 m_d^2 / m_p^2).
double beta_from_masses(double m_parent, double m_daughter);

}  // namespace lambdach
