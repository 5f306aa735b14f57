#pragma once

#include "lambdach/spin_algebra.hpp"

namespace lambdach {

/// Standard value of the Lambda -> p pi- decay asymmetry parameter.
inline constexpr double kDefaultAlpha = 0.750;

/// Weak-decay asymmetry parameters of the Lambda (alpha_minus) and the
/// anti-Lambda (alpha_plus). Both must satisfy |alpha| <= 1.
class DecayParams {
 public:
  DecayParams(double alpha_minus, double alpha_plus);

  /// CP-conserving pair alpha_minus = alpha, alpha_plus = -alpha.
  static DecayParams cp_conserving(double alpha = kDefaultAlpha);

  [[nodiscard]] double alpha_minus() const { return alpha_minus_; }
  [[nodiscard]] double alpha_plus() const { return alpha_plus_; }
  /// Common magnitude used for the response bounds.
  [[nodiscard]] double alpha() const { return alpha_minus_; }
  [[nodiscard]] bool is_cp_conserving() const { return alpha_plus_ == -alpha_minus_; }

  /// Lower and upper single-decay probability, (1 -/+ |alpha|)/2.
  [[nodiscard]] double lower_bound() const;
  [[nodiscard]] double upper_bound() const;

 private:
  double alpha_minus_;
  double alpha_plus_;
};

/// Asymmetry parameter from the S- and P-wave amplitudes,
/// (S* P + S P*) / (|S|^2 + |P|^2). Throws ParameterError if both vanish.
double alpha_from_amplitudes(Complex s_wave, Complex p_wave);

/// POVM element for "proton emitted along n": (1 + alpha sigma.n) / 2.
ComplexMatrix2 effect_plus(const UnitVector3& n, double alpha);
/// Complement (1 - alpha sigma.n) / 2, i.e. emission along -n.
ComplexMatrix2 effect_minus(const UnitVector3& n, double alpha);

/// Probability (1 + alpha s.n)/2 for a hyperon of polarization s, |s| <= 1.
double single_decay_probability(const Vec3& polarization, const UnitVector3& n, double alpha);

/// Two-qubit density matrix, validated on construction (Hermitian, unit
/// trace, positive semidefinite, all within kTolerance).
class BipartiteSpinState {
 public:
  explicit BipartiteSpinState(const ComplexMatrix4& rho);

  /// |psi><psi| for a (not necessarily normalized) state vector.
  static BipartiteSpinState pure(const std::array<Complex, 4>& psi);

  [[nodiscard]] const ComplexMatrix4& matrix() const { return rho_; }

 private:
  ComplexMatrix4 rho_;
};

/// (|+-> - |-+>)/sqrt(2) in the basis |s_Lambda s_antiLambda>.
BipartiteSpinState singlet_state();

enum class Side { lambda, antilambda };

/// Tr[rho (E+(n1; alpha_minus) x E+(n2; alpha_plus))].
double joint_probability(const BipartiteSpinState& rho, const UnitVector3& n1, const UnitVector3& n2,
                         const DecayParams& params);

/// One-sided probability: Tr[rho (E+ x 1)] for the Lambda side,
/// Tr[rho (1 x E+)] for the anti-Lambda side.
double marginal_probability(const BipartiteSpinState& rho, const UnitVector3& n, const DecayParams& params,
                            Side side = Side::lambda);

/// Closed form for the singlet with CP-conserving parameters:
/// (1 + alpha^2 n1.n2) / 4.
double singlet_joint_closed_form(const UnitVector3& n1, const UnitVector3& n2, double alpha);

}  // namespace lambdach
