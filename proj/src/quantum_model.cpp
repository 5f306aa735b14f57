#include "lambdach/quantum_model.hpp"

#include <cmath>
#include <string>

namespace lambdach {

namespace {

void check_alpha(double alpha, const char* what) {
  if (!(std::abs(alpha) <= 1.0)) {
    throw ParameterError(std::string(what) + ": decay parameter must satisfy |alpha| <= 1, got " +
                         std::to_string(alpha));
  }
}

}  // namespace

DecayParams::DecayParams(double alpha_minus, double alpha_plus)
    : alpha_minus_(alpha_minus), alpha_plus_(alpha_plus) {
  check_alpha(alpha_minus, "alpha_minus");
  check_alpha(alpha_plus, "alpha_plus");
}

DecayParams DecayParams::cp_conserving(double alpha) { return {alpha, -alpha}; }

double DecayParams::lower_bound() const { return 0.5 * (1.0 - std::abs(alpha_minus_)); }
double DecayParams::upper_bound() const { return 0.5 * (1.0 + std::abs(alpha_minus_)); }

double alpha_from_amplitudes(Complex s_wave, Complex p_wave) {
  const double norm = std::norm(s_wave) + std::norm(p_wave);
  if (!(norm > 0.0)) throw ParameterError("alpha_from_amplitudes: S and P amplitudes both vanish");
  return 2.0 * (std::conj(s_wave) * p_wave).real() / norm;
}

ComplexMatrix2 effect_plus(const UnitVector3& n, double alpha) {
  check_alpha(alpha, "effect_plus");
  return 0.5 * (ComplexMatrix2::identity() + Complex{alpha} * pauli_dot(n));
}

ComplexMatrix2 effect_minus(const UnitVector3& n, double alpha) {
  check_alpha(alpha, "effect_minus");
  return 0.5 * (ComplexMatrix2::identity() - Complex{alpha} * pauli_dot(n));
}

double single_decay_probability(const Vec3& polarization, const UnitVector3& n, double alpha) {
  check_alpha(alpha, "single_decay_probability");
  if (polarization.dot(polarization) > 1.0 + kTolerance) {
    throw ParameterError("single_decay_probability: unphysical polarization |s| > 1");
  }
  return 0.5 * (1.0 + alpha * n.dot(polarization));
}

BipartiteSpinState::BipartiteSpinState(const ComplexMatrix4& rho) : rho_(rho) {
  if (!is_hermitian(rho_)) throw InvalidStateError("density matrix is not Hermitian");
  const Complex tr = trace(rho_);
  if (std::abs(tr - 1.0) > kTolerance) throw InvalidStateError("density matrix does not have unit trace");
  const auto ev = eigenvalues_hermitian_4x4(rho_);
  if (ev[0] < -kTolerance) throw InvalidStateError("density matrix is not positive semidefinite");
}

BipartiteSpinState BipartiteSpinState::pure(const std::array<Complex, 4>& psi) {
  double norm = 0.0;
  for (const auto& c : psi) norm += std::norm(c);
  if (!(norm > 0.0)) throw InvalidStateError("pure state vector is zero");
  ComplexMatrix4 rho;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) rho(i, j) = psi[i] * std::conj(psi[j]) / norm;
  return BipartiteSpinState(rho);
}

BipartiteSpinState singlet_state() {
  const double h = 1.0 / std::sqrt(2.0);
  // Basis order |++>, |+->, |-+>, |-->.
  return BipartiteSpinState::pure({Complex{0.0}, Complex{h}, Complex{-h}, Complex{0.0}});
}

double joint_probability(const BipartiteSpinState& rho, const UnitVector3& n1, const UnitVector3& n2,
                         const DecayParams& params) {
  const ComplexMatrix4 effect =
      tensor(effect_plus(n1, params.alpha_minus()), effect_plus(n2, params.alpha_plus()));
  return trace(rho.matrix() * effect).real();
}

double marginal_probability(const BipartiteSpinState& rho, const UnitVector3& n, const DecayParams& params,
                            Side side) {
  const ComplexMatrix4 effect = side == Side::lambda
                                    ? tensor(effect_plus(n, params.alpha_minus()), ComplexMatrix2::identity())
                                    : tensor(ComplexMatrix2::identity(), effect_plus(n, params.alpha_plus()));
  return trace(rho.matrix() * effect).real();
}

double singlet_joint_closed_form(const UnitVector3& n1, const UnitVector3& n2, double alpha) {
  return 0.25 * (1.0 + alpha * alpha * n1.dot(n2));
}

}  // namespace lambdach
