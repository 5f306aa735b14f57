#include "lambdach/spin_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lambdach {

double Vec3::norm() const { return std::sqrt(dot(*this)); }

UnitVector3::UnitVector3(double x, double y, double z) : v_{x, y, z} {
  const double n2 = v_.dot(v_);
  if (!(std::abs(n2 - 1.0) <= kTolerance)) {
    throw NormalizationError("direction is not a unit vector (|n|^2 = " + std::to_string(n2) + ")");
  }
}

UnitVector3 UnitVector3::normalized(const Vec3& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw NormalizationError("cannot normalize a zero or non-finite vector");
  return {Trusted{}, (1.0 / n) * v};
}

UnitVector3 UnitVector3::spherical(double theta, double phi) {
  const double st = std::sin(theta);
  return normalized({st * std::cos(phi), st * std::sin(phi), std::cos(theta)});
}

UnitVector3 UnitVector3::operator-() const { return {Trusted{}, -v_}; }

double angle_between(const UnitVector3& a, const UnitVector3& b) {
  return std::atan2(a.vec().cross(b.vec()).norm(), a.dot(b));
}

ComplexMatrix2 pauli_x() {
  ComplexMatrix2 m;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

ComplexMatrix2 pauli_y() {
  ComplexMatrix2 m;
  m(0, 1) = Complex{0.0, -1.0};
  m(1, 0) = Complex{0.0, 1.0};
  return m;
}

ComplexMatrix2 pauli_z() { return ComplexMatrix2::diagonal({1.0, -1.0}); }

ComplexMatrix2 pauli_dot(const Vec3& v) {
  ComplexMatrix2 m;
  m(0, 0) = v.z;
  m(1, 1) = -v.z;
  m(0, 1) = Complex{v.x, -v.y};
  m(1, 0) = Complex{v.x, v.y};
  return m;
}

ComplexMatrix2 pauli_dot(const UnitVector3& n) { return pauli_dot(n.vec()); }

ComplexMatrix4 tensor(const ComplexMatrix2& a, const ComplexMatrix2& b) {
  ComplexMatrix4 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

ComplexMatrix2 partial_trace_second(const ComplexMatrix4& a) {
  ComplexMatrix2 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) out(i, j) = a(2 * i, 2 * j) + a(2 * i + 1, 2 * j + 1);
  return out;
}

ComplexMatrix2 partial_trace_first(const ComplexMatrix4& a) {
  ComplexMatrix2 out;
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t l = 0; l < 2; ++l) out(k, l) = a(k, l) + a(2 + k, 2 + l);
  return out;
}

std::pair<double, double> eigenvalues_hermitian_2x2(const ComplexMatrix2& a) {
  if (!is_hermitian(a)) throw InvalidStateError("eigenvalues_hermitian_2x2: matrix is not Hermitian");
  const double p = a(0, 0).real();
  const double q = a(1, 1).real();
  const double half_tr = 0.5 * (p + q);
  const double half_gap = std::hypot(0.5 * (p - q), std::abs(a(0, 1)));
  return {half_tr - half_gap, half_tr + half_gap};
}

std::array<double, 4> eigenvalues_hermitian_4x4(const ComplexMatrix4& a) {
  if (!is_hermitian(a)) throw InvalidStateError("eigenvalues_hermitian_4x4: matrix is not Hermitian");
  constexpr std::size_t n = 8;
  std::array<std::array<double, n>, n> m{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      m[i][j] = a(i, j).real();
      m[i + 4][j + 4] = a(i, j).real();
      m[i][j + 4] = -a(i, j).imag();
      m[i + 4][j] = a(i, j).imag();
    }

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += m[p][q] * m[p][q];
    if (off < 1e-30) break;

    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (m[p][q] == 0.0) continue;
        const double theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double mkp = m[k][p];
          const double mkq = m[k][q];
          m[k][p] = c * mkp - s * mkq;
          m[k][q] = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double mpk = m[p][k];
          const double mqk = m[q][k];
          m[p][k] = c * mpk - s * mqk;
          m[q][k] = s * mpk + c * mqk;
        }
      }
  }

  std::array<double, n> diag{};
  for (std::size_t i = 0; i < n; ++i) diag[i] = m[i][i];
  std::sort(diag.begin(), diag.end());
  // Each eigenvalue appears twice in the real embedding.
  return {diag[0], diag[2], diag[4], diag[6]};
}

}  // namespace lambdach
