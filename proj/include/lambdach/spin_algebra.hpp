#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>
#include <utility>

#include "lambdach/errors.hpp"

namespace lambdach {

using Complex = std::complex<double>;

/// Tolerance used for every exact-algebra comparison in the library.
inline constexpr double kTolerance = 1e-12;

//---------------------------------------------------------------------------//
// Vectors
//---------------------------------------------------------------------------//

/// Plain real 3-vector. Used for polarization vectors (|s| <= 1) and as the
/// unchecked building block of UnitVector3.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  [[nodiscard]] double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  [[nodiscard]] double norm() const;
  [[nodiscard]] Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }

  friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
  friend Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

/// A direction on the unit sphere. The constructor rejects inputs whose
/// squared norm differs from 1 by more than kTolerance; use normalized() to
/// project an arbitrary nonzero vector onto the sphere.
class UnitVector3 {
 public:
  /// Defaults to +z.
  constexpr UnitVector3() = default;
  UnitVector3(double x, double y, double z);
  explicit UnitVector3(const Vec3& v) : UnitVector3(v.x, v.y, v.z) {}

  static UnitVector3 normalized(const Vec3& v);
  /// Polar angle theta from +z, azimuth phi from +x, both in radians.
  static UnitVector3 spherical(double theta, double phi);

  [[nodiscard]] double x() const { return v_.x; }
  [[nodiscard]] double y() const { return v_.y; }
  [[nodiscard]] double z() const { return v_.z; }
  [[nodiscard]] const Vec3& vec() const { return v_; }
  [[nodiscard]] double dot(const UnitVector3& o) const { return v_.dot(o.v_); }
  [[nodiscard]] double dot(const Vec3& o) const { return v_.dot(o); }

  UnitVector3 operator-() const;
  friend bool operator==(const UnitVector3&, const UnitVector3&) = default;

 private:
  struct Trusted {};
  UnitVector3(Trusted, const Vec3& v) : v_(v) {}

  Vec3 v_{0.0, 0.0, 1.0};
};

/// Angle between two directions in [0, pi], robust near 0 and pi.
double angle_between(const UnitVector3& a, const UnitVector3& b);

//---------------------------------------------------------------------------//
// Fixed-size complex matrices
//---------------------------------------------------------------------------//

/// Dense N x N complex matrix stored row-major on the stack.
template <std::size_t N>
struct SquareMatrix {
  std::array<Complex, N * N> data{};

  static constexpr std::size_t dim = N;

  static SquareMatrix identity() {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }
  static SquareMatrix diagonal(const std::array<double, N>& d) {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  Complex& operator()(std::size_t r, std::size_t c) { return data[r * N + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data[r * N + c]; }

  SquareMatrix& operator+=(const SquareMatrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) data[i] += o.data[i];
    return *this;
  }
  SquareMatrix& operator-=(const SquareMatrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) data[i] -= o.data[i];
    return *this;
  }
  SquareMatrix& operator*=(Complex s) {
    for (auto& v : data) v *= s;
    return *this;
  }

  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
  friend SquareMatrix operator*(Complex s, SquareMatrix a) { return a *= s; }
  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix out;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < N; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }
};

using ComplexMatrix2 = SquareMatrix<2>;
using ComplexMatrix4 = SquareMatrix<4>;

template <std::size_t N>
SquareMatrix<N> adjoint(const SquareMatrix<N>& a) {
  SquareMatrix<N> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out(i, j) = std::conj(a(j, i));
  return out;
}

template <std::size_t N>
Complex trace(const SquareMatrix<N>& a) {
  Complex t{};
  for (std::size_t i = 0; i < N; ++i) t += a(i, i);
  return t;
}

/// Largest entrywise modulus of a - b.
template <std::size_t N>
double max_abs_diff(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < N * N; ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

template <std::size_t N>
bool approx_equal(const SquareMatrix<N>& a, const SquareMatrix<N>& b, double tol = kTolerance) {
  return max_abs_diff(a, b) <= tol;
}

template <std::size_t N>
bool is_hermitian(const SquareMatrix<N>& a, double tol = kTolerance) {
  return max_abs_diff(a, adjoint(a)) <= tol;
}

// Pauli matrices in the basis {|+z>, |-z>}.
ComplexMatrix2 pauli_x();
ComplexMatrix2 pauli_y();
ComplexMatrix2 pauli_z();

/// sigma . n for a unit direction n.
ComplexMatrix2 pauli_dot(const UnitVector3& n);
/// sigma . v for an arbitrary real vector (no normalization requirement).
ComplexMatrix2 pauli_dot(const Vec3& v);

/// Kronecker product; `a` acts on the slow index (particle 1, the Lambda).
ComplexMatrix4 tensor(const ComplexMatrix2& a, const ComplexMatrix2& b);

/// Partial traces of a two-qubit operator.
ComplexMatrix2 partial_trace_second(const ComplexMatrix4& a);
ComplexMatrix2 partial_trace_first(const ComplexMatrix4& a);

/// Closed-form eigenvalues of a Hermitian 2x2 matrix, ascending.
/// Throws InvalidStateError when `a` is not Hermitian within kTolerance.
std::pair<double, double> eigenvalues_hermitian_2x2(const ComplexMatrix2& a);

/// Eigenvalues of a Hermitian 4x4 matrix, ascending. Uses cyclic Jacobi on
/// the real 8x8 embedding [[Re, -Im], [Im, Re]], whose spectrum is that of
/// `a` with every eigenvalue doubled.
std::array<double, 4> eigenvalues_hermitian_4x4(const ComplexMatrix4& a);

}  // namespace lambdach
