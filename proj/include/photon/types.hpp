#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace photon {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

/// Minkowski metric eta = diag(+1,-1,-1,-1); it is its own inverse.
inline constexpr std::array<double, 4> metric_diag{1.0, -1.0, -1.0, -1.0};

/// Orientation of the volume element: epsilon_{0123} = +1 in Lorentz
/// coordinates. With this choice epsilon_abcd = -(i/p0) dx0^p^eps+^eps- holds
/// for eps+(z) = (dx + i dy)/sqrt2, and the cylindrical and spherical mode
/// formulas are helicity eigenfields with eigenvalue s.
inline constexpr double volume_orientation = 1.0;

// Error categories. Dyads and harmonics are singular on coordinate axes.
class DegenerateAxisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidLabelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite-difference stencil does not fit inside the sampled grid.
class StencilError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Complex covector with Lorentz components A_mu (mu = t,x,y,z).
struct Covector {
  std::array<cplx, 4> c{};

  cplx& operator[](int mu) { return c[static_cast<std::size_t>(mu)]; }
  const cplx& operator[](int mu) const { return c[static_cast<std::size_t>(mu)]; }

  Covector& operator+=(const Covector& o) {
    for (int i = 0; i < 4; ++i) (*this)[i] += o[i];
    return *this;
  }
  Covector& operator-=(const Covector& o) {
    for (int i = 0; i < 4; ++i) (*this)[i] -= o[i];
    return *this;
  }
  Covector& operator*=(cplx s) {
    for (auto& v : c) v *= s;
    return *this;
  }
  friend Covector operator+(Covector a, const Covector& b) { return a += b; }
  friend Covector operator-(Covector a, const Covector& b) { return a -= b; }
  friend Covector operator*(cplx s, Covector a) { return a *= s; }
  friend Covector operator*(Covector a, cplx s) { return a *= s; }
  friend Covector operator*(double s, Covector a) { return a *= cplx(s); }
};

/// Component-wise complex conjugate.
inline Covector conj(const Covector& a) {
  Covector r;
  for (int i = 0; i < 4; ++i) r[i] = std::conj(a[i]);
  return r;
}

/// Bilinear Minkowski contraction eta^{ab} a_a b_b (no conjugation).
inline cplx contract(const Covector& a, const Covector& b) {
  cplx s = 0.0;
  for (int i = 0; i < 4; ++i) s += metric_diag[static_cast<std::size_t>(i)] * a[i] * b[i];
  return s;
}

/// Euclidean norm of the four complex components.
inline double norm(const Covector& a) {
  double s = 0.0;
  for (const auto& v : a.c) s += std::norm(v);
  return std::sqrt(s);
}

/// Rank-2 covariant tensor T_ab, Lorentz components.
using Tensor2 = std::array<std::array<cplx, 4>, 4>;

inline double norm(const Tensor2& t) {
  double s = 0.0;
  for (const auto& row : t)
    for (const auto& v : row) s += std::norm(v);
  return std::sqrt(s);
}

inline Tensor2 operator-(const Tensor2& a, const Tensor2& b) {
  Tensor2 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = a[i][j] - b[i][j];
  return r;
}

inline Tensor2 operator*(cplx s, const Tensor2& a) {
  Tensor2 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = s * a[i][j];
  return r;
}

/// Totally antisymmetric symbol with epsilon_{0123} = volume_orientation.
double levi_civita(int a, int b, int c, int d);

}  // namespace photon
