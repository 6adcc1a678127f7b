#pragma once

#include <array>
#include <cmath>

#include "photon/types.hpp"

namespace photon {

/// Second-order forward-mode jet of a complex function of the four Lorentz
/// coordinates: value, gradient d_a f and Hessian d_a d_b f.
struct Jet {
  cplx v{};
  std::array<cplx, 4> d{};
  std::array<std::array<cplx, 4>, 4> h{};

  Jet() = default;
  Jet(cplx value) : v(value) {}  // NOLINT(google-explicit-constructor)
  Jet(double value) : v(value) {}  // NOLINT(google-explicit-constructor)

  /// The coordinate function x^mu evaluated at value x.
  static Jet coordinate(int mu, double x) {
    Jet j(x);
    j.d[static_cast<std::size_t>(mu)] = 1.0;
    return j;
  }

  Jet& operator+=(const Jet& o) {
    v += o.v;
    for (int a = 0; a < 4; ++a) {
      d[a] += o.d[a];
      for (int b = 0; b < 4; ++b) h[a][b] += o.h[a][b];
    }
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    v -= o.v;
    for (int a = 0; a < 4; ++a) {
      d[a] -= o.d[a];
      for (int b = 0; b < 4; ++b) h[a][b] -= o.h[a][b];
    }
    return *this;
  }
  Jet& operator*=(cplx s) {
    v *= s;
    for (int a = 0; a < 4; ++a) {
      d[a] *= s;
      for (int b = 0; b < 4; ++b) h[a][b] *= s;
    }
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    Jet r;
    r.v = v * o.v;
    for (int a = 0; a < 4; ++a) {
      r.d[a] = d[a] * o.v + v * o.d[a];
      for (int b = 0; b < 4; ++b)
        r.h[a][b] = h[a][b] * o.v + v * o.h[a][b] + d[a] * o.d[b] + o.d[a] * d[b];
    }
    return *this = r;
  }
  Jet operator-() const {
    Jet r = *this;
    r *= cplx(-1.0);
    return r;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend Jet operator*(Jet a, cplx s) { return a *= s; }
  friend Jet operator*(cplx s, Jet a) { return a *= s; }
  friend Jet operator*(Jet a, double s) { return a *= cplx(s); }
  friend Jet operator*(double s, Jet a) { return a *= cplx(s); }
  friend Jet operator+(Jet a, cplx s) { a.v += s; return a; }
  friend Jet operator+(cplx s, Jet a) { a.v += s; return a; }
  friend Jet operator-(Jet a, cplx s) { a.v -= s; return a; }
  friend Jet operator-(cplx s, const Jet& a) { return (-a) + s; }
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator/(Jet a, cplx s) { return a *= (1.0 / s); }
  friend Jet operator/(Jet a, double s) { return a *= cplx(1.0 / s); }
};

/// Applies a scalar function with derivatives f0, f1, f2 at a.v.
inline Jet chain(const Jet& a, cplx f0, cplx f1, cplx f2) {
  Jet r;
  r.v = f0;
  for (int i = 0; i < 4; ++i) {
    r.d[i] = f1 * a.d[i];
    for (int j = 0; j < 4; ++j) r.h[i][j] = f1 * a.h[i][j] + f2 * a.d[i] * a.d[j];
  }
  return r;
}

inline Jet inverse(const Jet& a) {
  const cplx u = 1.0 / a.v;
  return chain(a, u, -u * u, 2.0 * u * u * u);
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * inverse(b); }

inline Jet operator/(cplx s, const Jet& b) { return inverse(b) * s; }

/// Square root of a jet with real positive value.
inline Jet sqrt(const Jet& a) {
  const double s = std::sqrt(a.v.real());
  return chain(a, s, 0.5 / s, -0.25 / (s * s * s));
}

inline Jet exp(const Jet& a) {
  const cplx e = std::exp(a.v);
  return chain(a, e, e, e);
}

/// Integer power by repeated multiplication (n >= 0).
template <class T>
T ipow(const T& x, int n) {
  T r(1.0);
  T b = x;
  while (n > 0) {
    if (n & 1) r = r * b;
    b = b * b;
    n >>= 1;
  }
  return r;
}

inline Jet conj(const Jet& a) {
  Jet r;
  r.v = std::conj(a.v);
  for (int i = 0; i < 4; ++i) {
    r.d[i] = std::conj(a.d[i]);
    for (int j = 0; j < 4; ++j) r.h[i][j] = std::conj(a.h[i][j]);
  }
  return r;
}

/// Jet-valued covector: four component jets A_mu(x).
using CovectorJet = std::array<Jet, 4>;

inline Covector value_of(const CovectorJet& a) {
  Covector c;
  for (int i = 0; i < 4; ++i) c[i] = a[static_cast<std::size_t>(i)].v;
  return c;
}

/// F_ab = d_a A_b - d_b A_a.
inline Tensor2 exterior_derivative(const CovectorJet& a) {
  Tensor2 f{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          a[static_cast<std::size_t>(j)].d[static_cast<std::size_t>(i)] -
          a[static_cast<std::size_t>(i)].d[static_cast<std::size_t>(j)];
  return f;
}

}  // namespace photon
