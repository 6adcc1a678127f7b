#pragma once

#include <cmath>
#include <vector>

#include "photon/bessel.hpp"

namespace photon {

/// Complex value tagged with its spin weight n.
struct SpinWeightedValue {
  cplx value{};
  int spin_weight = 0;
};

/// Label of the cylindrical harmonic nZ_{alpha m} = J_{m+n}(alpha rho) e^{i m phi}.
struct CylHarmonicLabel {
  int n = 0;
  double alpha = 0.0;
  int m = 0;

  void validate() const;
};

/// Label of the spin-weighted spherical harmonic nY_lm.
struct SphHarmonicLabel {
  int n = 0;
  int l = 0;
  int m = 0;

  void validate() const;
};

SpinWeightedValue sw_cyl_harmonic(const CylHarmonicLabel& label, double rho, double phi);

/// Condon-Shortley based spin-weighted harmonic. Exactly zero for l < |n|.
/// At the poles a spin-weighted harmonic whose value depends on the approach
/// direction raises DegenerateAxisError; otherwise the continuous limit is returned.
SpinWeightedValue sw_sph_harmonic(const SphHarmonicLabel& label, double theta, double phi);

/// nY_lm from half-angle trigonometric values and e^{i m phi}, usable with any
/// scalar type that supports ring arithmetic (complex numbers or jets).
/// Normalization and sign follow
///   nY_lm = (-1)^m sqrt[(l+m)!(l-m)!(2l+1) / (4 pi (l+n)!(l-n)!)]
///           sum_r C(l-n, r) C(l+n, r+n-m) (-1)^(l-r-n) sin^(2l-k)(th/2) cos^k(th/2) e^{i m phi}
/// with k = 2r + n - m.
double sw_sph_prefactor(int n, int l, int m);

template <class T>
T sw_sph_from_half_angles(int n, int l, int m, const T& sin_half, const T& cos_half, const T& e_imphi) {
  T sum(0.0);
  if (l < std::abs(n) || std::abs(m) > l) return sum;
  auto binom = [](int a, int b) {
    if (b < 0 || b > a) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  for (int r = 0; r <= l - n; ++r) {
    const int k = 2 * r + n - m;
    if (k < 0 || k > 2 * l) continue;
    const double c = binom(l - n, r) * binom(l + n, r + n - m);
    if (c == 0.0) continue;
    const double sign = ((l - r - n) % 2 == 0) ? 1.0 : -1.0;
    sum = sum + ipow(sin_half, 2 * l - k) * ipow(cos_half, k) * cplx(sign * c);
  }
  return sum * e_imphi * cplx(sw_sph_prefactor(n, l, m));
}

/// Raised or lowered label with its multiplicative ladder factor.
template <class Label>
struct LadderResult {
  Label label;
  double factor = 0.0;
};

LadderResult<CylHarmonicLabel> eth_analytic(const CylHarmonicLabel& label);
LadderResult<SphHarmonicLabel> eth_analytic(const SphHarmonicLabel& label);
LadderResult<CylHarmonicLabel> ethbar_analytic(const CylHarmonicLabel& label);
LadderResult<SphHarmonicLabel> ethbar_analytic(const SphHarmonicLabel& label);

/// Eigenvalue of ethbar(eth(.)): -alpha^2 or -(l-n)(l+n+1).
double ethbar_eth_eigencheck(const CylHarmonicLabel& label);
double ethbar_eth_eigencheck(const SphHarmonicLabel& label);

enum class HarmonicKind { cylindrical, spherical };

/// Spin-weighted function sampled on a product grid: uniform nodes in the
/// radial-like coordinate (rho or theta) times n_phi uniform nodes in [0, 2pi).
struct HarmonicGrid {
  HarmonicKind kind = HarmonicKind::cylindrical;
  int spin_weight = 0;
  std::vector<double> u;  // rho or theta nodes, uniformly spaced
  int n_phi = 0;
  std::vector<cplx> values;  // values[i * n_phi + k]

  double phi(int k) const { return 2.0 * pi * k / n_phi; }
  cplx& at(int i, int k) { return values[static_cast<std::size_t>(i) * n_phi + k]; }
  const cplx& at(int i, int k) const { return values[static_cast<std::size_t>(i) * n_phi + k]; }
};

/// Uniform grid over [u_min, u_max] with n_u nodes, filled with a harmonic.
HarmonicGrid sample_harmonic(const CylHarmonicLabel& label, double u_min, double u_max, int n_u, int n_phi);
HarmonicGrid sample_harmonic(const SphHarmonicLabel& label, double u_min, double u_max, int n_u, int n_phi);

/// Spectral derivative in phi of every ring.
HarmonicGrid phi_derivative(const HarmonicGrid& f);

/// Numeric eth / ethbar: spectral in phi, fourth-order differences in rho or
/// theta (one-sided at the two outermost nodes on each side). Throws
/// ResolutionError when the upper quarter of the phi spectrum of some ring
/// exceeds spectral_tol of the largest ring energy.
HarmonicGrid eth_numeric(const HarmonicGrid& f, double spectral_tol = 1e-10);
HarmonicGrid ethbar_numeric(const HarmonicGrid& f, double spectral_tol = 1e-10);

}  // namespace photon
