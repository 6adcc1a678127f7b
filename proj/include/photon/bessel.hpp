#pragma once

#include <vector>

#include "photon/jet.hpp"

namespace photon {

/// Thrown for Bessel orders outside the supported set.
class InvalidOrderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument below which integer orders use the power series.
inline constexpr double bessel_series_threshold = 2.0;

/// J_nu(x) for x >= 0. nu must be an integer (negative values via
/// J_{-k} = (-1)^k J_k) or a half-integer >= -1/2.
double bessel_j(double nu, double x);

/// J_n(x) for any integer n and x >= 0.
double bessel_jn(int n, double x);

/// J_0(x) ... J_nmax(x) in one pass.
std::vector<double> bessel_jn_table(int nmax, double x);

/// Spherical Bessel j_l(x) for l >= -1 (j_{-1}(x) = cos(x)/x).
double sph_bessel_j(int l, double x);

/// j_0(x) ... j_lmax(x) in one pass.
std::vector<double> sph_bessel_j_table(int lmax, double x);

/// j_l(x)/x for l >= 1, regular at x = 0.
double sph_bessel_j_over_x(int l, double x);

/// q_l(x) = j_{l-1}(x) - l j_l(x)/x for l >= 1, regular at x = 0.
double sph_bessel_q(int l, double x);

// Jet overloads propagate the first two derivatives through recurrences.
Jet bessel_jn(int n, const Jet& x);
Jet sph_bessel_j(int l, const Jet& x);

}  // namespace photon
