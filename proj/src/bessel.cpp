#include "photon/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace photon {

namespace {

void require_nonnegative(double x) {
  if (!(x >= 0.0)) throw std::domain_error("Bessel argument must be >= 0, got " + std::to_string(x));
}

double jn_series(int n, double x) {
  const double h = 0.5 * x;
  double lead = 1.0;
  for (int k = 1; k <= n; ++k) lead *= h / k;
  double term = lead, sum = lead;
  const double h2 = h * h;
  for (int k = 1; k < 60; ++k) {
    term *= -h2 / (static_cast<double>(k) * (n + k));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

int miller_start(int nmax, double x) {
  const double top = std::max(static_cast<double>(nmax), x);
  int start = static_cast<int>(top + 30.0 + std::sqrt(40.0 * top));
  if (start % 2) ++start;
  return start;
}

// Downward recurrence for J_0..J_nmax normalized by J_0 + 2 sum J_2k = 1.
std::vector<double> jn_miller(int nmax, double x) {
  const int start = miller_start(nmax, x);
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
  double jp = 0.0, j = 1e-300, norm = 0.0;
  for (int k = start; k > 0; --k) {
    const double jm = (2.0 * k / x) * j - jp;
    jp = j;
    j = jm;
    if (std::abs(j) > 1e250) {
      j *= 1e-250;
      jp *= 1e-250;
      norm *= 1e-250;
      for (auto& v : out) v *= 1e-250;
    }
    if (k - 1 <= nmax) out[static_cast<std::size_t>(k - 1)] = j;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * j;
  }
  norm += j;
  for (auto& v : out) v /= norm;
  return out;
}

double double_factorial_odd(int l) {
  double r = 1.0;
  for (int k = 3; k <= 2 * l + 1; k += 2) r *= k;
  return r;
}

double sph_series(int l, double x) {
  double lead = 1.0;
  for (int k = 0; k < l; ++k) lead *= x;
  lead /= double_factorial_odd(l);
  double term = 1.0, sum = 1.0;
  const double q = -0.5 * x * x;
  for (int k = 1; k < 40; ++k) {
    term *= q / (k * (2.0 * l + 2.0 * k + 1.0));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return lead * sum;
}

}  // namespace

std::vector<double> bessel_jn_table(int nmax, double x) {
  require_nonnegative(x);
  if (nmax < 0) throw InvalidOrderError("bessel_jn_table requires nmax >= 0");
  if (x == 0.0) {
    std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
    out[0] = 1.0;
    return out;
  }
  if (x <= bessel_series_threshold) {
    std::vector<double> out(static_cast<std::size_t>(nmax) + 1);
    for (int n = 0; n <= nmax; ++n) out[static_cast<std::size_t>(n)] = jn_series(n, x);
    return out;
  }
  return jn_miller(nmax, x);
}

double bessel_jn(int n, double x) {
  require_nonnegative(x);
  const int k = std::abs(n);
  double v;
  if (x == 0.0) {
    v = k == 0 ? 1.0 : 0.0;
  } else if (x <= bessel_series_threshold) {
    v = jn_series(k, x);
  } else {
    v = jn_miller(k, x)[static_cast<std::size_t>(k)];
  }
  return (n < 0 && (k % 2)) ? -v : v;
}

std::vector<double> sph_bessel_j_table(int lmax, double x) {
  require_nonnegative(x);
  if (lmax < 0) throw InvalidOrderError("sph_bessel_j_table requires lmax >= 0");
  std::vector<double> out(static_cast<std::size_t>(lmax) + 1, 0.0);
  if (x <= 1.0) {
    for (int l = 0; l <= lmax; ++l) out[static_cast<std::size_t>(l)] = x == 0.0 ? (l == 0 ? 1.0 : 0.0) : sph_series(l, x);
    return out;
  }
  const int start = miller_start(lmax + 1, x);
  double jp = 0.0, j = 1e-300, j1 = 0.0;
  for (int k = start; k > 0; --k) {
    const double jm = ((2.0 * k + 1.0) / x) * j - jp;
    jp = j;
    j = jm;
    if (std::abs(j) > 1e250) {
      j *= 1e-250;
      jp *= 1e-250;
      for (auto& v : out) v *= 1e-250;
    }
    if (k - 1 <= lmax) out[static_cast<std::size_t>(k - 1)] = j;
    if (k - 1 == 1) j1 = j;
  }
  // j is now the unnormalized j_0 and jp the unnormalized j_1.
  j1 = jp;
  const double s = std::sin(x), c = std::cos(x);
  const double e0 = s / x, e1 = s / (x * x) - c / x;
  const double scale = std::abs(e0) >= std::abs(e1) ? e0 / j : e1 / j1;
  for (auto& v : out) v *= scale;
  return out;
}

double sph_bessel_j(int l, double x) {
  require_nonnegative(x);
  if (l < -1) throw InvalidOrderError("spherical Bessel order must be >= -1");
  if (l == -1) return x == 0.0 ? std::numeric_limits<double>::infinity() : std::cos(x) / x;
  return sph_bessel_j_table(l, x)[static_cast<std::size_t>(l)];
}

double sph_bessel_j_over_x(int l, double x) {
  if (l < 1) throw InvalidOrderError("j_l/x is regular only for l >= 1");
  const auto t = sph_bessel_j_table(l + 1, x);
  return (t[static_cast<std::size_t>(l - 1)] + t[static_cast<std::size_t>(l + 1)]) / (2.0 * l + 1.0);
}

double sph_bessel_q(int l, double x) {
  if (l < 1) throw InvalidOrderError("q_l is defined for l >= 1");
  const auto t = sph_bessel_j_table(l + 1, x);
  return ((l + 1.0) * t[static_cast<std::size_t>(l - 1)] - l * t[static_cast<std::size_t>(l + 1)]) / (2.0 * l + 1.0);
}

double bessel_j(double nu, double x) {
  require_nonnegative(x);
  if (!std::isfinite(nu)) throw InvalidOrderError("Bessel order must be finite");
  const double twice = 2.0 * nu;
  if (std::abs(twice - std::round(twice)) > 1e-12)
    throw InvalidOrderError("Bessel order must be an integer or half-integer, got " + std::to_string(nu));
  const long two_nu = std::lround(twice);
  if (two_nu % 2 == 0) return bessel_jn(static_cast<int>(two_nu / 2), x);
  if (two_nu < -1) throw InvalidOrderError("half-integer Bessel order must be >= -1/2, got " + std::to_string(nu));
  const int l = static_cast<int>((two_nu - 1) / 2);
  if (x == 0.0) return l == -1 ? std::numeric_limits<double>::infinity() : 0.0;
  return std::sqrt(2.0 * x / pi) * sph_bessel_j(l, x);
}

Jet bessel_jn(int n, const Jet& x) {
  const double a = x.v.real();
  auto j = [&](int k) { return bessel_jn(k, a); };
  const double f0 = j(n);
  const double f1 = 0.5 * (j(n - 1) - j(n + 1));
  const double f2 = 0.25 * (j(n - 2) - 2.0 * f0 + j(n + 2));
  return chain(x, f0, f1, f2);
}

Jet sph_bessel_j(int l, const Jet& x) {
  if (l < 0) throw InvalidOrderError("spherical Bessel jet requires l >= 0");
  const double a = x.v.real();
  const auto t = sph_bessel_j_table(l + 2, a);
  auto j = [&](int k) { return k < 0 ? 0.0 : t[static_cast<std::size_t>(k)]; };
  auto jp = [&](int k) { return (k * j(k - 1) - (k + 1.0) * j(k + 1)) / (2.0 * k + 1.0); };
  const double f1 = jp(l);
  const double f2 = (l * (l >= 1 ? jp(l - 1) : 0.0) - (l + 1.0) * jp(l + 1)) / (2.0 * l + 1.0);
  return chain(x, j(l), f1, f2);
}

}  // namespace photon
