#include "photon/harmonics.hpp"

#include <cmath>
#include <string>

namespace photon {

void CylHarmonicLabel::validate() const {
  if (!(alpha >= 0.0)) throw InvalidLabelError("cylindrical harmonic requires alpha >= 0");
}

void SphHarmonicLabel::validate() const {
  if (l < 0) throw InvalidLabelError("spherical harmonic requires l >= 0");
  if (std::abs(m) > l) throw InvalidLabelError("spherical harmonic requires |m| <= l");
}

SpinWeightedValue sw_cyl_harmonic(const CylHarmonicLabel& label, double rho, double phi) {
  label.validate();
  if (!(rho >= 0.0)) throw std::domain_error("rho must be >= 0");
  const double j = bessel_jn(label.m + label.n, label.alpha * rho);
  return {j * std::exp(I * (label.m * phi)), label.n};
}

double sw_sph_prefactor(int n, int l, int m) {
  // Ratios of factorials through lgamma stay accurate well past l = 50.
  const double lg = std::lgamma(l + m + 1.0) + std::lgamma(l - m + 1.0) - std::lgamma(l + n + 1.0) -
                    std::lgamma(l - n + 1.0);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return sign * std::sqrt(std::exp(lg) * (2.0 * l + 1.0) / (4.0 * pi));
}

SpinWeightedValue sw_sph_harmonic(const SphHarmonicLabel& label, double theta, double phi) {
  label.validate();
  if (!(theta >= 0.0 && theta <= pi)) throw std::domain_error("theta must lie in [0, pi]");
  if (label.l < std::abs(label.n)) return {0.0, label.n};
  const cplx v = sw_sph_from_half_angles<cplx>(label.n, label.l, label.m, std::sin(0.5 * theta),
                                               std::cos(0.5 * theta), std::exp(I * (label.m * phi)));
  const bool pole = theta == 0.0 || theta == pi;
  if (pole && label.n != 0 && v != 0.0)
    throw DegenerateAxisError("spin-weighted harmonic with n = " + std::to_string(label.n) +
                              " has no direction-independent value at the pole");
  return {v, label.n};
}

LadderResult<CylHarmonicLabel> eth_analytic(const CylHarmonicLabel& label) {
  label.validate();
  return {{label.n + 1, label.alpha, label.m}, label.alpha};
}

LadderResult<CylHarmonicLabel> ethbar_analytic(const CylHarmonicLabel& label) {
  label.validate();
  return {{label.n - 1, label.alpha, label.m}, -label.alpha};
}

LadderResult<SphHarmonicLabel> eth_analytic(const SphHarmonicLabel& label) {
  label.validate();
  const int l = label.l, n = label.n;
  const double f = (l < std::abs(n)) ? 0.0 : std::sqrt(std::max(0.0, static_cast<double>((l - n) * (l + n + 1))));
  return {{n + 1, l, label.m}, f};
}

LadderResult<SphHarmonicLabel> ethbar_analytic(const SphHarmonicLabel& label) {
  label.validate();
  const int l = label.l, n = label.n;
  const double f = (l < std::abs(n)) ? 0.0 : -std::sqrt(std::max(0.0, static_cast<double>((l + n) * (l - n + 1))));
  return {{n - 1, l, label.m}, f == 0.0 ? 0.0 : f};
}

double ethbar_eth_eigencheck(const CylHarmonicLabel& label) {
  const auto up = eth_analytic(label);
  return up.factor * ethbar_analytic(up.label).factor;
}

double ethbar_eth_eigencheck(const SphHarmonicLabel& label) {
  const auto up = eth_analytic(label);
  if (up.factor == 0.0) return 0.0;
  return up.factor * ethbar_analytic(up.label).factor;
}

namespace {

HarmonicGrid empty_like(const HarmonicGrid& f) {
  HarmonicGrid g = f;
  std::fill(g.values.begin(), g.values.end(), cplx{});
  return g;
}

std::vector<double> uniform(double a, double b, int n) {
  if (n < 5) throw std::invalid_argument("harmonic grid needs at least 5 radial nodes");
  std::vector<double> u(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) u[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return u;
}

// Discrete Fourier coefficients of one ring; index k maps to wavenumber
// k for k <= N/2 and k - N otherwise.
std::vector<cplx> dft(const cplx* ring, int n) {
  std::vector<cplx> c(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    cplx s = 0.0;
    for (int j = 0; j < n; ++j) s += ring[j] * std::exp(-I * (2.0 * pi * k * j / n));
    c[static_cast<std::size_t>(k)] = s / static_cast<double>(n);
  }
  return c;
}

int wavenumber(int k, int n) { return k <= n / 2 ? k : k - n; }

// Tail energy of one ring. The caller compares it with the largest ring
// energy on the grid, so rings near a radial zero do not trip on round-off.
std::pair<double, double> tail_energy(const std::vector<cplx>& c) {
  const int n = static_cast<int>(c.size());
  double total = 0.0, tail = 0.0;
  for (int k = 0; k < n; ++k) {
    const double e = std::norm(c[static_cast<std::size_t>(k)]);
    total += e;
    if (std::abs(wavenumber(k, n)) > n / 4) tail += e;
  }
  return {tail, total};
}

void check_tail(const HarmonicGrid& f, double tol) {
  double tail = 0.0, total = 0.0;
  for (std::size_t i = 0; i < f.u.size(); ++i) {
    const auto [t, e] = tail_energy(dft(&f.values[i * static_cast<std::size_t>(f.n_phi)], f.n_phi));
    tail = std::max(tail, t);
    total = std::max(total, e);
  }
  if (total > 0.0 && tail > tol * tol * total)
    throw ResolutionError("phi grid does not resolve the function: spectral tail " + std::to_string(std::sqrt(tail / total)));
}

// Fourth-order first derivative along the u direction at node i.
cplx du(const HarmonicGrid& f, int i, int k) {
  const int n = static_cast<int>(f.u.size());
  const double h = f.u[1] - f.u[0];
  auto v = [&](int j) { return f.at(j, k); };
  if (i >= 2 && i <= n - 3) return (v(i - 2) - 8.0 * v(i - 1) + 8.0 * v(i + 1) - v(i + 2)) / (12.0 * h);
  if (i < 2) {
    const int o = i;
    // one-sided five-point stencils anchored at node 0
    static const double w0[5] = {-25.0, 48.0, -36.0, 16.0, -3.0};
    static const double w1[5] = {-3.0, -10.0, 18.0, -6.0, 1.0};
    const double* w = o == 0 ? w0 : w1;
    cplx s = 0.0;
    for (int j = 0; j < 5; ++j) s += w[j] * v(j);
    return s / (12.0 * h);
  }
  static const double w0[5] = {25.0, -48.0, 36.0, -16.0, 3.0};
  static const double w1[5] = {3.0, 10.0, -18.0, 6.0, -1.0};
  const double* w = i == n - 1 ? w0 : w1;
  cplx s = 0.0;
  for (int j = 0; j < 5; ++j) s += w[j] * v(n - 1 - j);
  return s / (12.0 * h);
}

HarmonicGrid ladder_numeric(const HarmonicGrid& f, int direction, double tol) {
  HarmonicGrid dphi = phi_derivative(f);
  check_tail(f, tol);
  HarmonicGrid out = empty_like(f);
  out.spin_weight = f.spin_weight + direction;
  const double n = f.spin_weight;
  const int nu = static_cast<int>(f.u.size());
  for (int i = 0; i < nu; ++i) {
    const double u = f.u[static_cast<std::size_t>(i)];
    double inv, cot;
    if (f.kind == HarmonicKind::cylindrical) {
      if (!(u > 0.0)) throw DegenerateAxisError("numeric eth needs rho > 0 on every node");
      inv = 1.0 / u;
      cot = 1.0 / u;
    } else {
      if (!(u > 0.0 && u < pi)) throw DegenerateAxisError("numeric eth needs theta strictly inside (0, pi)");
      inv = 1.0 / std::sin(u);
      cot = std::cos(u) / std::sin(u);
    }
    for (int k = 0; k < f.n_phi; ++k) {
      // eth    = -d_u - i inv d_phi + n cot
      // ethbar = -d_u + i inv d_phi - n cot
      out.at(i, k) = -du(f, i, k) - static_cast<double>(direction) * (I * inv * dphi.at(i, k) - n * cot * f.at(i, k));
    }
  }
  return out;
}

}  // namespace

HarmonicGrid sample_harmonic(const CylHarmonicLabel& label, double u_min, double u_max, int n_u, int n_phi) {
  HarmonicGrid g;
  g.kind = HarmonicKind::cylindrical;
  g.spin_weight = label.n;
  g.u = uniform(u_min, u_max, n_u);
  g.n_phi = n_phi;
  g.values.resize(static_cast<std::size_t>(n_u) * n_phi);
  for (int i = 0; i < n_u; ++i)
    for (int k = 0; k < n_phi; ++k) g.at(i, k) = sw_cyl_harmonic(label, g.u[static_cast<std::size_t>(i)], g.phi(k)).value;
  return g;
}

HarmonicGrid sample_harmonic(const SphHarmonicLabel& label, double u_min, double u_max, int n_u, int n_phi) {
  HarmonicGrid g;
  g.kind = HarmonicKind::spherical;
  g.spin_weight = label.n;
  g.u = uniform(u_min, u_max, n_u);
  g.n_phi = n_phi;
  g.values.resize(static_cast<std::size_t>(n_u) * n_phi);
  for (int i = 0; i < n_u; ++i)
    for (int k = 0; k < n_phi; ++k) g.at(i, k) = sw_sph_harmonic(label, g.u[static_cast<std::size_t>(i)], g.phi(k)).value;
  return g;
}

HarmonicGrid phi_derivative(const HarmonicGrid& f) {
  if (f.n_phi < 4) throw std::invalid_argument("phi grid needs at least 4 nodes");
  HarmonicGrid out = empty_like(f);
  const int n = f.n_phi;
  for (std::size_t i = 0; i < f.u.size(); ++i) {
    const auto c = dft(&f.values[i * static_cast<std::size_t>(n)], n);
    for (int j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < n; ++k) {
        int w = wavenumber(k, n);
        if (n % 2 == 0 && k == n / 2) w = 0;  // Nyquist mode has no derivative
        s += I * static_cast<double>(w) * c[static_cast<std::size_t>(k)] * std::exp(I * (2.0 * pi * k * j / n));
      }
      out.at(static_cast<int>(i), j) = s;
    }
  }
  return out;
}

HarmonicGrid eth_numeric(const HarmonicGrid& f, double spectral_tol) { return ladder_numeric(f, +1, spectral_tol); }

HarmonicGrid ethbar_numeric(const HarmonicGrid& f, double spectral_tol) { return ladder_numeric(f, -1, spectral_tol); }

}  // namespace photon
