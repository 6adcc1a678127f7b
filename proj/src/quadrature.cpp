#include "photon/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace photon {

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre rule needs n >= 1");
  QuadratureRule r;
  r.x.resize(static_cast<std::size_t>(n));
  r.w.resize(static_cast<std::size_t>(n));
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    double p0 = 1.0, p1 = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    const auto lo = static_cast<std::size_t>(i), hi = static_cast<std::size_t>(n - 1 - i);
    r.x[lo] = mid - half * z;
    r.x[hi] = mid + half * z;
    r.w[lo] = r.w[hi] = half * w;
  }
  return r;
}

QuadratureRule composite_gauss_legendre(double a, double b, int panels, int order) {
  if (panels < 1) throw std::invalid_argument("composite rule needs at least one panel");
  QuadratureRule r;
  const double h = (b - a) / panels;
  const QuadratureRule base = gauss_legendre(order, 0.0, h);
  for (int p = 0; p < panels; ++p)
    for (std::size_t k = 0; k < base.x.size(); ++k) {
      r.x.push_back(a + p * h + base.x[k]);
      r.w.push_back(base.w[k]);
    }
  return r;
}

QuadratureRule periodic_trapezoid(int n) {
  if (n < 1) throw std::invalid_argument("trapezoid rule needs n >= 1");
  QuadratureRule r;
  for (int k = 0; k < n; ++k) {
    r.x.push_back(2.0 * std::numbers::pi * k / n);
    r.w.push_back(2.0 * std::numbers::pi / n);
  }
  return r;
}

}  // namespace photon
