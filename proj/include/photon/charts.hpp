#pragma once

#include <array>

#include "photon/types.hpp"

namespace photon {

enum class Chart { lorentz, cylindrical, spherical };

const char* chart_name(Chart chart);

/// An event of Minkowski spacetime in one of three charts.
///   lorentz     (t, x, y, z)
///   cylindrical (t, rho, phi, z)     rho >= 0, phi in [0, 2pi)
///   spherical   (t, r, theta, phi)   r >= 0, theta in [0, pi], phi in [0, 2pi)
/// Angles are normalized on construction. Units are natural (c = hbar = 1).
class SpacetimePoint {
 public:
  static SpacetimePoint lorentz(double t, double x, double y, double z);
  static SpacetimePoint cylindrical(double t, double rho, double phi, double z);
  static SpacetimePoint spherical(double t, double r, double theta, double phi);
  static SpacetimePoint from_lorentz(const std::array<double, 4>& x) {
    return lorentz(x[0], x[1], x[2], x[3]);
  }

  Chart chart() const { return chart_; }
  const std::array<double, 4>& coords() const { return q_; }
  double operator[](int i) const { return q_[static_cast<std::size_t>(i)]; }
  double t() const { return q_[0]; }

  std::array<double, 4> lorentz_coords() const;
  SpacetimePoint to_lorentz() const;
  SpacetimePoint to_cylindrical() const;
  SpacetimePoint to_spherical() const;
  SpacetimePoint to(Chart chart) const;

 private:
  SpacetimePoint(Chart chart, std::array<double, 4> q) : chart_(chart), q_(q) {}

  Chart chart_ = Chart::lorentz;
  std::array<double, 4> q_{};
};

double normalize_angle(double phi);

/// Jacobian dx^mu/dq^k of the chart map at p (row mu, column k).
std::array<std::array<double, 4>, 4> chart_jacobian(const SpacetimePoint& p);

/// Chart components A_k = A_mu dx^mu/dq^k of a Lorentz covector at p.
std::array<cplx, 4> chart_components(const Covector& a, const SpacetimePoint& p);

/// Inverse of chart_components.
Covector from_chart_components(const std::array<cplx, 4>& a_chart, const SpacetimePoint& p);

/// Diagonal inverse metric g^{kk} in the chart of p.
std::array<double, 4> inverse_metric_diag(const SpacetimePoint& p);

/// Null polarization dyad {axis, eps-, eps+}. The axis covector is dz for the
/// cylindrical chart and dr for the spherical chart. All members are Lorentz
/// covectors evaluated at the construction point.
struct Dyad {
  Chart chart = Chart::cylindrical;
  Covector axis;
  Covector minus;
  Covector plus;

  const Covector& operator[](int i) const {
    return i == 0 ? axis : (i == 1 ? minus : plus);
  }
};

/// eps-+ = (drho -+ ... ) / sqrt2 with eps-/+ = (drho +- i rho dphi)/sqrt2.
/// Throws DegenerateAxisError at rho = 0.
Dyad dyad_cyl(const SpacetimePoint& p);

/// eps-/+ = (r/sqrt2)(dtheta +- i sin(theta) dphi).
/// Throws DegenerateAxisError at r = 0 or theta in {0, pi}.
Dyad dyad_sph(const SpacetimePoint& p);

/// Covariant derivative of the dyad covectors expanded in the dyad basis:
///   nabla_a (e_i)_b = sum_jk coeff[i][j][k] (e_j)_a (e_k)_b
/// with index 0 = axis covector, 1 = eps-, 2 = eps+.
struct DyadDerivativeTable {
  Chart chart = Chart::cylindrical;
  std::array<std::array<std::array<double, 3>, 3>, 3> coeff{};

  /// Reassemble nabla_a (e_i)_b as a Lorentz tensor (row a, column b).
  Tensor2 lorentz_tensor(int i, const Dyad& dyad) const;
};

DyadDerivativeTable dyad_derivatives(Chart chart, const SpacetimePoint& p);

}  // namespace photon
