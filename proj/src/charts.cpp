#include "photon/charts.hpp"

#include <cmath>
#include <string>

namespace photon {

double levi_civita(int a, int b, int c, int d) {
  if (a == b || a == c || a == d || b == c || b == d || c == d) return 0.0;
  std::array<int, 4> p{a, b, c, d};
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)]) sign = -sign;
  return sign * volume_orientation;
}

const char* chart_name(Chart chart) {
  switch (chart) {
    case Chart::lorentz: return "lorentz";
    case Chart::cylindrical: return "cylindrical";
    case Chart::spherical: return "spherical";
  }
  return "unknown";
}

double normalize_angle(double phi) {
  double r = std::fmod(phi, 2.0 * pi);
  if (r < 0.0) r += 2.0 * pi;
  if (r >= 2.0 * pi) r = 0.0;
  return r;
}

SpacetimePoint SpacetimePoint::lorentz(double t, double x, double y, double z) {
  return SpacetimePoint(Chart::lorentz, {t, x, y, z});
}

SpacetimePoint SpacetimePoint::cylindrical(double t, double rho, double phi, double z) {
  if (!(rho >= 0.0)) throw std::invalid_argument("cylindrical point requires rho >= 0");
  return SpacetimePoint(Chart::cylindrical, {t, rho, normalize_angle(phi), z});
}

SpacetimePoint SpacetimePoint::spherical(double t, double r, double theta, double phi) {
  if (!(r >= 0.0)) throw std::invalid_argument("spherical point requires r >= 0");
  if (!(theta >= 0.0 && theta <= pi))
    throw std::invalid_argument("spherical point requires theta in [0, pi]");
  return SpacetimePoint(Chart::spherical, {t, r, theta, normalize_angle(phi)});
}

std::array<double, 4> SpacetimePoint::lorentz_coords() const {
  switch (chart_) {
    case Chart::lorentz: return q_;
    case Chart::cylindrical:
      return {q_[0], q_[1] * std::cos(q_[2]), q_[1] * std::sin(q_[2]), q_[3]};
    case Chart::spherical: {
      const double st = std::sin(q_[2]);
      return {q_[0], q_[1] * st * std::cos(q_[3]), q_[1] * st * std::sin(q_[3]),
              q_[1] * std::cos(q_[2])};
    }
  }
  return q_;
}

SpacetimePoint SpacetimePoint::to_lorentz() const {
  return from_lorentz(lorentz_coords());
}

SpacetimePoint SpacetimePoint::to_cylindrical() const {
  if (chart_ == Chart::cylindrical) return *this;
  const auto x = lorentz_coords();
  return cylindrical(x[0], std::hypot(x[1], x[2]), std::atan2(x[2], x[1]), x[3]);
}

SpacetimePoint SpacetimePoint::to_spherical() const {
  if (chart_ == Chart::spherical) return *this;
  if (chart_ == Chart::cylindrical) {
    // Keep phi exactly; only (rho, z) -> (r, theta).
    return spherical(q_[0], std::hypot(q_[1], q_[3]), std::atan2(q_[1], q_[3]), q_[2]);
  }
  const auto x = lorentz_coords();
  const double rho = std::hypot(x[1], x[2]);
  return spherical(x[0], std::hypot(rho, x[3]), std::atan2(rho, x[3]), std::atan2(x[2], x[1]));
}

SpacetimePoint SpacetimePoint::to(Chart chart) const {
  switch (chart) {
    case Chart::lorentz: return to_lorentz();
    case Chart::cylindrical: return to_cylindrical();
    case Chart::spherical: return to_spherical();
  }
  return *this;
}

std::array<std::array<double, 4>, 4> chart_jacobian(const SpacetimePoint& p) {
  std::array<std::array<double, 4>, 4> j{};
  j[0][0] = 1.0;
  const auto& q = p.coords();
  switch (p.chart()) {
    case Chart::lorentz:
      for (int i = 1; i < 4; ++i) j[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
      break;
    case Chart::cylindrical: {
      const double c = std::cos(q[2]), s = std::sin(q[2]);
      j[1][1] = c;
      j[1][2] = -q[1] * s;
      j[2][1] = s;
      j[2][2] = q[1] * c;
      j[3][3] = 1.0;
      break;
    }
    case Chart::spherical: {
      const double r = q[1], ct = std::cos(q[2]), st = std::sin(q[2]);
      const double cp = std::cos(q[3]), sp = std::sin(q[3]);
      j[1][1] = st * cp;
      j[1][2] = r * ct * cp;
      j[1][3] = -r * st * sp;
      j[2][1] = st * sp;
      j[2][2] = r * ct * sp;
      j[2][3] = r * st * cp;
      j[3][1] = ct;
      j[3][2] = -r * st;
      break;
    }
  }
  return j;
}

std::array<cplx, 4> chart_components(const Covector& a, const SpacetimePoint& p) {
  const auto j = chart_jacobian(p);
  std::array<cplx, 4> out{};
  for (int k = 0; k < 4; ++k)
    for (int mu = 0; mu < 4; ++mu)
      out[static_cast<std::size_t>(k)] += a[mu] * j[static_cast<std::size_t>(mu)][static_cast<std::size_t>(k)];
  return out;
}

Covector from_chart_components(const std::array<cplx, 4>& a_chart, const SpacetimePoint& p) {
  const auto& q = p.coords();
  // Inverse Jacobian dq^k/dx^mu, written out per chart.
  std::array<std::array<double, 4>, 4> inv{};
  inv[0][0] = 1.0;
  switch (p.chart()) {
    case Chart::lorentz:
      for (int i = 1; i < 4; ++i) inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
      break;
    case Chart::cylindrical: {
      if (q[1] == 0.0) throw DegenerateAxisError("chart components undefined on the axis");
      const double c = std::cos(q[2]), s = std::sin(q[2]);
      inv[1][1] = c;
      inv[1][2] = s;
      inv[2][1] = -s / q[1];
      inv[2][2] = c / q[1];
      inv[3][3] = 1.0;
      break;
    }
    case Chart::spherical: {
      const double r = q[1], ct = std::cos(q[2]), st = std::sin(q[2]);
      if (r == 0.0 || st == 0.0) throw DegenerateAxisError("chart components undefined on the axis");
      const double cp = std::cos(q[3]), sp = std::sin(q[3]);
      inv[1][1] = st * cp;
      inv[1][2] = st * sp;
      inv[1][3] = ct;
      inv[2][1] = ct * cp / r;
      inv[2][2] = ct * sp / r;
      inv[2][3] = -st / r;
      inv[3][1] = -sp / (r * st);
      inv[3][2] = cp / (r * st);
      break;
    }
  }
  Covector out;
  for (int mu = 0; mu < 4; ++mu)
    for (int k = 0; k < 4; ++k)
      out[mu] += a_chart[static_cast<std::size_t>(k)] * inv[static_cast<std::size_t>(k)][static_cast<std::size_t>(mu)];
  return out;
}

std::array<double, 4> inverse_metric_diag(const SpacetimePoint& p) {
  const auto& q = p.coords();
  switch (p.chart()) {
    case Chart::lorentz: return metric_diag;
    case Chart::cylindrical: return {1.0, -1.0, -1.0 / (q[1] * q[1]), -1.0};
    case Chart::spherical: {
      const double st = std::sin(q[2]);
      return {1.0, -1.0, -1.0 / (q[1] * q[1]), -1.0 / (q[1] * q[1] * st * st)};
    }
  }
  return metric_diag;
}

namespace {

Covector spatial(double x, double y, double z) {
  Covector c;
  c[1] = x;
  c[2] = y;
  c[3] = z;
  return c;
}

}  // namespace

Dyad dyad_cyl(const SpacetimePoint& p) {
  const auto q = p.to_cylindrical();
  const double rho = q[1], phi = q[2];
  if (!(rho > 0.0)) throw DegenerateAxisError("cylindrical dyad is undefined on the axis rho = 0");
  const double c = std::cos(phi), s = std::sin(phi);
  const Covector drho = spatial(c, s, 0.0);
  const Covector rho_dphi = spatial(-s, c, 0.0);
  const double k = 1.0 / std::sqrt(2.0);
  Dyad d;
  d.chart = Chart::cylindrical;
  d.axis = spatial(0.0, 0.0, 1.0);
  d.minus = k * (drho + I * rho_dphi);
  d.plus = k * (drho - I * rho_dphi);
  return d;
}

Dyad dyad_sph(const SpacetimePoint& p) {
  const auto q = p.to_spherical();
  const double r = q[1], th = q[2], phi = q[3];
  if (!(r > 0.0)) throw DegenerateAxisError("spherical dyad is undefined at r = 0");
  if (!(th > 0.0 && th < pi)) throw DegenerateAxisError("spherical dyad is undefined on the polar axis");
  const double ct = std::cos(th), st = std::sin(th), cp = std::cos(phi), sp = std::sin(phi);
  const Covector r_dtheta = spatial(ct * cp, ct * sp, -st);
  const Covector r_sin_dphi = spatial(-sp, cp, 0.0);
  const double k = 1.0 / std::sqrt(2.0);
  Dyad d;
  d.chart = Chart::spherical;
  d.axis = spatial(st * cp, st * sp, ct);
  d.minus = k * (r_dtheta + I * r_sin_dphi);
  d.plus = k * (r_dtheta - I * r_sin_dphi);
  return d;
}

Tensor2 DyadDerivativeTable::lorentz_tensor(int i, const Dyad& dyad) const {
  Tensor2 t{};
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      const double c = coeff[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      if (c == 0.0) continue;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] += c * dyad[j][a] * dyad[k][b];
    }
  return t;
}

DyadDerivativeTable dyad_derivatives(Chart chart, const SpacetimePoint& p) {
  DyadDerivativeTable t;
  t.chart = chart;
  auto& c = t.coeff;
  constexpr int axis = 0, minus = 1, plus = 2;
  if (chart == Chart::cylindrical) {
    const double rho = p.to_cylindrical()[1];
    if (!(rho > 0.0)) throw DegenerateAxisError("dyad derivatives undefined on the axis rho = 0");
    const double k = 1.0 / (std::sqrt(2.0) * rho);
    // nabla(dz) = 0
    c[minus][plus][minus] = k;
    c[minus][minus][minus] = -k;
    c[plus][minus][plus] = k;
    c[plus][plus][plus] = -k;
  } else if (chart == Chart::spherical) {
    const auto q = p.to_spherical();
    const double r = q[1], th = q[2];
    if (!(r > 0.0) || !(th > 0.0 && th < pi))
      throw DegenerateAxisError("dyad derivatives undefined on the polar axis or at r = 0");
    const double k = 1.0 / std::tan(th) / (std::sqrt(2.0) * r);
    c[axis][minus][plus] = 1.0 / r;
    c[axis][plus][minus] = 1.0 / r;
    c[minus][plus][minus] = k;
    c[minus][minus][minus] = -k;
    c[minus][minus][axis] = -1.0 / r;
    c[plus][minus][plus] = k;
    c[plus][plus][plus] = -k;
    c[plus][plus][axis] = -1.0 / r;
  } else {
    throw std::invalid_argument("dyad derivatives are defined for cylindrical and spherical charts");
  }
  return t;
}

}  // namespace photon
