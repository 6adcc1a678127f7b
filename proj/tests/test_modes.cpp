#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/spherical_harmonic.hpp>

#include "photon/harmonics.hpp"
#include "photon/modes.hpp"

using namespace photon;

namespace {

using Coords = std::array<double, 4>;

const Coords points[] = {{0.0, 0.7, -0.3, 0.4}, {1.3, -1.1, 2.0, -0.6}, {-0.4, 0.2, 0.5, 2.5}, {2.2, -2.4, -1.7, 0.1}};

// Rotating dyads written out in Cartesian components:
// eps-+ = (drho +- i rho dphi)/sqrt2; sign = +1 gives eps-.
Covector rotating(double phi, int sign) {
  Covector e;
  e[1] = cplx(std::cos(phi), -sign * std::sin(phi)) / std::sqrt(2.0);
  e[2] = cplx(std::sin(phi), sign * std::cos(phi)) / std::sqrt(2.0);
  return e;
}

}  // namespace

TEST_CASE("plane wave against the closed form") {
  const PlaneWaveLabel lab{{0.4, -1.1, 0.8}, Helicity::negative};
  const ModeField mode(lab);
  const double p0 = lab.p0();
  const Covector eps = plane_wave_polarization(lab.p, lab.s);
  for (const auto& x : points) {
    const double phase = p0 * x[0] - (lab.p[0] * x[1] + lab.p[1] * x[2] + lab.p[2] * x[3]);
    const cplx f = std::pow(2 * pi, -1.5) / std::sqrt(2 * p0) * std::exp(-I * phase);
    CHECK(norm(mode.potential(x) - f * eps) < 1e-15);
  }
  // p along z with s = +1: polarization (dx + i dy)/sqrt2.
  const Covector ez = plane_wave_polarization({0, 0, 2.0}, Helicity::positive);
  CHECK(std::abs(ez[1] - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(ez[2] - I / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(ez[0]) == 0.0);
  CHECK(std::abs(ez[3]) < 1e-16);
}

TEST_CASE("cylindrical mode against Boost Bessel functions in the rotating frame") {
  for (int m : {-2, 0, 1, 3})
    for (Helicity s : {Helicity::positive, Helicity::negative}) {
      const CylindricalLabel lab{1.4, -0.5, m, s};
      const ModeField mode(lab);
      const double p0 = lab.p0, p3c = -lab.p3, alpha = std::sqrt(p0 * p0 - lab.p3 * lab.p3), sg = sign(s);
      const cplx c0 = alpha / (4 * pi * p0);
      const cplx cm = I * (sg * p0 - p3c) / (4 * std::sqrt(2.0) * pi * p0);
      const cplx cp = I * (sg * p0 + p3c) / (4 * std::sqrt(2.0) * pi * p0);
      const auto co = cylindrical_coefficients(lab);
      CHECK(std::abs(co.a0 - 1.0) < 1e-15);
      CHECK(std::abs(co.a_minus * c0 - cm) < 1e-15);
      CHECK(std::abs(co.a_plus * c0 - cp) < 1e-15);
      for (const auto& x : points) {
        const double rho = std::hypot(x[1], x[2]), phi = std::atan2(x[2], x[1]);
        const cplx ph = std::exp(-I * (p0 * x[0] + p3c * x[3])) * std::exp(I * (m * phi));
        auto j = [&](int k) { return boost::math::cyl_bessel_j(k, alpha * rho); };
        Covector want = rotating(phi, +1) * (cm * j(m - 1) * ph) + rotating(phi, -1) * (cp * j(m + 1) * ph);
        want[3] += c0 * j(m) * ph;
        CAPTURE(m);
        CHECK(norm(mode.potential(x) - want) < 1e-14);
      }
    }
}

TEST_CASE("spherical radial functions against half-integer Bessel functions") {
  for (int l : {1, 2, 5})
    for (Helicity s : {Helicity::positive, Helicity::negative}) {
      const SphericalLabel lab{0.9, l, 0, s};
      const double big_l = l * (l + 1.0), b0 = 0.5 * std::sqrt(big_l) * std::sqrt(lab.p0);
      const cplx b = I * static_cast<double>(sign(s)) * b0 * std::sqrt(2.0) / std::sqrt(big_l);
      for (double r : {0.3, 1.7, 8.0, 25.0}) {
        const double x = lab.p0 * r;
        const double jp = boost::math::cyl_bessel_j(l + 0.5, x), jm = boost::math::cyl_bessel_j(l - 0.5, x);
        const auto rad = spherical_radial(lab, r);
        CHECK(std::abs(rad.r0 - b0 * jp / std::pow(x, 1.5)) < 1e-14);
        CHECK(std::abs(rad.rm + rad.rp - b * jp / std::sqrt(x)) < 1e-14);
        CHECK(std::abs(rad.rm - rad.rp - b0 * std::sqrt(2.0 / big_l) * (jm / std::sqrt(x) - l * jp / std::pow(x, 1.5))) <
              1e-14);
        const auto jets = spherical_radial(lab, Jet::coordinate(1, r));
        CHECK(std::abs(jets[0].v - rad.r0) < 1e-15);
        CHECK(std::abs(jets[1].v - rad.rm) < 1e-15);
        CHECK(std::abs(jets[2].v - rad.rp) < 1e-15);
      }
    }
}

TEST_CASE("spherical mode assembles radial functions, harmonics and dyads") {
  const SphericalLabel lab{1.3, 2, -1, Helicity::positive};
  const ModeField mode(lab);
  for (const auto& x : points) {
    const auto sp = SpacetimePoint::from_lorentz(x).to_spherical();
    const double r = sp[1], th = sp[2], ph = sp[3];
    const auto rad = spherical_radial(lab, r);
    const cplx y0 = boost::math::spherical_harmonic(2u, -1, th, ph);
    const cplx ym = sw_sph_harmonic({-1, 2, -1}, th, ph).value;
    const cplx yp = sw_sph_harmonic({1, 2, -1}, th, ph).value;
    Covector dr;
    for (int i = 1; i < 4; ++i) dr[i] = x[static_cast<std::size_t>(i)] / r;
    // eps-+ = (r/sqrt2)(dtheta +- i sin(theta) dphi) in Cartesian components.
    const double st = std::sin(th), ct = std::cos(th), sf = std::sin(ph), cf = std::cos(ph);
    Covector dth, sdph;
    dth[1] = ct * cf / r;
    dth[2] = ct * sf / r;
    dth[3] = -st / r;
    sdph[1] = -sf / r;
    sdph[2] = cf / r;
    const Covector em = (dth + I * sdph) * cplx(r / std::sqrt(2.0));
    const Covector ep = (dth - I * sdph) * cplx(r / std::sqrt(2.0));
    const cplx phase = std::exp(-I * (lab.p0 * x[0]));
    const Covector want = (dr * (rad.r0 * y0) + em * (rad.rm * ym) + ep * (rad.rp * yp)) * phase;
    CHECK(norm(mode.potential(x) - want) < 1e-14);
  }
}

TEST_CASE("axis and origin values are finite limits") {
  const ModeField cyl(CylindricalLabel{1.0, 0.2, 1, Helicity::positive});
  const Coords on_axis{0.3, 0.0, 0.0, 0.5};
  const Coords near_axis{0.3, 1e-7, 0.0, 0.5};
  CHECK(norm(cyl.potential(on_axis) - cyl.potential(near_axis)) < 1e-6);
  const ModeField sph(SphericalLabel{1.0, 1, 0, Helicity::negative});
  const Coords origin{0.0, 0.0, 0.0, 0.0};
  const Coords near_origin{0.0, 1e-7, 0.0, 1e-7};
  CHECK(norm(sph.potential(origin) - sph.potential(near_origin)) < 1e-6);
  CHECK(norm(sph.potential(origin)) > 0.0);
  const ModeField sph2(SphericalLabel{1.0, 2, 1, Helicity::negative});
  CHECK(norm(sph2.potential(origin)) == 0.0);
}

TEST_CASE("label validation quotes the constraint") {
  try {
    ModeField bad(SphericalLabel{1.0, 0, 0, Helicity::positive});
    FAIL("l = 0 was accepted");
  } catch (const InvalidLabelError& e) {
    CHECK(std::string(e.what()).find("l must be ≥ 1") != std::string::npos);
  }
  CHECK_THROWS_AS(ModeField(SphericalLabel{1.0, 2, 3, Helicity::positive}), InvalidLabelError);
  CHECK_THROWS_AS(ModeField(SphericalLabel{-1.0, 2, 0, Helicity::positive}), InvalidLabelError);
  CHECK_THROWS_AS(ModeField(CylindricalLabel{1.0, 1.5, 0, Helicity::positive}), InvalidLabelError);
  CHECK_THROWS_AS(ModeField(PlaneWaveLabel{{0, 0, 0}, Helicity::positive}), InvalidLabelError);
  CHECK_THROWS_AS(helicity_from_int(0), InvalidLabelError);
  CHECK(parse_family("sph") == Family::spherical);
  CHECK_THROWS(parse_family("toroidal"));
}

TEST_CASE("alpha = 0 sector") {
  // Only m = +-1 with p3 = m s p0 survives.
  CHECK(ModeField(CylindricalLabel{1.0, 1.0, 0, Helicity::positive}).identically_zero());
  CHECK(ModeField(CylindricalLabel{1.0, -1.0, 1, Helicity::positive}).identically_zero());
  CHECK_FALSE(ModeField(CylindricalLabel{1.0, 1.0, 1, Helicity::positive}).identically_zero());
  CHECK_FALSE(ModeField(CylindricalLabel{1.0, 1.0, -1, Helicity::negative}).identically_zero());
  CHECK_FALSE(ModeField(CylindricalLabel{1.0, 0.5, 0, Helicity::positive}).identically_zero());
  const ModeField zero(CylindricalLabel{1.0, 1.0, 2, Helicity::positive});
  for (const auto& x : points) CHECK(norm(zero.potential(x)) == 0.0);
}

TEST_CASE("analytic jets agree with finite differences of the potential") {
  for (const ModeLabel& lab : {ModeLabel(PlaneWaveLabel{{0.3, 0.9, -0.4}, Helicity::positive}),
                               ModeLabel(CylindricalLabel{1.2, 0.4, -2, Helicity::negative}),
                               ModeLabel(SphericalLabel{0.8, 3, 2, Helicity::positive})}) {
    const ModeField mode(lab);
    for (const auto& x : points) {
      const auto jet = mode.jet(x);
      for (int k = 0; k < 4; ++k) CHECK(std::abs(jet[static_cast<std::size_t>(k)].v - mode.potential(x)[k]) < 1e-15);
      for (int a = 0; a < 4; ++a) {
        const double h = 1e-4;
        Coords y1 = x, y2 = x;
        y1[static_cast<std::size_t>(a)] += h;
        y2[static_cast<std::size_t>(a)] -= h;
        const Covector fd = (mode.potential(y1) - mode.potential(y2)) * cplx(1.0 / (2 * h));
        for (int k = 0; k < 4; ++k) CHECK(std::abs(jet[static_cast<std::size_t>(k)].d[a] - fd[k]) < 1e-8);
      }
    }
  }
}
