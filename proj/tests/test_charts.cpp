#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "photon/charts.hpp"

using namespace photon;

namespace {

using Coords = std::array<double, 4>;

double dist(const Coords& a, const Coords& b) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

const Coords samples[] = {{0.3, 1.0, 2.0, -0.5}, {-1.2, -0.4, 0.7, 2.2}, {2.0, 0.01, -3.0, 0.0}, {0.0, -2.0, -1.0, -1.5}};

}  // namespace

TEST_CASE("chart round trips") {
  for (const auto& x : samples) {
    const auto p = SpacetimePoint::from_lorentz(x);
    CHECK(dist(p.to_cylindrical().lorentz_coords(), x) < 1e-14);
    CHECK(dist(p.to_spherical().lorentz_coords(), x) < 1e-14);
    CHECK(dist(p.to_spherical().to_cylindrical().to_lorentz().coords(), x) < 1e-14);
  }
  const auto c = SpacetimePoint::lorentz(0.0, 0.0, 1.0, 0.0).to_cylindrical();
  CHECK(c[1] == doctest::Approx(1.0));
  CHECK(c[2] == doctest::Approx(pi / 2));
  const auto s = SpacetimePoint::lorentz(0.0, 0.0, 0.0, -2.0).to_spherical();
  CHECK(s[1] == doctest::Approx(2.0));
  CHECK(s[2] == doctest::Approx(pi));
  CHECK(normalize_angle(3 * pi) == doctest::Approx(pi).epsilon(1e-14));
  CHECK(normalize_angle(-0.5) == doctest::Approx(2 * pi - 0.5));
}

TEST_CASE("chart jacobian matches finite differences") {
  for (Chart chart : {Chart::cylindrical, Chart::spherical}) {
    for (const auto& x : samples) {
      const auto p = SpacetimePoint::from_lorentz(x).to(chart);
      const auto jac = chart_jacobian(p);
      for (int k = 0; k < 4; ++k) {
        auto q1 = p.coords(), q2 = p.coords();
        const double h = 1e-6;
        q1[static_cast<std::size_t>(k)] += h;
        q2[static_cast<std::size_t>(k)] -= h;
        auto make = [&](const Coords& q) {
          return chart == Chart::cylindrical ? SpacetimePoint::cylindrical(q[0], q[1], q[2], q[3])
                                             : SpacetimePoint::spherical(q[0], q[1], q[2], q[3]);
        };
        const auto a = make(q1).lorentz_coords(), b = make(q2).lorentz_coords();
        for (int mu = 0; mu < 4; ++mu)
          CHECK(jac[mu][k] == doctest::Approx((a[mu] - b[mu]) / (2 * h)).epsilon(1e-7).scale(1.0));
      }
    }
  }
}

TEST_CASE("covector components transform both ways and preserve the metric") {
  const Covector a{cplx(0.1, 0.2), cplx(-1.0, 0.5), cplx(0.3, 0.0), cplx(0.0, -0.7)};
  for (const auto& x : samples) {
    const auto p = SpacetimePoint::from_lorentz(x).to_spherical();
    const auto ac = chart_components(a, p);
    CHECK(norm(from_chart_components(ac, p) - a) < 1e-14);
    const auto g = inverse_metric_diag(p);
    cplx s = 0.0;
    for (int k = 0; k < 4; ++k) s += g[static_cast<std::size_t>(k)] * ac[static_cast<std::size_t>(k)] * ac[static_cast<std::size_t>(k)];
    CHECK(std::abs(s - contract(a, a)) < 1e-13);
  }
}

TEST_CASE("dyads form a null frame orthogonal to the axis") {
  for (const auto& x : samples) {
    const auto p = SpacetimePoint::from_lorentz(x);
    for (const Dyad& d : {dyad_cyl(p), dyad_sph(p)}) {
      CHECK(std::abs(contract(d.plus, d.plus)) < 1e-14);
      CHECK(std::abs(contract(d.minus, d.minus)) < 1e-14);
      CHECK(std::abs(contract(d.plus, d.minus) + 1.0) < 1e-14);
      CHECK(std::abs(contract(d.axis, d.plus)) < 1e-14);
      CHECK(std::abs(contract(d.axis, d.axis) + 1.0) < 1e-14);
      CHECK(norm(d.plus - conj(d.minus)) < 1e-14);
    }
  }
  // At phi = 0 the cylindrical eps+ = (drho - i rho dphi)/sqrt2 is (dx - i dy)/sqrt2.
  const Dyad d = dyad_cyl(SpacetimePoint::lorentz(0, 2.0, 0.0, 0.3));
  CHECK(std::abs(d.plus[1] - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(d.plus[2] + I / std::sqrt(2.0)) < 1e-15);
  CHECK_THROWS_AS(dyad_cyl(SpacetimePoint::lorentz(0, 0, 0, 1)), DegenerateAxisError);
  CHECK_THROWS_AS(dyad_sph(SpacetimePoint::lorentz(0, 0, 0, 1)), DegenerateAxisError);
}

TEST_CASE("dyad derivative tables match finite differences of the frame") {
  for (Chart chart : {Chart::cylindrical, Chart::spherical}) {
    for (const auto& x : samples) {
      const auto p = SpacetimePoint::from_lorentz(x);
      const auto frame = [&](const Coords& y) {
        const auto q = SpacetimePoint::from_lorentz(y);
        return chart == Chart::cylindrical ? dyad_cyl(q) : dyad_sph(q);
      };
      const Dyad d0 = frame(x);
      const auto table = dyad_derivatives(chart, p);
      for (int i = 0; i < 3; ++i) {
        const Tensor2 t = table.lorentz_tensor(i, d0);
        for (int a = 0; a < 4; ++a) {
          Coords y1 = x, y2 = x;
          const double h = 1e-5;
          y1[static_cast<std::size_t>(a)] += h;
          y2[static_cast<std::size_t>(a)] -= h;
          const Covector fd = (frame(y1)[i] - frame(y2)[i]) * cplx(1.0 / (2 * h));
          for (int b = 0; b < 4; ++b) CHECK(std::abs(t[a][b] - fd[b]) < 1e-8);
        }
      }
    }
  }
}

TEST_CASE("Levi-Civita symbol") {
  CHECK(levi_civita(0, 1, 2, 3) == 1.0);
  CHECK(levi_civita(1, 0, 2, 3) == -1.0);
  CHECK(levi_civita(3, 2, 1, 0) == 1.0);
  CHECK(levi_civita(0, 0, 2, 3) == 0.0);
}
