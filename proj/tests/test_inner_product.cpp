#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "photon/inner_product.hpp"

using namespace photon;

TEST_CASE("quadrature rules") {
  const auto g = gauss_legendre(8, 0.0, 2.0);
  double s = 0.0;
  for (std::size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * std::pow(g.x[i], 15);
  CHECK(s == doctest::Approx(std::pow(2.0, 16) / 16).epsilon(1e-14));
  const auto c = composite_gauss_legendre(0.0, pi, 5, 6);
  double sc = 0.0;
  for (std::size_t i = 0; i < c.x.size(); ++i) sc += c.w[i] * std::sin(c.x[i]);
  CHECK(sc == doctest::Approx(2.0).epsilon(1e-13));
  const auto t = periodic_trapezoid(9);
  double st = 0.0;
  for (std::size_t i = 0; i < t.x.size(); ++i) st += t.w[i] * std::cos(3 * t.x[i]) * std::cos(3 * t.x[i]);
  CHECK(st == doctest::Approx(pi).epsilon(1e-14));
  std::vector<double> v;
  for (int i = 0; i < 1001; ++i) v.push_back(1.0 / (i + 1));
  CHECK(pairwise_sum(v) == pairwise_sum(v));
  CHECK(pairwise_sum(v) == doctest::Approx(7.4864698615493459).epsilon(1e-14));
}

TEST_CASE("quadrature spec parsing") {
  const auto q = parse_quadrature_spec("chart=cylindrical,r_max=25,panels=8,order=12,n_phi=24,tol=1e-7");
  CHECK(q.chart == Chart::cylindrical);
  CHECK(q.r_max == 25.0);
  CHECK(q.radial_panels == 8);
  CHECK(q.radial_order == 12);
  CHECK(q.n_phi == 24);
  CHECK(q.tolerance == 1e-7);
  const auto d = q.doubled();
  CHECK(d.radial_panels == 16);
  CHECK(d.n_phi == 48);
  CHECK_THROWS_AS(parse_quadrature_spec("bogus=1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_quadrature_spec("r_max=abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_quadrature_spec("chart=torus"), std::invalid_argument);
}

TEST_CASE("slice node weights integrate the volume") {
  QuadratureSpec q;
  q.r_max = 3.0;
  for (Chart chart : {Chart::spherical, Chart::cylindrical, Chart::lorentz}) {
    q.chart = chart;
    const auto n = slice_nodes(q);
    double vol = 0.0;
    for (double w : n.weight) vol += w;
    const double expected = chart == Chart::spherical ? 4.0 / 3.0 * pi * 27.0 : (chart == Chart::cylindrical ? pi * 9.0 : 6.0);
    CHECK(vol == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("current of a plane wave and its conservation") {
  const ModeField a(PlaneWaveLabel{{0.3, 0.4, 1.2}, Helicity::positive});
  const ModeField b(SphericalLabel{0.9, 2, 1, Helicity::negative});
  const std::array<double, 4> x{0.1, 0.5, -0.2, 0.8};
  // For a plane wave j_0 = 2 p0 N^2 with N^2 = 1 / ((2pi)^3 2 p0).
  const auto j = current(a.jet(x), a.jet(x));
  CHECK(std::abs(j[0] - std::pow(2 * pi, -3.0)) < 1e-15);
  CHECK(std::abs(current_divergence(a.jet(x), b.jet(x))) < 1e-14);
  CHECK(std::abs(current_divergence(b.jet(x), b.jet(x))) < 1e-14);
}

TEST_CASE("wave-packet norm, orthogonality and hermitian symmetry") {
  QuadratureSpec q;
  q.chart = Chart::spherical;
  const WavePacket w1(SphericalLabel{1.0, 1, 0, Helicity::positive}, 1.0, 0.12);
  const WavePacket w2(SphericalLabel{1.0, 1, 1, Helicity::positive}, 1.0, 0.12);
  const WavePacket w3(SphericalLabel{1.0, 2, 0, Helicity::positive}, 1.05, 0.12);
  CHECK(w1.expected_norm() == doctest::Approx(0.12 * std::sqrt(2 * pi)).epsilon(1e-14));
  const auto n1 = inner(w1.sampler(), w1.sampler(), q);
  CHECK(n1.converged);
  CHECK(std::abs(n1.value - w1.expected_norm()) / w1.expected_norm() < 1e-3);
  CHECK(std::abs(inner(w1.sampler(), w2.sampler(), q).value) / n1.value.real() < 1e-10);
  const cplx ab = inner(w1.sampler(), w3.sampler(), q).value;
  const cplx ba = inner(w3.sampler(), w1.sampler(), q).value;
  CHECK(std::abs(ab - std::conj(ba)) < 1e-12);
  // The same integral twice is bit-identical.
  CHECK(inner(w1.sampler(), w1.sampler(), q).value == n1.value);
}

TEST_CASE("packet construction limits") {
  CHECK_THROWS_AS(WavePacket(SphericalLabel{1.0, 1, 0, Helicity::positive}, 1.0, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(WavePacket(CylindricalLabel{1.0, 0.5, 0, Helicity::positive}, 1.0, 0.1), std::invalid_argument);
}

TEST_CASE("under-resolved quadrature is reported") {
  QuadratureSpec q;
  q.chart = Chart::spherical;
  q.radial_panels = 2;
  q.radial_order = 4;
  q.n_theta = 4;
  q.n_phi = 4;
  const WavePacket w(SphericalLabel{2.0, 3, 2, Helicity::positive}, 2.0, 0.2);
  CHECK_THROWS_AS(inner(w.sampler(), w.sampler(), q), ConvergenceError);
}

TEST_CASE("Bessel overlap tables") {
  for (OverlapKind k : all_overlap_kinds()) {
    const bool delta = k == OverlapKind::cyl_delta || k == OverlapKind::sph_delta;
    const double p = delta ? 2.1 : 1.0;
    const double pp = delta ? 2.0 : (k == OverlapKind::sph_mixed_equal ? 1.0 : 1.6);
    const auto r = bessel_overlap(k, 2, p, pp);
    CAPTURE(overlap_name(k));
    CHECK(r.pass);
    CHECK(r.error_windowed() < 1e-3);
    CHECK(r.error_damped() < 1e-3);
    CHECK(parse_overlap_kind(overlap_name(k)) == k);
  }
  const auto inv = bessel_overlap(OverlapKind::sph_inverse_r, 1, 1.0, 2.0);
  CHECK(inv.closed_form == doctest::Approx(std::pow(0.5, 1.5) / 3.0));
  CHECK_THROWS_AS(bessel_overlap(OverlapKind::sph_mixed_upper, 1, 1.5, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(bessel_overlap(OverlapKind::sph_inverse_r, 1, 2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(parse_overlap_kind("hankel"), std::invalid_argument);
}
