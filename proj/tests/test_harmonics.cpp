#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/spherical_harmonic.hpp>

#include "photon/harmonics.hpp"
#include "photon/quadrature.hpp"

using namespace photon;

TEST_CASE("spin-weighted spherical harmonics: frozen values") {
  // Spin +-1 values were produced symbolically by applying
  // eth = -(d_theta + i csc d_phi - n cot) to the Condon-Shortley Y_lm
  // and dividing by the ladder factor sqrt(l(l+1)).
  struct Row {
    int n, l, m;
    double theta, phi, re, im;
  };
  const Row rows[] = {
      {0, 1, 0, 0.7, 0.3, 0.37370381391652457, 0},
      {1, 1, 0, 0.7, 0.3, 0.22257344192657688, 0},
      {-1, 1, 0, 0.7, 0.3, -0.22257344192657688, 0},
      {1, 1, 0, 2.1, -1.2, 0.29823378594604283, 0},
      {1, 1, 1, 0.7, 0.3, -0.054883459369713124, -0.016977443487029193},
      {-1, 1, 1, 0.7, 0.3, -0.41189634892957455, -0.12741447180577134},
      {-1, 1, 1, 2.1, -1.2, -0.043833228494940167, 0.11274570977629393},
      {1, 2, -1, 0.7, 0.3, -0.28166279127388022, 0.087128511507240214},
      {-1, 2, -1, 2.1, -1.2, 0.0016668729622037351, 0.004287449993610839},
      {1, 3, 2, 0.7, 0.3, 0.12152615488533813, 0.083140515733293383},
      {-1, 3, 2, 2.1, -1.2, 0.23381272019598279, 0.21417579280693111},
      {0, 3, 2, 2.1, -1.2, 0.28348850525363239, 0.25967952177048303},
  };
  for (const auto& r : rows) {
    CAPTURE(r.n);
    CAPTURE(r.l);
    CAPTURE(r.m);
    const auto v = sw_sph_harmonic({r.n, r.l, r.m}, r.theta, r.phi);
    CHECK(v.spin_weight == r.n);
    CHECK(std::abs(v.value - cplx(r.re, r.im)) < 1e-14);
  }
}

TEST_CASE("spin 0 reduces to the Condon-Shortley harmonics") {
  double worst = 0.0;
  for (int l = 0; l <= 12; ++l)
    for (int m = -l; m <= l; ++m)
      for (double th : {0.0, 0.3, 1.1, 2.0, 3.0, pi})
        for (double ph : {0.0, 0.9, -2.4}) {
          const cplx ref = boost::math::spherical_harmonic(static_cast<unsigned>(l), m, th, ph);
          worst = std::max(worst, std::abs(sw_sph_harmonic({0, l, m}, th, ph).value - ref));
        }
  CHECK(worst < 1e-12);
}

TEST_CASE("poles, vanishing labels and validation") {
  CHECK(sw_sph_harmonic({2, 1, 0}, 0.8, 0.1).value == cplx(0.0));
  CHECK(std::abs(sw_sph_harmonic({1, 2, 0}, 0.0, 0.4).value) == 0.0);
  CHECK_THROWS_AS(sw_sph_harmonic({1, 1, -1}, 0.0, 0.4), DegenerateAxisError);
  CHECK_THROWS_AS(sw_sph_harmonic({0, 2, 3}, 1.0, 0.0), InvalidLabelError);
  CHECK_THROWS_AS(sw_sph_harmonic({0, 2, 1}, 4.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(sw_cyl_harmonic({0, -1.0, 1}, 1.0, 0.0), InvalidLabelError);
}

TEST_CASE("cylindrical harmonics are Bessel functions times e^{i m phi}") {
  for (int n = -1; n <= 1; ++n)
    for (int m = -4; m <= 4; ++m) {
      const double alpha = 1.3, rho = 2.7, phi = 0.8;
      const cplx ref = boost::math::cyl_bessel_j(m + n, alpha * rho) * std::exp(I * (m * phi));
      CHECK(std::abs(sw_cyl_harmonic({n, alpha, m}, rho, phi).value - ref) < 1e-13);
    }
}

TEST_CASE("orthonormality of spin-weighted harmonics on the sphere") {
  const auto mu = gauss_legendre(14);
  const auto ph = periodic_trapezoid(14);
  for (int n = -2; n <= 2; ++n)
    for (int l1 = std::abs(n); l1 <= 5; ++l1)
      for (int l2 = std::abs(n); l2 <= 5; ++l2)
        for (int m = -std::min(l1, l2); m <= std::min(l1, l2); ++m) {
          cplx s = 0.0;
          for (std::size_t j = 0; j < mu.x.size(); ++j)
            for (std::size_t k = 0; k < ph.x.size(); ++k)
              s += mu.w[j] * ph.w[k] * std::conj(sw_sph_harmonic({n, l1, m}, std::acos(mu.x[j]), ph.x[k]).value) *
                   sw_sph_harmonic({n, l2, m}, std::acos(mu.x[j]), ph.x[k]).value;
          CHECK(std::abs(s - (l1 == l2 ? 1.0 : 0.0)) < 1e-12);
        }
}

TEST_CASE("analytic ladder factors") {
  const auto up = eth_analytic(SphHarmonicLabel{0, 3, 1});
  CHECK(up.label.n == 1);
  CHECK(up.factor == doctest::Approx(std::sqrt(12.0)));
  const auto down = ethbar_analytic(SphHarmonicLabel{1, 3, 1});
  CHECK(down.label.n == 0);
  CHECK(down.factor == doctest::Approx(-std::sqrt(12.0)));
  CHECK(ethbar_eth_eigencheck(SphHarmonicLabel{1, 3, 1}) == doctest::Approx(-10.0));
  const auto cu = eth_analytic(CylHarmonicLabel{0, 1.7, 2});
  CHECK(cu.label.n == 1);
  CHECK(cu.factor == doctest::Approx(1.7));
  CHECK(ethbar_analytic(CylHarmonicLabel{0, 1.7, 2}).factor == doctest::Approx(-1.7));
  CHECK(ethbar_eth_eigencheck(CylHarmonicLabel{0, 1.7, 2}) == doctest::Approx(-1.7 * 1.7));
}

namespace {

double interior_error(const HarmonicGrid& got, const HarmonicGrid& want, double factor) {
  double e = 0.0, ref = 0.0;
  for (std::size_t i = 4; i + 4 < got.u.size(); ++i)
    for (int k = 0; k < got.n_phi; ++k) {
      e = std::max(e, std::abs(got.at(static_cast<int>(i), k) - factor * want.at(static_cast<int>(i), k)));
      ref = std::max(ref, std::abs(factor * want.at(static_cast<int>(i), k)));
    }
  return e / ref;
}

}  // namespace

TEST_CASE("numeric eth reproduces the analytic ladders") {
  const SphHarmonicLabel y{0, 3, -2};
  const auto g = sample_harmonic(y, 0.3, pi - 0.3, 301, 16);
  const auto up = eth_analytic(y);
  CHECK(eth_numeric(g).spin_weight == 1);
  CHECK(interior_error(eth_numeric(g), sample_harmonic(up.label, 0.3, pi - 0.3, 301, 16), up.factor) < 1e-7);
  const auto down = ethbar_analytic(y);
  CHECK(interior_error(ethbar_numeric(g), sample_harmonic(down.label, 0.3, pi - 0.3, 301, 16), down.factor) < 1e-7);

  const CylHarmonicLabel z{1, 0.9, 2};
  const auto gc = sample_harmonic(z, 0.5, 6.0, 301, 16);
  const auto cu = eth_analytic(z);
  CHECK(interior_error(eth_numeric(gc), sample_harmonic(cu.label, 0.5, 6.0, 301, 16), cu.factor) < 1e-7);
}

TEST_CASE("numeric eth refuses under-resolved or singular grids") {
  const auto coarse = sample_harmonic(SphHarmonicLabel{0, 6, 5}, 0.3, 2.8, 51, 8);
  CHECK_THROWS_AS(eth_numeric(coarse), ResolutionError);
  const auto pole = sample_harmonic(SphHarmonicLabel{0, 2, 1}, 0.0, 1.0, 21, 16);
  CHECK_THROWS_AS(eth_numeric(pole), DegenerateAxisError);
  const auto axis = sample_harmonic(CylHarmonicLabel{0, 1.0, 1}, 0.0, 1.0, 21, 16);
  CHECK_THROWS_AS(ethbar_numeric(axis), DegenerateAxisError);
}
