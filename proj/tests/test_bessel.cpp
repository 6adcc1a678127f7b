#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>

#include "photon/bessel.hpp"

using namespace photon;

namespace {

// Accuracy is measured against the local amplitude: the asymptotic envelope
// sqrt(2/(pi x)) where J oscillates, the value itself in the monotone region.
double amplitude(double nu, double x, double ref) {
  const double a = std::abs(ref);
  if (x > std::abs(nu) + 1.0) return std::max(a, std::sqrt(2.0 / (pi * x)));
  return a;
}

}  // namespace

TEST_CASE("frozen values from 30-digit arithmetic") {
  struct Row {
    double nu, x, value;
  };
  // mpmath.besselj at 30 significant digits
  const Row rows[] = {
      {0, 1.0, 0.76519768655796655145},   {1, 2.5, 0.49709410246427403801},
      {7, 12.3, -0.20758639935691098805}, {0, 30.0, -0.086367983581040211336},
      {3, 0.1, 2.0820315754756264895e-5}, {0.5, 1.3, 0.67428939675028973609},
      {4.5, 7.7, 0.12409973312419572819}, {-0.5, 2.0, -0.23478571040624846917},
      {12.5, 3.0, 7.8560184193127743674e-8}, {20, 5.0, 2.7703300521289416874e-11},
  };
  for (const auto& r : rows) {
    CAPTURE(r.nu);
    CAPTURE(r.x);
    CHECK(bessel_j(r.nu, r.x) == doctest::Approx(r.value).epsilon(1e-12));
  }
}

TEST_CASE("integer orders agree with Boost over the working range") {
  double worst = 0.0;
  for (int n = -12; n <= 40; ++n)
    for (double x = 0.0; x <= 80.0; x += 0.37) {
      const double ref = boost::math::cyl_bessel_j(n, x);
      const double scale = amplitude(n, x, ref);
      if (scale == 0.0) continue;
      worst = std::max(worst, std::abs(bessel_jn(n, x) - ref) / scale);
    }
  CHECK(worst < 1e-12);
}

TEST_CASE("half-integer orders agree with Boost") {
  double worst = 0.0;
  for (int l = -1; l <= 30; ++l)
    for (double x = 0.01; x <= 80.0; x += 0.41) {
      const double nu = l + 0.5;
      const double ref = boost::math::cyl_bessel_j(nu, x);
      worst = std::max(worst, std::abs(bessel_j(nu, x) - ref) / amplitude(nu, x, ref));
    }
  CHECK(worst < 1e-12);
}

TEST_CASE("spherical Bessel functions and their regular combinations") {
  for (int l = 0; l <= 20; ++l)
    for (double x : {1e-3, 0.2, 1.0, 3.7, 11.0, 42.0}) {
      const double ref = boost::math::sph_bessel(static_cast<unsigned>(l), x);
      CHECK(std::abs(sph_bessel_j(l, x) - ref) <= 1e-12 * amplitude(l + 0.5, x, ref) / std::max(1.0, x) + 1e-300);
    }
  CHECK(sph_bessel_j(-1, 2.0) == doctest::Approx(std::cos(2.0) / 2.0).epsilon(1e-14));
  CHECK(sph_bessel_j(0, 0.0) == 1.0);
  CHECK(sph_bessel_j(3, 0.0) == 0.0);

  // j_1(x)/x -> 1/3 and q_1(x) = j_0 - j_1/x -> 2/3 at the origin.
  CHECK(sph_bessel_j_over_x(1, 0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(sph_bessel_q(1, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  for (int l = 1; l <= 8; ++l)
    for (double x : {1e-4, 0.5, 6.0}) {
      const double jl = boost::math::sph_bessel(static_cast<unsigned>(l), x);
      const double jm = boost::math::sph_bessel(static_cast<unsigned>(l - 1), x);
      CHECK(sph_bessel_j_over_x(l, x) == doctest::Approx(jl / x).epsilon(1e-10));
      CHECK(sph_bessel_q(l, x) == doctest::Approx(jm - l * jl / x).epsilon(1e-10));
    }
}

TEST_CASE("tables match single evaluations") {
  for (double x : {0.0, 0.5, 2.0, 9.3, 35.0}) {
    const auto t = bessel_jn_table(25, x);
    REQUIRE(t.size() == 26u);
    for (int n = 0; n <= 25; ++n) CHECK(t[static_cast<std::size_t>(n)] == doctest::Approx(bessel_jn(n, x)).epsilon(1e-13));
    const auto s = sph_bessel_j_table(15, x);
    for (int l = 0; l <= 15; ++l) CHECK(s[static_cast<std::size_t>(l)] == doctest::Approx(sph_bessel_j(l, x)).epsilon(1e-13));
  }
}

TEST_CASE("recurrence and Bessel differential equation") {
  for (int n = 1; n <= 15; ++n)
    for (double x : {0.3, 2.2, 7.9, 19.0}) {
      const double lhs = bessel_jn(n - 1, x) + bessel_jn(n + 1, x);
      CHECK(lhs == doctest::Approx(2.0 * n / x * bessel_jn(n, x)).epsilon(1e-11).scale(1.0));
    }
  // Jet derivatives satisfy x^2 J'' + x J' + (x^2 - n^2) J = 0.
  for (int n = 0; n <= 6; ++n)
    for (double x0 : {0.4, 3.1, 12.5}) {
      const Jet j = bessel_jn(n, Jet::coordinate(0, x0));
      const cplx ode = x0 * x0 * j.h[0][0] + x0 * j.d[0] + (x0 * x0 - n * n) * j.v;
      CHECK(std::abs(ode) < 1e-11);
      const double h = 1e-4;
      const double fd = (bessel_jn(n, x0 + h) - bessel_jn(n, x0 - h)) / (2 * h);
      CHECK(j.d[0].real() == doctest::Approx(fd).epsilon(1e-7).scale(1.0));
    }
}

TEST_CASE("unsupported orders are rejected") {
  CHECK_THROWS_AS(bessel_j(0.3, 1.0), InvalidOrderError);
  CHECK_THROWS_AS(bessel_j(-1.5, 1.0), InvalidOrderError);
}
