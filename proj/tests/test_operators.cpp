#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "photon/operators.hpp"

using namespace photon;

namespace {

using Coords = std::array<double, 4>;
const std::vector<Coords> points{{0.2, 0.9, -0.4, 0.3}, {-0.7, -1.2, 0.8, 1.5}, {1.1, 0.3, 1.9, -0.8}};

Tensor2 random_two_form(unsigned seed) {
  Tensor2 f{};
  double v = 0.1 * seed;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      v = std::fmod(v * 7.31 + 0.47, 2.0) - 1.0;
      f[a][b] = cplx(v, 0.5 * v * v - 0.2);
      f[b][a] = -f[a][b];
    }
  return f;
}

}  // namespace

TEST_CASE("Killing fields and the Poincare algebra") {
  const auto gens = poincare_generators();
  REQUIRE(gens.size() == 10u);
  const auto table = bracket_table();
  CHECK(table.size() == 45u);
  for (const auto& b : table) {
    CAPTURE(b.lhs);
    CAPTURE(b.rhs);
    CHECK(b.match);
  }
  for (const auto& u : gens)
    for (const auto& v : gens) CHECK_NOTHROW(commutator_check(u, v));
  // [L1, L2] = i L3 with L_i = M_jk.
  const KillingField l12 = bracket(angular_generator(1), angular_generator(2));
  CHECK(l12 == I * angular_generator(3));
  // [L3, L+-] = +- L+-.
  CHECK(bracket(angular_generator(3), ladder_generator(1)) == ladder_generator(1));
  CHECK(bracket(angular_generator(3), ladder_generator(-1)) == cplx(-1.0) * ladder_generator(-1));
  CHECK((momentum_generator(1) - momentum_generator(1)).is_zero());
  // P^1 = -P_1 with the mostly-minus metric.
  CHECK(momentum_generator_up(1) == cplx(-1.0) * momentum_generator(1));
}

TEST_CASE("eigen-residuals of the complete observable sets") {
  for (const ModeLabel& lab : {ModeLabel(PlaneWaveLabel{{0.5, -1.0, 0.7}, Helicity::positive}),
                               ModeLabel(CylindricalLabel{1.5, 0.6, 2, Helicity::negative}),
                               ModeLabel(SphericalLabel{1.1, 3, -2, Helicity::positive})}) {
    const ModeField mode(lab);
    for (Observable o : complete_set(mode.family())) {
      CAPTURE(observable_name(o));
      CHECK(eigen_residual(mode, o, points, DerivativePath::analytic).residual < 1e-10);
      CHECK(eigen_residual(mode, o, points, DerivativePath::finite_difference, 1e-2).residual < 1e-6);
    }
  }
  const SphericalLabel sl{1.0, 3, -2, Helicity::negative};
  CHECK(expected_eigenvalue(sl, Observable::L2) == cplx(12.0));
  CHECK(expected_eigenvalue(sl, Observable::L3) == cplx(-2.0));
  CHECK(expected_eigenvalue(sl, Observable::S) == cplx(-1.0));
  CHECK(expected_eigenvalue(sl, Observable::P0) == cplx(1.0));
  CHECK(complete_set(Family::plane_wave).size() == 4u);
}

TEST_CASE("a wrong eigenvalue is detected") {
  // The P0 residual of a mode with a shifted energy label is order one.
  const ModeField a(SphericalLabel{1.0, 2, 0, Helicity::positive});
  const ModeField b(SphericalLabel{1.3, 2, 0, Helicity::positive});
  const CovectorFunction mixed = [&](const Coords& x) { return a.potential(x) + b.potential(x); };
  const CovectorJet jet = fd_jet(mixed, points[0], 1e-2);
  const Covector p0a = lie_derivative(momentum_generator_up(0), jet, points[0]);
  CHECK(norm(p0a - mixed(points[0])) > 1e-3);
}

TEST_CASE("helicity dual") {
  for (unsigned seed = 1; seed <= 20; ++seed) {
    const Tensor2 f = random_two_form(seed);
    CHECK(norm(helicity_dual(helicity_dual(f)) - f) < 1e-14);
  }
  // F_01 = 1 gives (S F)_23 = -i eps_2301 F^01 = i with epsilon_0123 = +1.
  Tensor2 f{};
  f[0][1] = 1.0;
  f[1][0] = -1.0;
  const Tensor2 d = helicity_dual(f);
  CHECK(std::abs(d[2][3] - I) < 1e-15);
  CHECK(std::abs(d[3][2] + I) < 1e-15);
  CHECK(std::abs(d[0][1]) == 0.0);
  Tensor2 bad{};
  bad[0][1] = 1.0;
  CHECK_THROWS_AS(helicity_dual(bad), std::invalid_argument);
}

TEST_CASE("Pauli-Lubanski identity and finite-difference jets") {
  const ModeField mode(CylindricalLabel{1.2, -0.3, 1, Helicity::positive});
  CHECK(pauli_lubanski_residual(mode, points[1]) < 1e-6);
  const CovectorFunction f = [&](const Coords& x) { return mode.potential(x); };
  const auto fd = fd_jet(f, points[2], 1e-2);
  const auto an = mode.jet(points[2]);
  for (int k = 0; k < 4; ++k)
    for (int a = 0; a < 4; ++a) {
      CHECK(std::abs(fd[static_cast<std::size_t>(k)].d[a] - an[static_cast<std::size_t>(k)].d[a]) < 1e-8);
      for (int b = 0; b < 4; ++b)
        CHECK(std::abs(fd[static_cast<std::size_t>(k)].h[a][b] - an[static_cast<std::size_t>(k)].h[a][b]) < 1e-7);
    }
}

TEST_CASE("grid residuals converge at fourth order") {
  const ModeField mode(SphericalLabel{1.0, 2, 1, Helicity::negative});
  std::array<double, 2> box{}, div{};
  for (int level = 0; level < 2; ++level) {
    const int n = level == 0 ? 9 : 17;
    const std::vector<GridAxis> axes{{"t", 0.1, 0.5, n}, {"x", 0.6, 1.0, n}, {"y", -0.3, 0.1, n}, {"z", 0.2, 0.6, n}};
    const FieldGrid g = sample_grid(mode, Chart::lorentz, make_axes(Chart::lorentz, axes));
    box[static_cast<std::size_t>(level)] = dalembertian_residual(g).relative;
    const auto d = divergence_residual(g);
    div[static_cast<std::size_t>(level)] = d.relative;
    CHECK(d.max_a0 < 1e-12);
  }
  CHECK(box[1] < 1e-6);
  CHECK(std::log2(box[0] / box[1]) > 3.5);
  CHECK(std::log2(div[0] / div[1]) > 3.5);
}
