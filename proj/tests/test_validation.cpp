#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <map>
#include <set>

#include "photon/validation.hpp"

using namespace photon;

TEST_CASE("claim coverage lock") {
  // Every property the library promises is owned by exactly one check.
  const std::set<std::string> expected{
      "complete_set_plane", "complete_set_cylindrical", "complete_set_spherical", "pauli_lubanski_identity",
      "maxwell_coulomb_plane", "plane_wave_transversality", "maxwell_coulomb_cylindrical",
      "cylindrical_reduced_maxwell", "cylindrical_gauge_constraint", "maxwell_coulomb_spherical",
      "spherical_radial_equations", "spherical_divergence_constraint", "fd_grid_convergence", "helicity_involution",
      "helicity_eigenfields", "cylindrical_helicity_coefficients", "spherical_helicity_radial",
      "helicity_commutes_with_momentum", "poincare_algebra", "null_four_momentum", "generator_hermiticity",
      "dyad_null_frame", "dyad_lie_invariance", "cylindrical_eth_ladders", "spherical_eth_ladders",
      "spin_weighted_orthonormality", "spherical_ladder_on_dyads", "spherical_angular_ladders",
      "alpha_zero_degeneracy", "spherical_l_positive", "representation_consistency", "spherical_orthonormality",
      "cylindrical_orthonormality", "delta_normalization", "cauchy_surface_independence", "current_conservation",
      "inner_product_positivity", "sesquilinearity", "bessel_overlap_tables", "gauge_invariance",
      "coulomb_form_equivalence"};
  std::map<std::string, int> owners;
  for (const auto& [claim, check] : claim_manifest()) ++owners[claim];
  for (const auto& c : expected) {
    CAPTURE(c);
    CHECK(owners[c] == 1);
  }
  CHECK(owners.size() == expected.size());
  std::set<std::string> ids;
  for (const auto& d : check_registry()) CHECK(ids.insert(d.suite + "/" + d.name).second);
}

TEST_CASE("seeded sampling is reproducible and respects the label ranges") {
  const auto a = random_labels(Family::spherical, 30, 42), b = random_labels(Family::spherical, 30, 42);
  const auto c = random_labels(Family::spherical, 30, 43);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(describe(a[i]) == describe(b[i]));
    differs = differs || describe(a[i]) != describe(c[i]);
    const auto& s = std::get<SphericalLabel>(a[i]);
    CHECK(s.l >= 1);
    CHECK(s.l <= 5);
    CHECK(std::abs(s.m) <= s.l);
    CHECK(s.p0 >= 0.5);
    CHECK(s.p0 <= 2.0);
  }
  CHECK(differs);
  for (const auto& l : random_labels(Family::cylindrical, 50, 7)) {
    const auto& cl = std::get<CylindricalLabel>(l);
    CHECK(std::abs(cl.p3) < cl.p0);
    CHECK(std::abs(cl.m) <= 4);
  }
  for (const auto& l : random_labels(Family::plane_wave, 50, 7)) CHECK(std::get<PlaneWaveLabel>(l).p0() >= 0.3);
  for (const auto& x : random_points(40, 9)) CHECK(std::hypot(x[1], x[2]) >= 0.2);
}

TEST_CASE("report bookkeeping") {
  CheckReport r;
  r.add("c", "op", "label", "grid", 1e-12, 1e-10);
  r.add_at_least("c", "order", "label", "grid", 3.9, 3.5);
  r.finalize();
  CHECK(r.pass);
  CHECK(r.worst_ratio() == doctest::Approx(3.5 / 3.9));
  r.add("c", "op", "label", "grid", std::nan(""), 1.0);
  r.finalize();
  CHECK_FALSE(r.pass);
  CheckReport empty;
  empty.finalize();
  CHECK_FALSE(empty.pass);
  CheckReport errored;
  errored.add("c", "op", "label", "grid", 0.0, 1.0);
  errored.errors.push_back("boom");
  errored.finalize();
  CHECK_FALSE(errored.pass);
}

TEST_CASE("suites by name") {
  CHECK_THROWS_AS(run_suite("nonexistent"), UnknownSuiteError);
  try {
    run_suite("nonexistent");
  } catch (const UnknownSuiteError& e) {
    CHECK(std::string(e.what()).find("degeneracy") != std::string::npos);
  }
  CHECK(has_suite("all"));
  CHECK(has_suite("eigen"));
  const auto start = std::chrono::steady_clock::now();
  const CheckReport deg = run_degeneracy_suite();
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 1.0);
  CHECK(deg.pass);
  for (Family f : {Family::plane_wave, Family::cylindrical, Family::spherical}) {
    const CheckReport e = run_eigen_suite(f);
    CHECK(e.pass);
    CHECK(e.labels.size() >= 20u);
  }
}

TEST_CASE("explicit labels replace random sampling") {
  CheckSpec spec;
  spec.labels = {SphericalLabel{1.2, 2, 1, Helicity::negative}};
  const CheckReport r = run_check("field_equation/spherical", spec);
  CHECK(r.pass);
  REQUIRE(r.labels.size() == 1u);
  CHECK(r.labels[0] == describe(spec.labels[0]));
}

TEST_CASE("Jacobi-Anger reconstruction converges in the number of cylindrical modes") {
  const auto r10 = jacobi_anger(1.3, Helicity::positive, 10);
  const auto r20 = jacobi_anger(1.3, Helicity::positive, 20);
  CHECK(r20.max_error < 1e-8);
  CHECK(r20.max_error < r10.max_error);
  CHECK(r20.polarization_mismatch < 1e-13);
  CHECK(jacobi_anger(1.3, Helicity::negative, 0).max_error > 0.1);
}
