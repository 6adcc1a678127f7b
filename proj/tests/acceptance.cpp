// Acceptance run: one PASS/FAIL line per criterion on stdout, check details on stderr.
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "photon/validation.hpp"

using namespace photon;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void absorb(Outcome& o, const CheckReport& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s%s worst=%.2e t=%.1fs", o.detail.empty() ? "" : "; ", r.id().c_str(),
                r.worst_ratio(), r.runtime);
  o.detail += buf;
  o.pass = o.pass && r.pass;
  for (const auto& e : r.errors) std::fprintf(stderr, "  %s: %s\n", r.id().c_str(), e.c_str());
  for (const auto& x : r.residuals)
    if (!x.pass)
      std::fprintf(stderr, "  %s: %s %s on %s = %.3e (tol %.1e)\n", r.id().c_str(), x.claim.c_str(), x.op.c_str(),
                   x.label.c_str(), x.value, x.tolerance);
}

Outcome checks(const std::vector<std::string>& ids, const CheckSpec& spec = {}) {
  Outcome o;
  for (const auto& id : ids) absorb(o, run_check(id, spec));
  return o;
}

Outcome timed(const std::vector<std::string>& ids, double budget_s, std::size_t min_labels = 0) {
  Outcome o;
  double total = 0.0;
  for (const auto& id : ids) {
    const CheckReport r = run_check(id);
    absorb(o, r);
    total += r.runtime;
    if (r.labels.size() < min_labels) {
      o.pass = false;
      std::fprintf(stderr, "  %s: only %zu labels sampled\n", id.c_str(), r.labels.size());
    }
  }
  if (total >= budget_s) {
    o.pass = false;
    std::fprintf(stderr, "  runtime %.1fs exceeds %.0fs\n", total, budget_s);
  }
  return o;
}

Outcome l_one_modes() {
  Outcome o = checks({"degeneracy/sectors"});
  CheckSpec spec;
  for (int m = -1; m <= 1; ++m)
    for (Helicity s : {Helicity::positive, Helicity::negative})
      spec.labels.push_back(SphericalLabel{0.7 + 0.3 * (m + 1), 1, m, s});
  const std::array<double, 4> x{0.3, 0.8, -0.5, 0.4};
  for (const auto& l : spec.labels)
    if (norm(ModeField(l).potential(x)) == 0.0) {
      o.pass = false;
      std::fprintf(stderr, "  %s vanishes\n", describe(l).c_str());
    }
  const Outcome rest = checks({"eigen/spherical", "field_equation/spherical", "field_equation/grid_convergence",
                               "helicity/eigenfields", "eigen/pauli_lubanski"},
                              spec);
  o.pass = o.pass && rest.pass;
  o.detail += "; l=1: " + rest.detail;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"eigenbasis", [] { return timed({"eigen/plane", "eigen/cylindrical", "eigen/spherical"}, 180.0, 20); }},
      {"field equations",
       [] {
         return checks({"field_equation/plane", "field_equation/cylindrical", "field_equation/spherical",
                        "field_equation/grid_convergence"});
       }},
      {"helicity algebra", [] { return checks({"helicity/involution", "helicity/eigenfields", "eigen/pauli_lubanski"}); }},
      {"Poincare structure constants", [] { return checks({"poincare/brackets"}); }},
      {"discrete orthonormality", [] { return timed({"orthonormality/spherical", "orthonormality/cylindrical"}, 60.0); }},
      {"continuous normalization", [] { return checks({"normalization/packets"}); }},
      {"Bessel overlap tables", [] { return checks({"overlap/bessel_tables"}); }},
      {"degeneracy", l_one_modes},
      {"gauge invariance", [] { return checks({"gauge/invariance"}); }},
      {"cross-representation consistency", [] { return checks({"crosscheck/jacobi_anger"}); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %zu %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
