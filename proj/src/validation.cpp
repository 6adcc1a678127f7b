#include "photon/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "photon/bessel.hpp"
#include "photon/harmonics.hpp"
#include "photon/operators.hpp"

namespace photon {

namespace {

using Coords = std::array<double, 4>;

// Tolerances. Analytic jets carry only round-off (observed ~1e-14), so 1e-10
// leaves four digits of headroom. Fourth-order stencils at h = 1e-2 have a
// truncation error of about h^4 p^5 / 30 < 1e-8 for p0 <= 2, hence 1e-6.
constexpr double tol_analytic = 1e-10;
constexpr double tol_fd = 1e-6;
constexpr double tol_exact = 1e-13;
constexpr double tol_a0 = 1e-12;
constexpr double fd_step = 1e-2;
// Dyad fields are smooth on unit scales, so a smaller step is safe there.
constexpr double fd_step_geometry = 1e-3;
constexpr double tol_geometry = 1e-8;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  double uniform(double a, double b) { return a + (b - a) * static_cast<double>(g_() >> 11) * 0x1.0p-53; }
  int integer(int lo, int hi) { return lo + static_cast<int>(g_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  Helicity helicity() { return (g_() >> 63) ? Helicity::positive : Helicity::negative; }

 private:
  std::mt19937_64 g_;
};

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string points_desc(int n) { return std::to_string(n) + " random points"; }

const char* family_claim(Family f, const char* what) {
  static const std::map<std::pair<Family, std::string>, const char*> names{
      {{Family::plane_wave, "eigen"}, "complete_set_plane"},
      {{Family::cylindrical, "eigen"}, "complete_set_cylindrical"},
      {{Family::spherical, "eigen"}, "complete_set_spherical"},
      {{Family::plane_wave, "maxwell"}, "maxwell_coulomb_plane"},
      {{Family::cylindrical, "maxwell"}, "maxwell_coulomb_cylindrical"},
      {{Family::spherical, "maxwell"}, "maxwell_coulomb_spherical"},
  };
  return names.at({f, what});
}

std::vector<ModeLabel> labels_for(Family f, const CheckSpec& spec, int count = -1) {
  std::vector<ModeLabel> out;
  if (!spec.labels.empty()) {
    for (const auto& l : spec.labels)
      if (family_of(l) == f) out.push_back(l);
    return out;
  }
  return random_labels(f, count < 0 ? spec.samples : count, mix(spec.seed, static_cast<std::uint64_t>(f)));
}

std::vector<Coords> points_for(const CheckSpec& spec, std::size_t index, std::uint64_t salt) {
  return random_points(spec.points, mix(spec.seed, 1000 * salt + index));
}

double max_norm(const ModeField& mode, const std::vector<Coords>& pts) {
  double m = 0.0;
  for (const auto& x : pts) m = std::max(m, norm(mode.potential(x)));
  return m;
}

Covector box_of(const CovectorJet& a) {
  Covector b;
  for (int k = 0; k < 4; ++k)
    for (int c = 0; c < 4; ++c) b[k] += metric_diag[static_cast<std::size_t>(c)] * a[static_cast<std::size_t>(k)].h[c][c];
  return b;
}

cplx divergence_of(const CovectorJet& a) {
  cplx d = 0.0;
  for (int c = 0; c < 4; ++c) d += metric_diag[static_cast<std::size_t>(c)] * a[static_cast<std::size_t>(c)].d[c];
  return d;
}

cplx det4(std::array<std::array<cplx, 4>, 4> m) {
  cplx det = 1.0;
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int r = c + 1; r < 4; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    if (std::abs(m[piv][c]) == 0.0) return 0.0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < 4; ++r) {
      const cplx f = m[r][c] / m[c][c];
      for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

using Body = std::function<void(const CheckSpec&, CheckReport&)>;

CheckReport execute(const std::string& suite, const std::string& name, const std::vector<std::string>& claims,
                    const CheckSpec& spec, const Body& body) {
  CheckReport rep;
  rep.suite = suite;
  rep.name = name;
  rep.claims = claims;
  rep.seed = spec.seed;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(spec, rep);
  } catch (const std::exception& e) {
    rep.errors.push_back(e.what());
  }
  rep.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rep.finalize();
  return rep;
}

// Runs f for one label and records its failure instead of aborting the check.
template <class F>
void guarded(CheckReport& rep, const std::string& what, F f) {
  try {
    f();
  } catch (const std::exception& e) {
    rep.errors.push_back(what + ": " + e.what());
  }
}

// ----- eigenvalue equations -------------------------------------------------

void eigen_body(Family f, const CheckSpec& spec, CheckReport& rep) {
  const auto labels = labels_for(f, spec);
  const char* claim = family_claim(f, "eigen");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::string d = describe(labels[i]);
    rep.labels.push_back(d);
    guarded(rep, d, [&] {
      const ModeField mode(labels[i]);
      const auto pts = points_for(spec, i, static_cast<std::uint64_t>(f) + 1);
      for (Observable o : complete_set(f)) {
        const auto ra = eigen_residual(mode, o, pts, DerivativePath::analytic);
        rep.add(claim, std::string(observable_name(o)) + " analytic", d, points_desc(spec.points), ra.residual,
                tol_analytic);
        const auto rf = eigen_residual(mode, o, pts, DerivativePath::finite_difference, fd_step);
        rep.add(claim, std::string(observable_name(o)) + " fd", d, points_desc(spec.points), rf.residual, tol_fd);
      }
    });
  }
}

void pauli_lubanski_body(const CheckSpec& spec, CheckReport& rep) {
  for (Family f : {Family::plane_wave, Family::cylindrical, Family::spherical}) {
    const auto labels = labels_for(f, spec);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const std::string d = describe(labels[i]);
      rep.labels.push_back(d);
      guarded(rep, d, [&] {
        const ModeField mode(labels[i]);
        const auto pts = points_for(spec, i, static_cast<std::uint64_t>(f) + 11);
        rep.add("pauli_lubanski_identity", "S_mu - P_mu S", d, "1 random point",
                pauli_lubanski_residual(mode, pts[0], fd_step), tol_fd);
      });
    }
  }
}

// ----- field equations ------------------------------------------------------

void maxwell_analytic(const ModeField& mode, const std::vector<Coords>& pts, const char* claim, const std::string& d,
                      CheckReport& rep) {
  double box = 0.0, div = 0.0, a0 = 0.0;
  const double ref = max_norm(mode, pts);
  for (const auto& x : pts) {
    const auto jet = mode.jet(x);
    box = std::max(box, norm(box_of(jet)));
    div = std::max(div, std::abs(divergence_of(jet)));
    a0 = std::max(a0, std::abs(jet[0].v));
  }
  rep.add(claim, "box A / |A|", d, points_desc(static_cast<int>(pts.size())), box / ref, tol_analytic);
  rep.add(claim, "div A / |A|", d, points_desc(static_cast<int>(pts.size())), div / ref, tol_analytic);
  rep.add(claim, "max |A_0|", d, points_desc(static_cast<int>(pts.size())), a0, tol_a0);
}

void plane_transversality(const PlaneWaveLabel& lab, const std::string& d, CheckReport& rep) {
  const double p0 = lab.p0();
  const Covector ep = plane_wave_polarization(lab.p, Helicity::positive);
  const Covector em = plane_wave_polarization(lab.p, Helicity::negative);
  double worst = 0.0;
  for (const Covector* e : {&ep, &em}) {
    const cplx pe = p0 * (*e)[0] + lab.p[0] * (*e)[1] + lab.p[1] * (*e)[2] + lab.p[2] * (*e)[3];
    worst = std::max({worst, std::abs(pe) / p0, std::abs((*e)[0]), std::abs(contract(*e, *e)),
                      std::abs(contract(conj(*e), *e) + 1.0)});
  }
  worst = std::max(worst, norm(ep - conj(em)));
  rep.add("plane_wave_transversality", "p.eps, eps_0, null, normalization, conjugate pair", d, "constant fields",
          worst, tol_exact);
  std::array<std::array<cplx, 4>, 4> rows{};
  rows[0] = {1.0, 0.0, 0.0, 0.0};
  rows[1] = {p0, -lab.p[0], -lab.p[1], -lab.p[2]};
  for (int k = 0; k < 4; ++k) {
    rows[2][static_cast<std::size_t>(k)] = ep[k];
    rows[3][static_cast<std::size_t>(k)] = em[k];
  }
  const cplx vol = -I / p0 * det4(rows);
  rep.add("plane_wave_transversality", "orientation -(i/p0) dx0^p^eps+^eps- vs epsilon_0123", d, "constant fields",
          std::abs(vol - volume_orientation), tol_exact);
}

// Interior nodes of a harmonic grid that are untouched by the one-sided
// stencils of two successive derivative applications.
constexpr int ring_skip = 4;

double max_abs_interior(const HarmonicGrid& g, const std::function<cplx(int, int)>& f) {
  double m = 0.0;
  for (int i = ring_skip; i < static_cast<int>(g.u.size()) - ring_skip; ++i)
    for (int k = 0; k < g.n_phi; ++k) m = std::max(m, std::abs(f(i, k)));
  return m;
}

void cylindrical_reduced(const CylindricalLabel& lab, const std::string& d, CheckReport& rep) {
  const double alpha = lab.alpha();
  const auto co = cylindrical_coefficients(lab);
  const std::array<cplx, 3> a{co.a_minus, co.a0, co.a_plus};  // spin weights -1, 0, +1
  const double rho0 = 0.5, rho1 = 0.5 + 4.0 / alpha;
  const int nu = 201, nphi = 32;
  std::array<HarmonicGrid, 3> g;
  for (int n = -1; n <= 1; ++n)
    g[static_cast<std::size_t>(n + 1)] = sample_harmonic(CylHarmonicLabel{n, alpha, lab.m}, rho0, rho1, nu, nphi);
  const std::string grid = "rho in [0.5, 0.5+4/alpha], 201 x 32";
  double worst = 0.0;
  for (int n = -1; n <= 1; ++n) {
    const auto& gn = g[static_cast<std::size_t>(n + 1)];
    const HarmonicGrid lap = ethbar_numeric(eth_numeric(gn));
    const cplx c = a[static_cast<std::size_t>(n + 1)];
    const double p3 = lab.p3;
    const double scale = max_abs_interior(gn, [&](int i, int k) { return c * gn.at(i, k); }) * lab.p0 * lab.p0;
    const double r = max_abs_interior(gn, [&](int i, int k) {
      return c * (-lap.at(i, k) - lab.p0 * lab.p0 * gn.at(i, k) + p3 * p3 * gn.at(i, k));
    });
    worst = std::max(worst, r / scale);
  }
  rep.add("cylindrical_reduced_maxwell", "-ethbar eth A + dt^2 A - dz^2 A per dyad component", d, grid, worst, tol_fd);

  // Divergence in dyad form: -dz A_z + (eth A_- + ethbar A_+)/sqrt2 with the z phase removed.
  const double p3c = -lab.p3;
  const HarmonicGrid eth_m = eth_numeric(g[0]);
  const HarmonicGrid ethb_p = ethbar_numeric(g[2]);
  const double scale = alpha * max_abs_interior(g[1], [&](int i, int k) {
    return std::abs(co.a0 * g[1].at(i, k)) + std::abs(co.a_minus * g[0].at(i, k)) +
           std::abs(co.a_plus * g[2].at(i, k));
  });
  const double r = max_abs_interior(g[1], [&](int i, int k) {
    return I * p3c * co.a0 * g[1].at(i, k) + (co.a_minus * eth_m.at(i, k) + co.a_plus * ethb_p.at(i, k)) / std::sqrt(2.0);
  });
  rep.add("cylindrical_gauge_constraint", "-dz A_z + (eth A_- + ethbar A_+)/sqrt2 (numeric eth)", d, grid, r / scale,
          tol_fd);
  const cplx exact = I * p3c * co.a0 + alpha / std::sqrt(2.0) * (co.a_minus - co.a_plus);
  rep.add("cylindrical_gauge_constraint", "i p_3 a_0 + alpha/sqrt2 (a_- - a_+)", d, "coefficients",
          std::abs(exact) / (lab.p0 * (std::abs(co.a0) + std::abs(co.a_minus) + std::abs(co.a_plus))), tol_exact);
}

struct RadialSample {
  double r;
  std::array<Jet, 3> f;
};

std::vector<RadialSample> radial_samples(const SphericalLabel& lab) {
  std::vector<RadialSample> out;
  for (double x : {0.05, 0.4, 1.3, 2.9, 6.2, 11.7, 23.5}) {
    const double r = x / lab.p0;
    out.push_back({r, spherical_radial(lab, Jet::coordinate(1, r))});
  }
  return out;
}

void spherical_radial_checks(const SphericalLabel& lab, const std::string& d, CheckReport& rep) {
  const double p0 = lab.p0, big_l = lab.l * (lab.l + 1.0), sl = std::sqrt(big_l);
  const auto samples = radial_samples(lab);
  double ref = 0.0;
  for (const auto& s : samples)
    for (const auto& f : s.f) ref = std::max(ref, std::abs(f.v));
  const std::string grid = "p0 r in {0.05, 0.4, 1.3, 2.9, 6.2, 11.7, 23.5}";
  double ode = 0.0, equiv = 0.0, sol = 0.0, div = 0.0;
  const double nu = lab.l + 0.5;
  const double b0 = 0.5 * sl * std::sqrt(p0);
  const cplx b = I * static_cast<double>(sign(lab.s)) * b0 * std::sqrt(2.0) / sl;
  for (const auto& s : samples) {
    const double r = s.r;
    auto v = [&](int i) { return s.f[static_cast<std::size_t>(i)].v; };
    auto d1 = [&](int i) { return s.f[static_cast<std::size_t>(i)].d[1]; };
    auto d2 = [&](int i) { return s.f[static_cast<std::size_t>(i)].h[1][1]; };
    const double r2 = r * r;
    const cplx e0 = d2(0) + 2.0 / r * d1(0) - 2.0 / r2 * v(0) + p0 * p0 * v(0) - big_l / r2 * v(0) +
                    std::sqrt(2.0 * big_l) / r2 * (v(1) - v(2));
    const cplx em = d2(1) + 2.0 / r * d1(1) + p0 * p0 * v(1) - big_l / r2 * v(1) + std::sqrt(2.0 * big_l) / r2 * v(0);
    const cplx ep = d2(2) + 2.0 / r * d1(2) + p0 * p0 * v(2) - big_l / r2 * v(2) - std::sqrt(2.0 * big_l) / r2 * v(0);
    ode = std::max({ode, std::abs(e0), std::abs(em), std::abs(ep)});
    const cplx sum_v = v(1) + v(2), sum_d1 = d1(1) + d1(2), sum_d2 = d2(1) + d2(2);
    const cplx q1 = sum_d2 + 2.0 / r * sum_d1 + p0 * p0 * sum_v - big_l / r2 * sum_v;
    const cplx q2 = d2(0) + 4.0 / r * d1(0) + 2.0 / r2 * v(0) + p0 * p0 * v(0) - big_l / r2 * v(0);
    const cplx q3 = (v(1) - v(2)) - std::sqrt(2.0) * r / sl * (d1(0) + 2.0 / r * v(0));
    equiv = std::max({equiv, std::abs(q1), std::abs(q2), std::abs(q3) * p0 * p0});
    const double x = p0 * r;
    const double jp = bessel_j(nu, x), jm = bessel_j(nu - 1.0, x);
    const cplx s1 = sum_v - b * jp / std::sqrt(x);
    const cplx s2 = v(0) - b0 * jp / std::pow(x, 1.5);
    const cplx s3 = (v(1) - v(2)) - b0 * std::sqrt(2.0) / sl * (jm / std::sqrt(x) - lab.l * jp / std::pow(x, 1.5));
    sol = std::max({sol, std::abs(s1), std::abs(s2), std::abs(s3)});
    const cplx dv = -(d1(0) + 2.0 / r * v(0)) + sl / (std::sqrt(2.0) * r) * (v(1) - v(2));
    div = std::max(div, std::abs(dv));
  }
  rep.add("spherical_radial_equations", "radial equations for R0, R-, R+", d, grid, ode / (p0 * p0 * ref), tol_analytic);
  rep.add("spherical_radial_equations", "equivalent decoupled system", d, grid, equiv / (p0 * p0 * ref), tol_analytic);
  rep.add("spherical_radial_equations", "Bessel J_{l+-1/2} solutions with b = i s b0 sqrt2/sqrt(l(l+1))", d, grid,
          sol / ref, tol_analytic);
  rep.add("spherical_divergence_constraint", "-(d/dr + 2/r) R0 + sqrt(l(l+1))/(sqrt2 r)(R- - R+)", d, grid,
          div / (p0 * ref), tol_analytic);
}

void field_equation_body(Family f, const CheckSpec& spec, CheckReport& rep) {
  const auto labels = labels_for(f, spec);
  const char* claim = family_claim(f, "maxwell");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::string d = describe(labels[i]);
    rep.labels.push_back(d);
    guarded(rep, d, [&] {
      const ModeField mode(labels[i]);
      maxwell_analytic(mode, points_for(spec, i, static_cast<std::uint64_t>(f) + 21), claim, d, rep);
      if (const auto* p = std::get_if<PlaneWaveLabel>(&labels[i])) plane_transversality(*p, d, rep);
      if (const auto* c = std::get_if<CylindricalLabel>(&labels[i])) cylindrical_reduced(*c, d, rep);
      if (const auto* s = std::get_if<SphericalLabel>(&labels[i])) {
        spherical_radial_checks(*s, d, rep);
        // Same constraint in four dimensions, at points on and off the axis.
        double worst = 0.0;
        for (const auto& x : points_for(spec, i, 23)) worst = std::max(worst, std::abs(divergence_of(mode.jet(x))));
        rep.add("spherical_divergence_constraint", "div A (analytic jets)", d, points_desc(spec.points),
                worst / (s->p0 * max_norm(mode, points_for(spec, i, 23))), tol_analytic);
      }
    });
  }
}

void grid_convergence_body(const CheckSpec& spec, CheckReport& rep) {
  const double coarse = 0.05, fine = 0.025;
  for (Family f : {Family::plane_wave, Family::cylindrical, Family::spherical}) {
    const auto labels = labels_for(f, spec, 2);
    for (std::size_t i = 0; i < std::min<std::size_t>(2, labels.size()); ++i) {
      const std::string d = describe(labels[i]);
      rep.labels.push_back(d);
      guarded(rep, d, [&] {
        const ModeField mode(labels[i]);
        const Coords c = random_points(1, mix(spec.seed, 3100 + 10 * static_cast<std::uint64_t>(f) + i), 0.5)[0];
        std::array<GridResidual, 2> box, div;
        for (int level = 0; level < 2; ++level) {
          const double h = level == 0 ? coarse : fine;
          const int n = level == 0 ? 9 : 17;
          const auto names = axis_names(Chart::lorentz);
          std::vector<GridAxis> axes;
          for (int k = 0; k < 4; ++k)
            axes.push_back({names[static_cast<std::size_t>(k)], c[static_cast<std::size_t>(k)] - 4.0 * coarse,
                            c[static_cast<std::size_t>(k)] + 4.0 * coarse, n});
          const FieldGrid g = sample_grid(mode, Chart::lorentz, make_axes(Chart::lorentz, axes));
          (void)h;
          box[static_cast<std::size_t>(level)] = dalembertian_residual(g);
          div[static_cast<std::size_t>(level)] = divergence_residual(g);
        }
        const std::string grid = "4D Lorentz box of side 0.4, h = 0.05 and 0.025";
        rep.add("fd_grid_convergence", "||box A||/||A|| at h = 0.025", d, grid, box[1].relative, tol_fd);
        rep.add("fd_grid_convergence", "|div A|/||A|| at h = 0.025", d, grid, div[1].relative, tol_fd);
        rep.add("fd_grid_convergence", "max |A_0|", d, grid, box[1].max_a0, tol_a0);
        rep.add_at_least("fd_grid_convergence", "observed order of box A residual", d, grid,
                         std::log2(box[0].relative / box[1].relative), 3.5);
        rep.add_at_least("fd_grid_convergence", "observed order of div A residual", d, grid,
                         std::log2(div[0].relative / div[1].relative), 3.5);
      });
    }
  }
}

// ----- helicity -------------------------------------------------------------

void involution_body(const CheckSpec& spec, CheckReport& rep) {
  Rng rng(mix(spec.seed, 41));
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    Tensor2 f{};
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        const cplx v(rng.uniform(-1, 1), rng.uniform(-1, 1));
        f[a][b] = v;
        f[b][a] = -v;
      }
    worst = std::max(worst, norm(helicity_dual(helicity_dual(f)) - f) / norm(f));
  }
  rep.add("helicity_involution", "dual(dual(F)) - F", "100 random antisymmetric tensors", "n/a", worst, 1e-12);
}

void helicity_eigen_body(const CheckSpec& spec, CheckReport& rep) {
  for (Family f : {Family::plane_wave, Family::cylindrical, Family::spherical}) {
    const auto labels = labels_for(f, spec);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const std::string d = describe(labels[i]);
      rep.labels.push_back(d);
      guarded(rep, d, [&] {
        const ModeField mode(labels[i]);
        const double s = sign(mode.helicity());
        double num = 0.0, den = 0.0;
        for (const auto& x : points_for(spec, i, static_cast<std::uint64_t>(f) + 31)) {
          const Tensor2 fs = mode.field_strength(x);
          num += std::pow(norm(helicity_dual(fs) - s * fs), 2);
          den += std::pow(norm(fs), 2);
        }
        rep.add("helicity_eigenfields", "dual(F) - s F (analytic F)", d, points_desc(spec.points),
                std::sqrt(num / den), tol_analytic);
        if (const auto* c = std::get_if<CylindricalLabel>(&labels[i])) {
          const auto co = cylindrical_coefficients(*c);
          const double p0 = c->p0, p3 = -c->p3, al = c->alpha() / std::sqrt(2.0);
          const double r = std::max({std::abs(I * p0 * co.a0 - s * al * (co.a_minus + co.a_plus)),
                                     std::abs(I * (p0 - s * p3) * co.a_plus + s * al * co.a0),
                                     std::abs(I * (p0 + s * p3) * co.a_minus + s * al * co.a0)});
          rep.add("cylindrical_helicity_coefficients", "helicity linear system for a0, a-, a+", d, "coefficients",
                  r / (p0 * (std::abs(co.a0) + std::abs(co.a_minus) + std::abs(co.a_plus))), tol_exact);
        }
        if (const auto* q = std::get_if<SphericalLabel>(&labels[i])) {
          const double p0 = q->p0, sl = std::sqrt(q->l * (q->l + 1.0));
          double worst = 0.0, ref = 0.0;
          for (const auto& smp : radial_samples(*q)) {
            const double r = smp.r;
            auto v = [&](int k) { return smp.f[static_cast<std::size_t>(k)].v; };
            auto d1 = [&](int k) { return smp.f[static_cast<std::size_t>(k)].d[1]; };
            const cplx h0 = I * p0 * v(0) - s * sl / (std::sqrt(2.0) * r) * (v(1) + v(2));
            const cplx hm = I * p0 * v(1) + s * sl / (std::sqrt(2.0) * r) * v(0) - s * (d1(1) + v(1) / r);
            const cplx hp = I * p0 * v(2) + s * sl / (std::sqrt(2.0) * r) * v(0) + s * (d1(2) + v(2) / r);
            worst = std::max({worst, std::abs(h0), std::abs(hm), std::abs(hp)});
            for (int k = 0; k < 3; ++k) ref = std::max(ref, std::abs(v(k)));
          }
          rep.add("spherical_helicity_radial", "radial helicity equations", d, "7 radii", worst / (p0 * ref),
                  tol_analytic);
        }
      });
    }
  }
}

std::vector<Observable> momentum_set(Family f) {
  if (f == Family::plane_wave) return {Observable::P1, Observable::P2, Observable::P3};
  if (f == Family::cylindrical) return {Observable::P0, Observable::P3};
  return {Observable::P0};
}

int momentum_index(Observable o) {
  switch (o) {
    case Observable::P0: return 0;
    case Observable::P1: return 1;
    case Observable::P2: return 2;
    case Observable::P3: return 3;
    default: return -1;
  }
}

void momentum_commutation_body(const CheckSpec& spec, CheckReport& rep) {
  for (Family f : {Family::plane_wave, Family::cylindrical, Family::spherical}) {
    const auto labels = labels_for(f, spec);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const std::string d = describe(labels[i]);
      rep.labels.push_back(d);
      guarded(rep, d, [&] {
        const ModeField mode(labels[i]);
        const CovectorFunction field = [&](const Coords& y) { return mode.potential(y); };
        const double p0 = energy_of(labels[i]);
        double worst = 0.0;
        for (const auto& x : points_for(spec, i, static_cast<std::uint64_t>(f) + 41)) {
          const CovectorJet jet = fd_jet(field, x, fd_step);
          const Tensor2 fs = exterior_derivative(jet);
          const TensorGradient dfs = field_strength_gradient(jet);
          const Tensor2 dual = helicity_dual(fs);
          for (Observable o : momentum_set(f)) {
            const Tensor2 pf = lie_derivative(momentum_generator_up(momentum_index(o)), fs, dfs, x);
            const cplx lambda = expected_eigenvalue(labels[i], o);
            worst = std::max(worst, norm(helicity_dual(pf) - lambda * dual) / (p0 * norm(fs)));
          }
        }
        rep.add("helicity_commutes_with_momentum", "P^mu dual(F) - p^mu dual(F) (fd)", d, points_desc(spec.points),
                worst, tol_fd);
      });
    }
  }
}

// ----- Poincare structure ---------------------------------------------------

void brackets_body(const CheckSpec&, CheckReport& rep) {
  for (const auto& b : bracket_table())
    rep.add("poincare_algebra", "[" + b.lhs + ", " + b.rhs + "]", "Killing fields", "exact", b.match ? 0.0 : 1.0, 0.0);
}

void null_momentum_body(const CheckSpec& spec, CheckReport& rep) {
  for (Family f : {Family::plane_wave, Family::cylindrical, Family::spherical}) {
    const auto labels = labels_for(f, spec);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const std::string d = describe(labels[i]);
      rep.labels.push_back(d);
      guarded(rep, d, [&] {
        const ModeField mode(labels[i]);
        const CovectorFunction field = [&](const Coords& y) { return mode.potential(y); };
        const auto pts = points_for(spec, i, static_cast<std::uint64_t>(f) + 51);
        double worst = 0.0;
        for (const auto& x : pts) {
          const CovectorJet jet = fd_jet(field, x, fd_step);
          Covector pp;
          for (int mu = 0; mu < 4; ++mu) pp += lie2(momentum_generator(mu), momentum_generator_up(mu), jet, x);
          worst = std::max(worst, norm(pp));
        }
        rep.add("null_four_momentum", "P_mu P^mu A / |A| (fd)", d, points_desc(spec.points), worst / max_norm(mode, pts),
                tol_fd);
      });
    }
  }
}

QuadratureSpec packet_quadrature(const CheckSpec& spec) {
  if (spec.quadrature && spec.quadrature->chart == Chart::spherical) return *spec.quadrature;
  QuadratureSpec q;
  q.chart = Chart::spherical;
  return q;
}

constexpr double packet_width = 0.12;

SliceSampler packet(int l, int m, Helicity s, double centre) {
  return WavePacket(SphericalLabel{centre, l, m, s}, centre, packet_width).sampler();
}

void hermiticity_body(const CheckSpec& spec, CheckReport& rep) {
  const QuadratureSpec q = packet_quadrature(spec);
  const SliceSampler f = combine(1.0, packet(2, 1, Helicity::positive, 1.30), cplx(0.6, 0.3),
                                 packet(2, 0, Helicity::positive, 1.40));
  const SliceSampler g = combine(1.0, packet(2, 1, Helicity::positive, 1.35), cplx(0.0, -0.4),
                                 packet(2, 0, Helicity::positive, 1.25));
  const std::string d = "f = W(2,1,+;1.30) + (0.6+0.3i) W(2,0,+;1.40), g = W(2,1,+;1.35) - 0.4i W(2,0,+;1.25)";
  rep.labels.push_back(d);
  const double scale = std::sqrt(std::abs(inner(f, f, q).value) * std::abs(inner(g, g, q).value)) * 1.3;
  const std::string grid = "spherical slice, node doubling";
  for (int which = 0; which < 2; ++which) {
    const auto op = [&](const SliceSampler& a) { return which == 0 ? apply_p0_flow(a) : apply_l3_flow(a); };
    const cplx lhs = inner(op(f), g, q).value;
    const cplx rhs = inner(f, op(g), q).value;
    std::ostringstream note;
    note << (which == 0 ? "P0" : "L3") << ": <Af,g> = " << lhs.real() << (lhs.imag() < 0 ? "" : "+") << lhs.imag()
         << "i";
    rep.notes.push_back(note.str());
    rep.add("generator_hermiticity", which == 0 ? "<P0 f, g> - <f, P0 g>" : "<L3 f, g> - <f, L3 g>", d, grid,
            std::abs(lhs - rhs) / scale, tol_fd);
  }
}

// ----- harmonics and dyads --------------------------------------------------

Covector dyad_component(const Coords& y, Chart chart, int which) {
  const SpacetimePoint p = SpacetimePoint::from_lorentz(y);
  if (chart == Chart::spherical && which == 0) {
    const double r = std::sqrt(y[1] * y[1] + y[2] * y[2] + y[3] * y[3]);
    Covector c;
    for (int i = 1; i < 4; ++i) c[i] = y[static_cast<std::size_t>(i)] / r;
    return c;
  }
  const Dyad dy = chart == Chart::cylindrical ? dyad_cyl(p) : dyad_sph(p);
  return dy[which];
}

void dyads_body(const CheckSpec& spec, CheckReport& rep) {
  const auto pts = random_points(10, mix(spec.seed, 61));
  double frame = 0.0, lie = 0.0;
  for (Chart chart : {Chart::cylindrical, Chart::spherical}) {
    for (const auto& x : pts) {
      const SpacetimePoint p = SpacetimePoint::from_lorentz(x);
      const Dyad dy = chart == Chart::cylindrical ? dyad_cyl(p) : dyad_sph(p);
      frame = std::max({frame, std::abs(contract(dy.plus, dy.plus)), std::abs(contract(dy.minus, dy.minus)),
                        std::abs(contract(dy.plus, dy.minus) + 1.0), norm(dy.plus - conj(dy.minus)),
                        std::abs(dy.plus[0]), std::abs(dy.minus[0])});
      std::vector<KillingField> gens{momentum_generator_up(0), angular_generator(3)};
      if (chart == Chart::cylindrical) gens.push_back(momentum_generator_up(3));
      for (int which = 0; which < 3; ++which) {
        const CovectorFunction fn = [&](const Coords& y) { return dyad_component(y, chart, which); };
        const CovectorJet jet = fd_jet(fn, x, fd_step_geometry);
        for (const auto& g : gens) lie = std::max(lie, norm(lie_derivative(g, jet, x)));
      }
    }
  }
  rep.add("dyad_null_frame", "null, normalized, conjugate, annihilate d/dt", "cylindrical and spherical dyads",
          "10 random points", frame, tol_exact);
  rep.add("dyad_lie_invariance", "Lie derivatives of frame along P0, P3, L3 (cyl) and P0, L3 (sph)",
          "cylindrical and spherical dyads", "10 random points", lie, tol_geometry);
}

template <class Label>
double ladder_error(const HarmonicGrid& g, const HarmonicGrid& applied, const Label& raised, double factor,
                    double u0, double u1) {
  const HarmonicGrid target = sample_harmonic(raised, u0, u1, static_cast<int>(g.u.size()), g.n_phi);
  const double scale = std::max(max_abs_interior(g, [&](int i, int k) { return g.at(i, k); }), 1e-300);
  return max_abs_interior(g, [&](int i, int k) { return applied.at(i, k) - factor * target.at(i, k); }) /
         (scale * std::max(1.0, std::abs(factor)));
}

void eth_ladders_body(const CheckSpec& spec, CheckReport& rep) {
  Rng rng(mix(spec.seed, 71));
  for (int trial = 0; trial < 4; ++trial) {
    const double alpha = rng.uniform(0.5, 2.0);
    const int m = rng.integer(-3, 3);
    const double u0 = 0.5, u1 = 0.5 + 4.0 / alpha;
    for (int n = -1; n <= 1; ++n) {
      const CylHarmonicLabel lab{n, alpha, m};
      std::ostringstream d;
      d << "Z n=" << n << " alpha=" << alpha << " m=" << m;
      rep.labels.push_back(d.str());
      const HarmonicGrid g = sample_harmonic(lab, u0, u1, 201, 32);
      const auto up = eth_analytic(lab), down = ethbar_analytic(lab);
      const std::string grid = "rho in [0.5, 0.5+4/alpha], 201 x 32";
      rep.add("cylindrical_eth_ladders", "eth Z = alpha Z(n+1)", d.str(), grid,
              ladder_error(g, eth_numeric(g), up.label, up.factor, u0, u1), tol_fd);
      rep.add("cylindrical_eth_ladders", "ethbar Z = -alpha Z(n-1)", d.str(), grid,
              ladder_error(g, ethbar_numeric(g), down.label, down.factor, u0, u1), tol_fd);
      rep.add("cylindrical_eth_ladders", "ethbar eth Z = -alpha^2 Z", d.str(), grid,
              ladder_error(g, ethbar_numeric(eth_numeric(g)), lab, ethbar_eth_eigencheck(lab), u0, u1), tol_fd);
    }
  }
  const double u0 = 0.2, u1 = pi - 0.2;
  for (int trial = 0; trial < 4; ++trial) {
    const int l = rng.integer(1, 4);
    const int m = rng.integer(-l, l);
    for (int n = -1; n <= 1; ++n) {
      const SphHarmonicLabel lab{n, l, m};
      std::ostringstream d;
      d << "Y n=" << n << " l=" << l << " m=" << m;
      rep.labels.push_back(d.str());
      const HarmonicGrid g = sample_harmonic(lab, u0, u1, 401, 32);
      const auto up = eth_analytic(lab), down = ethbar_analytic(lab);
      const std::string grid = "theta in [0.2, pi-0.2], 401 x 32";
      rep.add("spherical_eth_ladders", "eth Y = sqrt((l-n)(l+n+1)) Y(n+1)", d.str(), grid,
              ladder_error(g, eth_numeric(g), up.label, up.factor, u0, u1), tol_fd);
      rep.add("spherical_eth_ladders", "ethbar Y = -sqrt((l+n)(l-n+1)) Y(n-1)", d.str(), grid,
              ladder_error(g, ethbar_numeric(g), down.label, down.factor, u0, u1), tol_fd);
    }
  }
}

void sw_orthonormality_body(const CheckSpec&, CheckReport& rep) {
  const auto mu = gauss_legendre(12);
  const auto ph = periodic_trapezoid(12);
  for (int n = -1; n <= 1; ++n) {
    std::vector<SphHarmonicLabel> labs;
    for (int l = std::abs(n); l <= 4; ++l)
      for (int m = -l; m <= l; ++m) labs.push_back({n, l, m});
    std::vector<std::vector<cplx>> vals(labs.size());
    for (std::size_t a = 0; a < labs.size(); ++a)
      for (std::size_t j = 0; j < mu.x.size(); ++j)
        for (std::size_t k = 0; k < ph.x.size(); ++k)
          vals[a].push_back(sw_sph_harmonic(labs[a], std::acos(mu.x[j]), ph.x[k]).value);
    double worst = 0.0;
    for (std::size_t a = 0; a < labs.size(); ++a)
      for (std::size_t b = a; b < labs.size(); ++b) {
        cplx s = 0.0;
        std::size_t idx = 0;
        for (std::size_t j = 0; j < mu.x.size(); ++j)
          for (std::size_t k = 0; k < ph.x.size(); ++k, ++idx)
            s += mu.w[j] * ph.w[k] * std::conj(vals[a][idx]) * vals[b][idx];
        worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
      }
    const std::string d = "n=" + std::to_string(n) + ", |n| <= l <= 4, all m";
    rep.labels.push_back(d);
    rep.add("spin_weighted_orthonormality", "Gram matrix of nY_lm minus identity", d, "12 x 12 Gauss/trapezoid",
            worst, 1e-12);
  }
}

void angular_ladders_body(const CheckSpec& spec, CheckReport& rep) {
  const auto pts = random_points(6, mix(spec.seed, 81), 0.3);
  double dy_err = 0.0;
  for (const auto& x : pts) {
    const SpacetimePoint sp = SpacetimePoint::from_lorentz(x).to_spherical();
    const double th = sp[2], phv = sp[3];
    for (int sg : {1, -1}) {
      const KillingField lpm = ladder_generator(sg);
      const cplx e = std::exp(I * (sg * phv)) / std::sin(th);
      for (int which = 0; which < 3; ++which) {
        const CovectorFunction fn = [&](const Coords& y) { return dyad_component(y, Chart::spherical, which); };
        const Covector lie = lie_derivative(lpm, fd_jet(fn, x, fd_step_geometry), x);
        const cplx expect = which == 0 ? 0.0 : (which == 1 ? e : -e);
        dy_err = std::max(dy_err, norm(lie - expect * fn(x)) / std::max(1.0, std::abs(e)));
      }
    }
  }
  rep.add("spherical_ladder_on_dyads", "L+- dr = 0, L+- eps-+ = +-e^{+-i phi} csc(theta) eps-+ (signs per dyad)",
          "spherical dyads", "6 random points", dy_err, tol_geometry);

  Rng rng(mix(spec.seed, 83));
  for (int trial = 0; trial < 4; ++trial) {
    const int l = rng.integer(1, 4);
    const int m = rng.integer(-l, l);
    const int n = rng.integer(-1, 1);
    std::ostringstream d;
    d << "Y n=" << n << " l=" << l << " m=" << m;
    rep.labels.push_back(d.str());
    double worst = 0.0, ref = 0.0;
    for (const auto& x : pts) {
      const SpacetimePoint sp = SpacetimePoint::from_lorentz(x).to_spherical();
      const double th = sp[2], phv = sp[3];
      auto y_at = [&](const Coords& y, int mm) {
        const SpacetimePoint q = SpacetimePoint::from_lorentz(y).to_spherical();
        return sw_sph_harmonic({n, l, mm}, q[2], q[3]).value;
      };
      for (int sg : {1, -1}) {
        const auto xi = ladder_generator(sg).at(x);
        cplx lf = 0.0;
        for (int a = 1; a < 4; ++a) {
          const double h = fd_step_geometry;
          const double w[5] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
          cplx der = 0.0;
          for (int k = 0; k < 5; ++k) {
            if (w[k] == 0.0) continue;
            Coords y = x;
            y[static_cast<std::size_t>(a)] += (k - 2) * h;
            der += w[k] * y_at(y, m);
          }
          lf += xi[static_cast<std::size_t>(a)] * der / h;
        }
        const cplx lhs = lf - static_cast<double>(n) * std::exp(I * (sg * phv)) / std::sin(th) * y_at(x, m);
        const int mm = m + sg;
        const double c = std::sqrt(static_cast<double>((l - sg * m) * (l + sg * m + 1)));
        const cplx rhs = std::abs(mm) <= l ? c * y_at(x, mm) : cplx(0.0);
        worst = std::max(worst, std::abs(lhs - rhs));
        ref = std::max({ref, std::abs(y_at(x, m)), std::abs(rhs)});
      }
    }
    rep.add("spherical_angular_ladders", "(L+- - n e^{+-i phi} csc(theta)) nY_lm = sqrt((l-+m)(l+-m+1)) nY_l,m+-1",
            d.str(), "6 random points", worst / std::max(ref, 1e-300), tol_geometry);
  }
}

// ----- degenerate sectors ---------------------------------------------------

void mode_properties(const ModeField& mode, const std::string& claim, const std::string& d, const CheckSpec& spec,
                     std::uint64_t salt, CheckReport& rep) {
  const auto pts = points_for(spec, salt, 91);
  rep.add(claim, "nonzero field (max |A| > 0)", d, points_desc(spec.points), max_norm(mode, pts) > 0.0 ? 0.0 : 1.0,
          0.0);
  for (Observable o : complete_set(mode.family())) {
    rep.add(claim, std::string(observable_name(o)) + " analytic", d, points_desc(spec.points),
            eigen_residual(mode, o, pts, DerivativePath::analytic).residual, tol_analytic);
    rep.add(claim, std::string(observable_name(o)) + " fd", d, points_desc(spec.points),
            eigen_residual(mode, o, pts, DerivativePath::finite_difference, fd_step).residual, tol_fd);
  }
  double box = 0.0, div = 0.0, a0 = 0.0;
  for (const auto& x : pts) {
    const auto jet = mode.jet(x);
    box = std::max(box, norm(box_of(jet)));
    div = std::max(div, std::abs(divergence_of(jet)));
    a0 = std::max(a0, std::abs(jet[0].v));
  }
  const double ref = max_norm(mode, pts);
  rep.add(claim, "box A / |A|", d, points_desc(spec.points), box / ref, tol_analytic);
  rep.add(claim, "div A / |A|", d, points_desc(spec.points), div / ref, tol_analytic);
  rep.add(claim, "max |A_0|", d, points_desc(spec.points), a0, tol_a0);
  rep.add(claim, "Pauli-Lubanski", d, "1 random point", pauli_lubanski_residual(mode, pts[0], fd_step), tol_fd);
}

void degeneracy_body(const CheckSpec& spec, CheckReport& rep) {
  const auto pts = random_points(8, mix(spec.seed, 101), 0.0);
  std::uint64_t salt = 0;
  for (double p0 : {0.8, 1.6}) {
    for (int m = -3; m <= 3; ++m) {
      for (Helicity s : {Helicity::positive, Helicity::negative}) {
        for (double sgn : {1.0, -1.0}) {
          const CylindricalLabel lab{p0, sgn * p0, m, s};
          const std::string d = describe(lab);
          rep.labels.push_back(d);
          guarded(rep, d, [&] {
            const ModeField mode(lab);
            const bool allowed = (m == 1 || m == -1) && sgn == m * sign(s);
            if (!allowed) {
              double mx = 0.0;
              for (const auto& x : pts) mx = std::max(mx, norm(mode.potential(x)));
              rep.add("alpha_zero_degeneracy", "max |A| (exact zero expected)", d, "8 random points", mx, 0.0);
              rep.add("alpha_zero_degeneracy", "identically_zero() flag", d, "label", mode.identically_zero() ? 0.0 : 1.0,
                      0.0);
            } else {
              rep.add("alpha_zero_degeneracy", "identically_zero() flag is false", d, "label",
                      mode.identically_zero() ? 1.0 : 0.0, 0.0);
              mode_properties(mode, "alpha_zero_degeneracy", d, spec, ++salt, rep);
            }
          });
        }
      }
    }
  }
  for (Helicity s : {Helicity::positive, Helicity::negative}) {
    const std::string d = std::string("spherical l=0 s=") + (s == Helicity::positive ? "+1" : "-1");
    rep.labels.push_back(d);
    double rejected = 1.0;
    try {
      ModeField mode(SphericalLabel{1.0, 0, 0, s});
    } catch (const InvalidLabelError& e) {
      if (std::string(e.what()).find("l must be") != std::string::npos) rejected = 0.0;
    }
    rep.add("spherical_l_positive", "l = 0 rejected with the constraint quoted", d, "label", rejected, 0.0);
    for (int m = -1; m <= 1; ++m) {
      const SphericalLabel lab{1.1, 1, m, s};
      const std::string dl = describe(lab);
      rep.labels.push_back(dl);
      guarded(rep, dl, [&] { mode_properties(ModeField(lab), "spherical_l_positive", dl, spec, ++salt, rep); });
    }
  }
}

// ----- representation cross-check -------------------------------------------

void crosscheck_body(const CheckSpec&, CheckReport& rep) {
  for (double alpha : {0.7, 1.9}) {
    for (Helicity s : {Helicity::positive, Helicity::negative}) {
      std::ostringstream d;
      d << "plane wave p=(" << alpha << ",0,0) s=" << sign(s);
      rep.labels.push_back(d.str());
      std::vector<double> errs;
      for (int big_m : {0, 5, 10, 15, 20}) errs.push_back(jacobi_anger(alpha, s, big_m).max_error);
      const auto r20 = jacobi_anger(alpha, s, 20);
      const std::string grid = "alpha rho <= 5, 26 x 24 x 2 x 2 nodes";
      std::ostringstream note;
      note << d.str() << ": error vs M {0,5,10,15,20} = ";
      for (double e : errs) note << e << " ";
      note << "kappa = " << r20.kappa.real() << (r20.kappa.imag() < 0 ? "" : "+") << r20.kappa.imag() << "i";
      rep.notes.push_back(note.str());
      rep.add("representation_consistency", "polarization mismatch", d.str(), "origin", r20.polarization_mismatch,
              tol_exact);
      rep.add("representation_consistency", "max reconstruction error, M = 20", d.str(), grid, r20.max_error, 1e-8);
      rep.add("representation_consistency", "error ratio beyond M > alpha rho (must shrink)", d.str(), grid,
              std::max(errs[3] / errs[2], errs[4] / errs[3]), 1.0);
      rep.add_at_least("representation_consistency", "error at M = 0 is order one", d.str(), grid, errs[0], 0.1);
    }
  }
}

// ----- inner product --------------------------------------------------------

void orthonormality_body(Family f, const CheckSpec& spec, CheckReport& rep) {
  OrthonormalityRequest req;
  req.family = f;
  req.width = packet_width;
  QuadratureSpec q;
  if (f == Family::spherical) {
    req.p0 = 1.0;
    req.l_max = 3;
    q = packet_quadrature(spec);
  } else {
    req.p0 = 1.2;
    req.p3 = 0.3;
    req.m_max = 3;
    q.chart = Chart::cylindrical;
    if (spec.quadrature && spec.quadrature->chart == Chart::cylindrical) q = *spec.quadrature;
  }
  const auto start = std::chrono::steady_clock::now();
  const GramResult g = discrete_orthonormality(req, q);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rep.labels = g.labels;
  std::ostringstream d;
  d << family_name(f) << " sector p0=" << req.p0;
  if (f == Family::cylindrical) d << " p3=" << req.p3;
  d << ", " << g.g.size() << " packets of width " << req.width;
  const std::string grid = f == Family::spherical ? "ball r <= 40, 16x16 panels, 16 x 16 angular, doubled"
                                                  : "disk rho <= 40, 16x16 panels, 16 angular, doubled";
  const double expected =
      WavePacket(f == Family::spherical ? ModeLabel(SphericalLabel{req.p0, 1, 0, Helicity::positive})
                                        : ModeLabel(CylindricalLabel{req.p0, req.p3, 0, Helicity::positive}),
                 req.p0, req.width)
          .expected_norm();
  int not_converged = 0;
  for (const auto& row : g.converged)
    for (bool c : row) not_converged += c ? 0 : 1;
  const char* claim = f == Family::spherical ? "spherical_orthonormality" : "cylindrical_orthonormality";
  rep.add(claim, "max off-diagonal / diagonal", d.str(), grid, g.max_normalized_off_diagonal(), 1e-8);
  rep.add(claim, "max Kronecker-sector overlap (m, s or l differ)", d.str(), grid, g.max_normalized_off_diagonal(),
          1e-10);
  rep.add(claim, "diagonal vs packet norm", d.str(), grid, g.max_diagonal_error(expected), 1e-3);
  rep.add(claim, "entries failing node doubling", d.str(), grid, not_converged, 0.0);
  rep.notes.push_back("Gram matrix time " + std::to_string(secs) + " s");
}

void packets_body(const CheckSpec& spec, CheckReport& rep) {
  const QuadratureSpec q = packet_quadrature(spec);
  const WavePacket w(SphericalLabel{1.0, 2, 1, Helicity::positive}, 1.0, packet_width);
  const std::string d = "spherical packet l=2 m=1 s=+1, centre 1.0, width 0.12";
  rep.labels.push_back(d);
  const double expected = w.expected_norm();
  const cplx n0 = inner(w.sampler(), w.sampler(), q, 0.0).value;
  const cplx n3 = inner(w.sampler(), w.sampler(), q, 3.0).value;
  rep.add("delta_normalization", "|<W,W> - int |g|^2| / int |g|^2 at t = 0", d, "ball r <= 40, doubled",
          std::abs(n0 - expected) / expected, 1e-3);
  rep.add("delta_normalization", "|<W,W> - int |g|^2| / int |g|^2 at t = 3", d, "ball r <= 40, doubled",
          std::abs(n3 - expected) / expected, 1e-3);
  rep.add("cauchy_surface_independence", "|<W,W>(t=0) - <W,W>(t=3)| / <W,W>", d, "ball r <= 40, doubled",
          std::abs(n0 - n3) / expected, 1e-3);

  const WavePacket wc(CylindricalLabel{1.2, 0.3, 2, Helicity::negative}, 1.2, packet_width);
  QuadratureSpec qc;
  qc.chart = Chart::cylindrical;
  const std::string dc = "cylindrical packet p3=0.3 m=2 s=-1, centre 1.2, per unit length";
  rep.labels.push_back(dc);
  for (double t : {0.0, 2.0}) {
    const cplx n = inner(wc.sampler(), wc.sampler(), qc, t).value;
    rep.add("delta_normalization", "per-length norm vs int |g|^2 / 2pi at t = " + std::to_string(static_cast<int>(t)),
            dc, "disk rho <= 40, doubled", std::abs(n - wc.expected_norm()) / wc.expected_norm(), 1e-3);
  }
  const WavePacket wp(PlaneWaveLabel{{0.0, 0.0, 1.2}, Helicity::positive}, 1.2, packet_width);
  QuadratureSpec ql;
  ql.chart = Chart::lorentz;
  ql.r_max = 60.0;
  ql.radial_panels = 32;
  const std::string dp = "plane-wave packet along z, centre 1.2, per unit area";
  rep.labels.push_back(dp);
  for (double t : {0.0, 2.0}) {
    const cplx n = inner(wp.sampler(), wp.sampler(), ql, t).value;
    rep.add("delta_normalization", "per-area norm vs int |g|^2 / (2pi)^2 at t = " + std::to_string(static_cast<int>(t)),
            dp, "line |z| <= 60, doubled", std::abs(n - wp.expected_norm()) / wp.expected_norm(), 1e-3);
  }
}

void current_body(const CheckSpec& spec, CheckReport& rep) {
  // Conservation by a fourth-order divergence of j built from analytic jets.
  std::vector<ModeLabel> la, lb;
  for (Family f : {Family::plane_wave, Family::cylindrical, Family::spherical}) {
    const auto l = labels_for(f, spec, 4);
    la.push_back(l[0]);
    lb.push_back(l[1]);
  }
  const double h = fd_step;
  const double w[5] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
  for (std::size_t i = 0; i < la.size(); ++i)
    for (std::size_t j = 0; j < lb.size(); ++j) {
      const std::string d = describe(la[i]) + " with " + describe(lb[j]);
      rep.labels.push_back(d);
      guarded(rep, d, [&] {
        const ModeField a(la[i]), b(lb[j]);
        double worst = 0.0;
        for (const auto& x : points_for(spec, 10 * i + j, 111)) {
          cplx div = 0.0;
          for (int mu = 0; mu < 4; ++mu)
            for (int k = 0; k < 5; ++k) {
              if (w[k] == 0.0) continue;
              Coords y = x;
              y[static_cast<std::size_t>(mu)] += (k - 2) * h;
              div += metric_diag[static_cast<std::size_t>(mu)] * w[k] / h *
                     current(a.jet(y), b.jet(y))[static_cast<std::size_t>(mu)];
            }
          const double pa = energy_of(la[i]), pb = energy_of(lb[j]);
          worst = std::max(worst, std::abs(div) / (norm(a.potential(x)) * norm(b.potential(x)) * (pa + pb) * (pa + pb)));
        }
        rep.add("current_conservation", "div j (fd over analytic jets)", d, points_desc(spec.points), worst, tol_fd);
      });
    }
  const ModeField pw(la[0]);
  double imag = 0.0, positive = 0.0;
  for (const auto& x : points_for(spec, 0, 113)) {
    const auto jet = pw.jet(x);
    const cplx j0 = current(jet, jet)[0];
    imag = std::max(imag, std::abs(j0.imag()) / std::abs(j0));
    if (!(j0.real() > 0.0)) positive = 1.0;
  }
  rep.add("inner_product_positivity", "plane wave j_0 real", describe(la[0]), points_desc(spec.points), imag, tol_exact);
  rep.add("inner_product_positivity", "plane wave j_0 > 0", describe(la[0]), points_desc(spec.points), positive, 0.0);

  const QuadratureSpec q = packet_quadrature(spec);
  const auto A = packet(1, 0, Helicity::positive, 1.3), B = packet(1, 0, Helicity::negative, 1.2),
             C = packet(2, 1, Helicity::positive, 1.25);
  const std::vector<std::pair<std::string, SliceSampler>> sups{
      {"A + (0.3-0.8i) B", combine(1.0, A, cplx(0.3, -0.8), B)},
      {"B - 2i C", combine(1.0, B, cplx(0.0, -2.0), C)},
      {"(0.5+0.5i) A + C", combine(cplx(0.5, 0.5), A, 1.0, C)}};
  for (const auto& [name, psi] : sups) {
    const std::string d = name + " with A = W(1,0,+;1.3), B = W(1,0,-;1.2), C = W(2,1,+;1.25)";
    rep.labels.push_back(d);
    const cplx n = inner(psi, psi, q).value;
    rep.add("inner_product_positivity", "<psi,psi> > 0 and real", d, "ball r <= 40, doubled",
            n.real() > 0.0 ? std::abs(n.imag()) / n.real() : 1.0, tol_analytic);
  }
  QuadratureSpec qs = q;
  qs.estimate_error = false;
  const auto A2 = packet(1, 0, Helicity::positive, 1.25), C2 = packet(2, 1, Helicity::positive, 1.3);
  const auto psi3 = combine(1.0, A2, cplx(0.2, 0.7), C2);
  const cplx ca(0.4, -1.1), cb(-0.7, 0.25);
  const cplx lhs = inner(combine(ca, A, cb, C), psi3, qs).value;
  const cplx rhs = std::conj(ca) * inner(A, psi3, qs).value + std::conj(cb) * inner(C, psi3, qs).value;
  const double scale = std::abs(ca) * std::abs(inner(A, psi3, qs).value) + std::abs(cb) * std::abs(inner(C, psi3, qs).value);
  const std::string d = "<a A + b C, psi3> with a = 0.4-1.1i, b = -0.7+0.25i";
  rep.labels.push_back(d);
  rep.add("sesquilinearity", "<aA+bC, psi> - conj(a)<A,psi> - conj(b)<C,psi>", d, "ball r <= 40", std::abs(lhs - rhs) / scale,
          tol_analytic);
}

void overlap_body(const CheckSpec&, CheckReport& rep) {
  const OverlapSpec os;
  for (OverlapKind k : all_overlap_kinds()) {
    const bool delta = k == OverlapKind::cyl_delta || k == OverlapKind::sph_delta;
    const std::vector<int> orders = k == OverlapKind::cyl_delta ? std::vector<int>{0, 1, 3} : std::vector<int>{1, 2, 3};
    for (int order : orders) {
      const double p = delta ? 2.1 : 1.0;
      const double pp = delta ? 2.0 : (k == OverlapKind::sph_mixed_equal ? 1.0 : 1.7);
      const OverlapResult r = bessel_overlap(k, order, p, pp, os);
      std::ostringstream d;
      d << overlap_name(k) << " order=" << order << " p=" << p << " p'=" << pp;
      rep.labels.push_back(d.str());
      const std::string grid = "R0=120 windows, eta=0.04 dampers, Richardson";
      rep.add("bessel_overlap_tables", "windowed vs closed form (scaled)", d.str(), grid, r.error_windowed(),
              os.tolerance);
      rep.add("bessel_overlap_tables", "damped vs closed form (scaled)", d.str(), grid, r.error_damped(), os.tolerance);
      rep.add("bessel_overlap_tables", "windowed vs damped (scaled)", d.str(), grid, r.disagreement(), os.agreement);
    }
  }
}

void gauge_body(const CheckSpec& spec, CheckReport& rep) {
  QuadratureSpec q;
  q.chart = Chart::spherical;
  q.r_max = 20.0;
  q.radial_panels = 8;
  q.n_theta = 32;
  q.n_phi = 64;
  const SliceSampler a = WavePacket(SphericalLabel{2.5, 2, 1, Helicity::positive}, 2.5, 0.3).sampler();
  const SliceSampler b = WavePacket(SphericalLabel{2.45, 2, 1, Helicity::positive}, 2.45, 0.3).sampler();
  const std::string da = "A = W(2,1,+; centre 2.5, width 0.3), B = W(2,1,+; centre 2.45, width 0.3)";
  rep.labels.push_back(da);
  const cplx aa = inner_f_form(a, a, q).value;
  const cplx ab = inner_f_form(a, b, q).value;
  const std::string grid = "ball r <= 20, 8x16 panels, 32 x 64 angular, doubled";
  rep.add("coulomb_form_equivalence", "|<A,B>_F - <A,B>_Coulomb| / |<A,A>|", da, grid,
          std::abs(ab - inner(a, b, q).value) / std::abs(aa), tol_analytic);
  Rng rng(mix(spec.seed, 121));
  for (int k = 0; k < 10; ++k) {
    const cplx amp(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const std::array<double, 3> c{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
    const double width = rng.uniform(1.0, 2.0), nu = rng.uniform(0.0, 2.0);
    std::ostringstream d;
    d << "Lambda " << k << ": amp " << amp.real() << (amp.imag() < 0 ? "" : "+") << amp.imag() << "i, centre (" << c[0]
      << "," << c[1] << "," << c[2] << "), width " << width << ", nu " << nu;
    rep.labels.push_back(d.str());
    const GaugeFunction lam = gaussian_gauge(amp, c, width, nu);
    const SliceSampler shifted = gauge_shift(a, lam);
    const cplx v = inner_f_form(shifted, shifted, q).value;
    rep.add("gauge_invariance", "|<A+dL, A+dL> - <A,A>| / <A,A> (field-strength form)", d.str(), grid,
            std::abs(v - aa) / std::abs(aa), 1e-8);
    if (k == 0) {
      const cplx vb = inner_f_form(shifted, b, q).value;
      rep.add("gauge_invariance", "|<A+dL, B> - <A,B>| / <A,A>", d.str(), grid, std::abs(vb - ab) / std::abs(aa), 1e-8);
    }
  }
}

// ----- registry ---------------------------------------------------------------

CheckDefinition def(std::string suite, std::string name, std::vector<std::string> claims, Body body) {
  CheckDefinition d{suite, name, claims, nullptr};
  d.run = [suite, name, claims, body](const CheckSpec& spec) { return execute(suite, name, claims, spec, body); };
  return d;
}

Body family_body(void (*fn)(Family, const CheckSpec&, CheckReport&), Family f) {
  return [fn, f](const CheckSpec& s, CheckReport& r) { fn(f, s, r); };
}

}  // namespace

void CheckReport::add(const std::string& claim, const std::string& op, const std::string& label,
                      const std::string& grid, double value, double tolerance) {
  residuals.push_back({claim, op, label, grid, value, tolerance, false, std::isfinite(value) && value <= tolerance});
}

void CheckReport::add_at_least(const std::string& claim, const std::string& op, const std::string& label,
                               const std::string& grid, double value, double bound) {
  residuals.push_back({claim, op, label, grid, value, bound, true, std::isfinite(value) && value >= bound});
}

void CheckReport::finalize() {
  pass = errors.empty() && !residuals.empty() &&
         std::all_of(residuals.begin(), residuals.end(), [](const Residual& r) { return r.pass; });
}

double CheckReport::worst_ratio() const {
  double w = 0.0;
  for (const auto& r : residuals) {
    if (r.at_least) {
      w = std::max(w, r.value > 0.0 ? r.tolerance / r.value : std::numeric_limits<double>::infinity());
    } else if (r.tolerance > 0.0) {
      w = std::max(w, r.value / r.tolerance);
    } else if (r.value > 0.0) {
      w = std::numeric_limits<double>::infinity();
    }
  }
  return w;
}

std::vector<ModeLabel> random_labels(Family family, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ModeLabel> out;
  for (int i = 0; i < count; ++i) {
    switch (family) {
      case Family::plane_wave: {
        PlaneWaveLabel l;
        do {
          l.p = {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        } while (std::sqrt(l.p[0] * l.p[0] + l.p[1] * l.p[1] + l.p[2] * l.p[2]) < 0.3);
        l.s = rng.helicity();
        out.emplace_back(l);
        break;
      }
      case Family::cylindrical: {
        CylindricalLabel l;
        l.p0 = rng.uniform(0.5, 2.0);
        l.p3 = rng.uniform(-0.9, 0.9) * l.p0;
        l.m = rng.integer(-4, 4);
        l.s = rng.helicity();
        out.emplace_back(l);
        break;
      }
      case Family::spherical: {
        SphericalLabel l;
        l.p0 = rng.uniform(0.5, 2.0);
        l.l = rng.integer(1, 5);
        l.m = rng.integer(-l.l, l.l);
        l.s = rng.helicity();
        out.emplace_back(l);
        break;
      }
    }
  }
  return out;
}

std::vector<Coords> random_points(int count, std::uint64_t seed, double min_rho) {
  Rng rng(seed);
  std::vector<Coords> out;
  while (static_cast<int>(out.size()) < count) {
    const Coords x{rng.uniform(-1, 1), rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
    if (std::hypot(x[1], x[2]) >= min_rho) out.push_back(x);
  }
  return out;
}

JacobiAngerResult jacobi_anger(double alpha, Helicity s, int m_max, double alpha_rho_max) {
  const ModeField pw(PlaneWaveLabel{{alpha, 0.0, 0.0}, s});
  std::vector<ModeField> modes;
  std::vector<cplx> weights;
  for (int m = -m_max; m <= m_max; ++m) {
    modes.emplace_back(CylindricalLabel{alpha, 0.0, m, s});
    weights.push_back(std::pow(I, m));
  }
  auto sum = [&](const Coords& x) {
    Covector r;
    for (std::size_t k = 0; k < modes.size(); ++k) r += weights[k] * modes[k].potential(x);
    return r;
  };
  // The m = -1, 0, 1 terms fix the polarization at the origin for any m_max >= 1.
  JacobiAngerResult res;
  const Coords origin{0.0, 0.0, 0.0, 0.0};
  Covector ref;
  {
    std::vector<ModeField> low;
    for (int m = -1; m <= 1; ++m) low.emplace_back(CylindricalLabel{alpha, 0.0, m, s});
    for (int m = -1; m <= 1; ++m) ref += std::pow(I, m) * low[static_cast<std::size_t>(m + 1)].potential(origin);
  }
  const Covector target = pw.potential(origin);
  cplx num = 0.0, den = 0.0;
  for (int k = 0; k < 4; ++k) {
    num += std::conj(ref[k]) * target[k];
    den += std::conj(ref[k]) * ref[k];
  }
  res.kappa = num / den;
  res.polarization_mismatch = norm(target - res.kappa * ref) / norm(target);
  const double amp = norm(target);
  const double rho_max = alpha_rho_max / alpha;
  for (int i = 0; i <= 25; ++i) {
    const double rho = rho_max * i / 25.0;
    for (int k = 0; k < 24; ++k) {
      const double ph = 2.0 * pi * k / 24.0;
      for (double z : {0.0, 0.7})
        for (double t : {0.0, 0.4}) {
          const Coords x{t, rho * std::cos(ph), rho * std::sin(ph), z};
          res.max_error = std::max(res.max_error, norm(pw.potential(x) - res.kappa * sum(x)) / amp);
        }
    }
  }
  return res;
}

const std::vector<CheckDefinition>& check_registry() {
  static const std::vector<CheckDefinition> reg = [] {
    std::vector<CheckDefinition> r;
    r.push_back(def("eigen", "plane", {"complete_set_plane"}, family_body(eigen_body, Family::plane_wave)));
    r.push_back(def("eigen", "cylindrical", {"complete_set_cylindrical"}, family_body(eigen_body, Family::cylindrical)));
    r.push_back(def("eigen", "spherical", {"complete_set_spherical"}, family_body(eigen_body, Family::spherical)));
    r.push_back(def("eigen", "pauli_lubanski", {"pauli_lubanski_identity"}, pauli_lubanski_body));
    r.push_back(def("field_equation", "plane", {"maxwell_coulomb_plane", "plane_wave_transversality"},
                    family_body(field_equation_body, Family::plane_wave)));
    r.push_back(def("field_equation", "cylindrical",
                    {"maxwell_coulomb_cylindrical", "cylindrical_reduced_maxwell", "cylindrical_gauge_constraint"},
                    family_body(field_equation_body, Family::cylindrical)));
    r.push_back(def("field_equation", "spherical",
                    {"maxwell_coulomb_spherical", "spherical_radial_equations", "spherical_divergence_constraint"},
                    family_body(field_equation_body, Family::spherical)));
    r.push_back(def("field_equation", "grid_convergence", {"fd_grid_convergence"}, grid_convergence_body));
    r.push_back(def("helicity", "involution", {"helicity_involution"}, involution_body));
    r.push_back(def("helicity", "eigenfields",
                    {"helicity_eigenfields", "cylindrical_helicity_coefficients", "spherical_helicity_radial"},
                    helicity_eigen_body));
    r.push_back(def("helicity", "momentum_commutation", {"helicity_commutes_with_momentum"}, momentum_commutation_body));
    r.push_back(def("poincare", "brackets", {"poincare_algebra"}, brackets_body));
    r.push_back(def("poincare", "null_momentum", {"null_four_momentum"}, null_momentum_body));
    r.push_back(def("poincare", "hermiticity", {"generator_hermiticity"}, hermiticity_body));
    r.push_back(def("harmonics", "dyads", {"dyad_null_frame", "dyad_lie_invariance"}, dyads_body));
    r.push_back(def("harmonics", "eth_ladders", {"cylindrical_eth_ladders", "spherical_eth_ladders"}, eth_ladders_body));
    r.push_back(def("harmonics", "orthonormality", {"spin_weighted_orthonormality"}, sw_orthonormality_body));
    r.push_back(def("harmonics", "angular_ladders", {"spherical_ladder_on_dyads", "spherical_angular_ladders"},
                    angular_ladders_body));
    r.push_back(def("degeneracy", "sectors", {"alpha_zero_degeneracy", "spherical_l_positive"}, degeneracy_body));
    r.push_back(def("crosscheck", "jacobi_anger", {"representation_consistency"}, crosscheck_body));
    r.push_back(def("orthonormality", "spherical", {"spherical_orthonormality"},
                    family_body(orthonormality_body, Family::spherical)));
    r.push_back(def("orthonormality", "cylindrical", {"cylindrical_orthonormality"},
                    family_body(orthonormality_body, Family::cylindrical)));
    r.push_back(def("normalization", "packets", {"delta_normalization", "cauchy_surface_independence"}, packets_body));
    r.push_back(def("normalization", "current",
                    {"current_conservation", "inner_product_positivity", "sesquilinearity"}, current_body));
    r.push_back(def("overlap", "bessel_tables", {"bessel_overlap_tables"}, overlap_body));
    r.push_back(def("gauge", "invariance", {"gauge_invariance", "coulomb_form_equivalence"}, gauge_body));
    return r;
  }();
  return reg;
}

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& d : check_registry())
    if (std::find(names.begin(), names.end(), d.suite) == names.end()) names.push_back(d.suite);
  return names;
}

bool has_suite(const std::string& name) {
  const auto names = suite_names();
  return name == "all" || std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<CheckReport> run_suite(const std::string& name, const CheckSpec& spec) {
  if (!has_suite(name)) {
    std::string list = "all";
    for (const auto& n : suite_names()) list += ", " + n;
    throw UnknownSuiteError("unknown suite '" + name + "'; available: " + list);
  }
  std::vector<CheckReport> out;
  for (const auto& d : check_registry())
    if (name == "all" || d.suite == name) out.push_back(d.run(spec));
  return out;
}

CheckReport run_check(const std::string& id, const CheckSpec& spec) {
  for (const auto& d : check_registry())
    if (d.suite + "/" + d.name == id) return d.run(spec);
  throw UnknownSuiteError("unknown check '" + id + "'");
}

std::vector<std::pair<std::string, std::string>> claim_manifest() {
  std::vector<std::pair<std::string, std::string>> m;
  for (const auto& d : check_registry())
    for (const auto& c : d.claims) m.emplace_back(c, d.suite + "/" + d.name);
  return m;
}

CheckReport run_eigen_suite(Family family, const CheckSpec& spec) {
  return run_check(std::string("eigen/") + (family == Family::plane_wave ? "plane" : family_name(family)), spec);
}

CheckReport run_field_equation_suite(Family family, const CheckSpec& spec) {
  return run_check(std::string("field_equation/") + (family == Family::plane_wave ? "plane" : family_name(family)),
                   spec);
}

CheckReport run_degeneracy_suite() { return run_check("degeneracy/sectors"); }

CheckReport run_crosscheck_suite(const CheckSpec& spec) { return run_check("crosscheck/jacobi_anger", spec); }

}  // namespace photon
