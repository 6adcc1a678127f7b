#include "photon/operators.hpp"

#include <cmath>
#include <sstream>

namespace photon {

namespace {

using Coords = std::array<double, 4>;

double eta(int a) { return metric_diag[static_cast<std::size_t>(a)]; }

std::string generator_label(char kind, int i, int j = -1) {
  std::ostringstream os;
  os << kind << i;
  if (j >= 0) os << j;
  return os.str();
}

}  // namespace

std::array<cplx, 4> KillingField::at(const Coords& x) const {
  std::array<cplx, 4> v = c;
  for (int a = 0; a < 4; ++a)
    for (int k = 0; k < 4; ++k) v[a] += b[a][k] * x[k];
  return v;
}

bool KillingField::is_zero() const {
  for (int a = 0; a < 4; ++a) {
    if (c[a] != 0.0) return false;
    for (int k = 0; k < 4; ++k)
      if (b[a][k] != 0.0) return false;
  }
  return true;
}

KillingField operator+(const KillingField& u, const KillingField& v) {
  KillingField r;
  r.name = u.name + "+" + v.name;
  for (int a = 0; a < 4; ++a) {
    r.c[a] = u.c[a] + v.c[a];
    for (int k = 0; k < 4; ++k) r.b[a][k] = u.b[a][k] + v.b[a][k];
  }
  return r;
}

KillingField operator*(cplx s, const KillingField& u) {
  KillingField r = u;
  for (int a = 0; a < 4; ++a) {
    r.c[a] *= s;
    for (int k = 0; k < 4; ++k) r.b[a][k] *= s;
  }
  return r;
}

KillingField operator-(const KillingField& u, const KillingField& v) {
  KillingField r = u + cplx(-1.0) * v;
  r.name = u.name + "-" + v.name;
  return r;
}

KillingField momentum_generator(int mu) {
  if (mu < 0 || mu > 3) throw std::out_of_range("momentum index must be 0..3");
  KillingField k;
  k.name = generator_label('P', mu);
  k.c[mu] = I;
  return k;
}

KillingField momentum_generator_up(int mu) {
  KillingField k = cplx(eta(mu)) * momentum_generator(mu);
  k.name = "P^" + std::to_string(mu);
  return k;
}

KillingField lorentz_generator(int mu, int nu) {
  if (mu < 0 || mu > 3 || nu < 0 || nu > 3) throw std::out_of_range("Lorentz indices must be 0..3");
  KillingField k;
  k.name = generator_label('M', mu, nu);
  // i x_mu d_nu with x_mu = eta_mu mu x^mu, minus the swapped term.
  k.b[nu][mu] += I * eta(mu);
  k.b[mu][nu] -= I * eta(nu);
  return k;
}

KillingField angular_generator(int i) {
  KillingField k;
  switch (i) {
    case 1: k = lorentz_generator(2, 3); break;
    case 2: k = lorentz_generator(3, 1); break;
    case 3: k = lorentz_generator(1, 2); break;
    default: throw std::out_of_range("angular generator index must be 1..3");
  }
  k.name = "L" + std::to_string(i);
  return k;
}

KillingField ladder_generator(int sign) {
  KillingField k = angular_generator(1) + cplx(0.0, sign > 0 ? 1.0 : -1.0) * angular_generator(2);
  k.name = sign > 0 ? "L+" : "L-";
  return k;
}

std::vector<KillingField> poincare_generators() {
  std::vector<KillingField> g;
  for (int mu = 0; mu < 4; ++mu) g.push_back(momentum_generator(mu));
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu + 1; nu < 4; ++nu) g.push_back(lorentz_generator(mu, nu));
  return g;
}

KillingField bracket(const KillingField& u, const KillingField& v) {
  KillingField r;
  r.name = "[" + u.name + "," + v.name + "]";
  for (int a = 0; a < 4; ++a) {
    cplx s = 0.0;
    for (int k = 0; k < 4; ++k) s += u.c[k] * v.b[a][k] - v.c[k] * u.b[a][k];
    r.c[a] = s;
    for (int j = 0; j < 4; ++j) {
      cplx t = 0.0;
      for (int k = 0; k < 4; ++k) t += u.b[k][j] * v.b[a][k] - v.b[k][j] * u.b[a][k];
      r.b[a][j] = t;
    }
  }
  return r;
}

namespace {

struct GeneratorIndex {
  char kind;
  int i, j;
};

GeneratorIndex parse_generator(const KillingField& g) {
  for (int mu = 0; mu < 4; ++mu)
    if (g == momentum_generator(mu)) return {'P', mu, -1};
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      if (mu != nu && g == lorentz_generator(mu, nu)) return {'M', mu, nu};
  throw std::invalid_argument("field " + g.name + " is not a basis generator P_mu or M_mu nu");
}

double eta2(int a, int b) { return a == b ? eta(a) : 0.0; }

}  // namespace

KillingField structure_constant_bracket(const KillingField& u, const KillingField& v) {
  const auto gu = parse_generator(u), gv = parse_generator(v);
  KillingField zero;
  auto P = [](int m) { return momentum_generator(m); };
  auto M = [](int a, int b) { return a == b ? KillingField{} : lorentz_generator(a, b); };
  KillingField r;
  if (gu.kind == 'P' && gv.kind == 'P') {
    r = zero;
  } else if (gu.kind == 'P' && gv.kind == 'M') {
    const int m = gu.i, rr = gv.i, s = gv.j;
    r = cplx(0.0, eta2(m, rr)) * P(s) - cplx(0.0, eta2(m, s)) * P(rr);
  } else if (gu.kind == 'M' && gv.kind == 'P') {
    const int m = gv.i, rr = gu.i, s = gu.j;
    r = cplx(-1.0) * (cplx(0.0, eta2(m, rr)) * P(s) - cplx(0.0, eta2(m, s)) * P(rr));
  } else {
    const int m = gu.i, n = gu.j, rr = gv.i, s = gv.j;
    r = cplx(0.0, eta2(m, rr)) * M(s, n) - cplx(0.0, eta2(m, s)) * M(rr, n) - cplx(0.0, eta2(n, rr)) * M(s, m) +
        cplx(0.0, eta2(n, s)) * M(rr, m);
  }
  r.name = "structure[" + u.name + "," + v.name + "]";
  return r;
}

std::vector<BracketRecord> bracket_table() {
  const auto g = poincare_generators();
  std::vector<BracketRecord> out;
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = a + 1; b < g.size(); ++b) {
      const auto computed = bracket(g[a], g[b]);
      const auto expected = structure_constant_bracket(g[a], g[b]);
      out.push_back({g[a].name, g[b].name, computed == expected});
    }
  return out;
}

KillingField commutator_check(const KillingField& u, const KillingField& v) {
  const auto computed = bracket(u, v);
  if (!(computed == structure_constant_bracket(u, v)))
    throw BracketMismatchError("bracket [" + u.name + ", " + v.name + "] disagrees with the structure constants");
  return computed;
}

Covector lie_derivative(const KillingField& xi, const CovectorJet& a, const Coords& x) {
  const auto v = xi.at(x);
  Covector r;
  for (int i = 0; i < 4; ++i) {
    cplx s = 0.0;
    for (int k = 0; k < 4; ++k) s += v[k] * a[i].d[k] + a[k].v * xi.b[k][i];
    r[i] = s;
  }
  return r;
}

Covector lie2(const KillingField& xi, const KillingField& et, const CovectorJet& a, const Coords& x) {
  const auto ve = et.at(x);
  const auto vx = xi.at(x);
  // C_i = Lie_eta A_i and its gradient dC[c][i].
  std::array<cplx, 4> cval{};
  std::array<std::array<cplx, 4>, 4> dc{};
  for (int i = 0; i < 4; ++i) {
    cplx s = 0.0;
    for (int k = 0; k < 4; ++k) s += ve[k] * a[i].d[k] + a[k].v * et.b[k][i];
    cval[i] = s;
    for (int c = 0; c < 4; ++c) {
      cplx t = 0.0;
      for (int k = 0; k < 4; ++k) t += et.b[k][c] * a[i].d[k] + ve[k] * a[i].h[c][k] + a[k].d[c] * et.b[k][i];
      dc[c][i] = t;
    }
  }
  Covector r;
  for (int i = 0; i < 4; ++i) {
    cplx s = 0.0;
    for (int c = 0; c < 4; ++c) s += vx[c] * dc[c][i] + cval[c] * xi.b[c][i];
    r[i] = s;
  }
  return r;
}

Covector angular_momentum_squared(const CovectorJet& a, const Coords& x) {
  Covector r;
  for (int i = 1; i <= 3; ++i) {
    const auto l = angular_generator(i);
    r += lie2(l, l, a, x);
  }
  return r;
}

Tensor2 lie_derivative(const KillingField& xi, const Tensor2& f, const TensorGradient& df, const Coords& x) {
  const auto v = xi.at(x);
  Tensor2 r{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      cplx s = 0.0;
      for (int c = 0; c < 4; ++c) s += v[c] * df[c][a][b] + f[c][b] * xi.b[c][a] + f[a][c] * xi.b[c][b];
      r[a][b] = s;
    }
  return r;
}

TensorGradient field_strength_gradient(const CovectorJet& a) {
  TensorGradient g{};
  for (int c = 0; c < 4; ++c)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g[c][i][j] = a[j].h[c][i] - a[i].h[c][j];
  return g;
}

Tensor2 helicity_dual(const Tensor2& f) {
  double asym = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) asym += std::norm(f[a][b] + f[b][a]);
  if (std::sqrt(asym) > 1e-12 * std::max(1.0, norm(f)))
    throw std::invalid_argument("helicity dual requires an antisymmetric tensor");
  Tensor2 r{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      cplx s = 0.0;
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          const double e = levi_civita(a, b, c, d);
          if (e != 0.0) s += e * eta(c) * eta(d) * f[c][d];
        }
      r[a][b] = cplx(0.0, -0.5) * s;
    }
  return r;
}

CovectorJet fd_jet(const CovectorFunction& field, const Coords& x, double h) {
  static const double w1[5] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
  static const double w2[5] = {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};
  auto at = [&](int a, int ka, int b, int kb) {
    Coords y = x;
    y[a] += ka * h;
    y[b] += kb * h;
    return field(y);
  };
  const Covector f0 = field(x);
  // Axis samples f(x + k h e_a) for k = -2..2.
  std::array<std::array<Covector, 5>, 4> axis;
  for (int a = 0; a < 4; ++a)
    for (int k = -2; k <= 2; ++k) axis[a][k + 2] = k == 0 ? f0 : at(a, k, a, 0);
  CovectorJet j;
  for (int i = 0; i < 4; ++i) j[i].v = f0[i];
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 4; ++i) {
      cplx d = 0.0, dd = 0.0;
      for (int k = 0; k < 5; ++k) {
        d += w1[k] * axis[a][k][i];
        dd += w2[k] * axis[a][k][i];
      }
      j[i].d[a] = d / h;
      j[i].h[a][a] = dd / (h * h);
    }
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      Covector s;
      for (int ka = 0; ka < 5; ++ka) {
        if (w1[ka] == 0.0) continue;
        for (int kb = 0; kb < 5; ++kb) {
          if (w1[kb] == 0.0) continue;
          s += (w1[ka] * w1[kb]) * at(a, ka - 2, b, kb - 2);
        }
      }
      for (int i = 0; i < 4; ++i) j[i].h[a][b] = j[i].h[b][a] = s[i] / (h * h);
    }
  return j;
}

const char* observable_name(Observable o) {
  switch (o) {
    case Observable::P0: return "P0";
    case Observable::P1: return "P1";
    case Observable::P2: return "P2";
    case Observable::P3: return "P3";
    case Observable::L3: return "L3";
    case Observable::L2: return "L^2";
    case Observable::S: return "S";
  }
  return "?";
}

cplx expected_eigenvalue(const ModeLabel& label, Observable o) {
  const double s = sign(helicity_of(label));
  if (o == Observable::S) return s;
  if (o == Observable::P0) return energy_of(label);
  if (const auto* p = std::get_if<PlaneWaveLabel>(&label)) {
    if (o == Observable::P1) return p->p[0];
    if (o == Observable::P2) return p->p[1];
    if (o == Observable::P3) return p->p[2];
  } else if (const auto* c = std::get_if<CylindricalLabel>(&label)) {
    if (o == Observable::P3) return c->p3;
    if (o == Observable::L3) return static_cast<double>(c->m);
  } else if (const auto* q = std::get_if<SphericalLabel>(&label)) {
    if (o == Observable::L3) return static_cast<double>(q->m);
    if (o == Observable::L2) return q->l * (q->l + 1.0);
  }
  throw std::invalid_argument(std::string("the ") + family_name(family_of(label)) + " basis is not an eigenbasis of " +
                              observable_name(o));
}

std::vector<Observable> complete_set(Family f) {
  switch (f) {
    case Family::plane_wave: return {Observable::P1, Observable::P2, Observable::P3, Observable::S};
    case Family::cylindrical: return {Observable::P0, Observable::P3, Observable::L3, Observable::S};
    case Family::spherical: return {Observable::P0, Observable::L2, Observable::L3, Observable::S};
  }
  return {};
}

OperatorResidual eigen_residual(const ModeField& mode, Observable o, const std::vector<Coords>& points,
                                DerivativePath path, double h) {
  const cplx lambda = expected_eigenvalue(mode.label(), o);
  const CovectorFunction f = [&](const Coords& y) { return mode.potential(y); };
  double num = 0.0, den = 0.0;
  for (const auto& x : points) {
    const CovectorJet a = path == DerivativePath::analytic ? mode.jet(x) : fd_jet(f, x, h);
    if (o == Observable::S) {
      const Tensor2 fs = exterior_derivative(a);
      const Tensor2 d = helicity_dual(fs);
      num += std::pow(norm(d - lambda * fs), 2);
      den += std::pow(norm(fs), 2);
      continue;
    }
    Covector out;
    switch (o) {
      case Observable::P0: out = lie_derivative(momentum_generator_up(0), a, x); break;
      case Observable::P1: out = lie_derivative(momentum_generator_up(1), a, x); break;
      case Observable::P2: out = lie_derivative(momentum_generator_up(2), a, x); break;
      case Observable::P3: out = lie_derivative(momentum_generator_up(3), a, x); break;
      case Observable::L3: out = lie_derivative(angular_generator(3), a, x); break;
      case Observable::L2: out = angular_momentum_squared(a, x); break;
      case Observable::S: break;
    }
    const Covector av = value_of(a);
    num += std::pow(norm(out - lambda * av), 2);
    den += std::pow(norm(av), 2);
  }
  OperatorResidual r;
  r.op = observable_name(o);
  r.eigenvalue = lambda;
  r.norm = std::sqrt(den);
  r.residual = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
  return r;
}

double pauli_lubanski_residual(const ModeField& mode, const Coords& x, double h) {
  std::vector<std::pair<int, int>> pairs;
  for (int r = 0; r < 4; ++r)
    for (int s = r + 1; s < 4; ++s) pairs.emplace_back(r, s);
  // G[nu][k][pair] = Lie_{M_rs} F at x + (k - 2) h e_nu.
  auto lie_m_f = [&](const Coords& y) {
    const auto jet = mode.jet(y);
    const Tensor2 f = exterior_derivative(jet);
    const TensorGradient df = field_strength_gradient(jet);
    std::vector<Tensor2> g;
    for (const auto& [r, s] : pairs) g.push_back(lie_derivative(lorentz_generator(r, s), f, df, y));
    return g;
  };
  static const double w1[5] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
  // dG[nu][pair] = d_nu G_pair
  std::array<std::vector<Tensor2>, 4> dg;
  for (int nu = 0; nu < 4; ++nu) {
    dg[nu].assign(pairs.size(), Tensor2{});
    for (int k = 0; k < 5; ++k) {
      if (w1[k] == 0.0) continue;
      Coords y = x;
      y[nu] += (k - 2) * h;
      const auto g = lie_m_f(y);
      for (std::size_t p = 0; p < pairs.size(); ++p)
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) dg[nu][p][a][b] += (w1[k] / h) * g[p][a][b];
    }
  }
  const auto jet = mode.jet(x);
  const TensorGradient df = field_strength_gradient(jet);
  double num = 0.0, den = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    Tensor2 lhs{};
    for (int nu = 0; nu < 4; ++nu)
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto [r, s] = pairs[p];
        const double e = levi_civita(mu, nu, r, s);
        if (e == 0.0) continue;
        // (1/2) sum over both orders of (r, s) doubles the r < s term.
        const cplx coeff = e * eta(nu) * eta(r) * eta(s) * I;
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) lhs[a][b] += coeff * dg[nu][p][a][b];
      }
    const Tensor2 rhs = I * helicity_dual(df[mu]);
    num += std::pow(norm(lhs - rhs), 2);
    den += std::pow(norm(rhs), 2);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

namespace {

void require_lorentz_stencil(const FieldGrid& g) {
  if (g.chart != Chart::lorentz) throw std::invalid_argument("grid residuals need a Lorentz-chart grid");
  for (const auto& a : g.axes)
    if (a.n < 5)
      throw StencilError("axis " + a.name + " has " + std::to_string(a.n) +
                         " nodes; the fourth-order stencil needs at least 5 (boundary ring of width 2)");
}

template <class Op>
GridResidual grid_residual(const FieldGrid& g, Op op) {
  require_lorentz_stencil(g);
  GridResidual r;
  for (const auto& v : g.values) {
    r.reference_norm = std::max(r.reference_norm, norm(v));
    r.max_a0 = std::max(r.max_a0, std::abs(v[0]));
  }
  std::array<double, 4> h;
  for (int a = 0; a < 4; ++a) h[a] = g.axes[a].step();
  const int n0 = g.axes[0].n, n1 = g.axes[1].n, n2 = g.axes[2].n, n3 = g.axes[3].n;
  for (int i0 = 2; i0 < n0 - 2; ++i0)
    for (int i1 = 2; i1 < n1 - 2; ++i1)
      for (int i2 = 2; i2 < n2 - 2; ++i2)
        for (int i3 = 2; i3 < n3 - 2; ++i3) {
          auto shifted = [&](int axis, int k) -> const Covector& {
            std::array<int, 4> idx{i0, i1, i2, i3};
            idx[axis] += k;
            return g.at(idx[0], idx[1], idx[2], idx[3]);
          };
          r.max_abs = std::max(r.max_abs, op(shifted, h));
          ++r.interior_nodes;
        }
  r.relative = r.reference_norm > 0.0 ? r.max_abs / r.reference_norm : r.max_abs;
  return r;
}

}  // namespace

GridResidual dalembertian_residual(const FieldGrid& grid) {
  return grid_residual(grid, [](const auto& f, const std::array<double, 4>& h) {
    Covector box;
    for (int a = 0; a < 4; ++a) {
      const Covector d2 = (-1.0 / 12) * f(a, -2) + (16.0 / 12) * f(a, -1) + (-30.0 / 12) * f(a, 0) +
                          (16.0 / 12) * f(a, 1) + (-1.0 / 12) * f(a, 2);
      box += (eta(a) / (h[a] * h[a])) * d2;
    }
    return norm(box);
  });
}

GridResidual divergence_residual(const FieldGrid& grid) {
  return grid_residual(grid, [](const auto& f, const std::array<double, 4>& h) {
    cplx div = 0.0;
    for (int a = 0; a < 4; ++a) {
      const cplx d = ((1.0 / 12) * f(a, -2)[a] - (8.0 / 12) * f(a, -1)[a] + (8.0 / 12) * f(a, 1)[a] -
                      (1.0 / 12) * f(a, 2)[a]) /
                     h[a];
      div += eta(a) * d;
    }
    return std::abs(div);
  });
}

}  // namespace photon
