#include "photon/inner_product.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "photon/bessel.hpp"
#include "photon/harmonics.hpp"

namespace photon {

namespace {

double eta(int a) { return metric_diag[static_cast<std::size_t>(a)]; }

const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

void QuadratureSpec::validate() const {
  if (radial_order < 4 || radial_panels < 1) throw std::invalid_argument("radial rule needs order >= 4 and >= 1 panel");
  if (chart == Chart::spherical && (n_theta < 4 || n_phi < 4))
    throw std::invalid_argument("angular rule needs at least 4 nodes per axis");
  if (chart == Chart::cylindrical && n_phi < 4) throw std::invalid_argument("angular rule needs at least 4 phi nodes");
  if (!(r_max > 0.0)) throw std::invalid_argument("truncation radius must be positive");
  if (tail == TailHandling::damper && !(damper_eta > 0.0))
    throw std::invalid_argument("damper tail handling needs eta > 0");
  if (tail == TailHandling::averaging && (averaging_depth < 1 || averaging_depth >= radial_panels))
    throw std::invalid_argument("averaging depth must lie in [1, radial_panels)");
}

QuadratureSpec QuadratureSpec::doubled() const {
  QuadratureSpec d = *this;
  d.radial_panels *= 2;
  d.n_theta *= 2;
  d.n_phi *= 2;
  d.averaging_depth *= 2;
  return d;
}

QuadratureSpec parse_quadrature_spec(const std::string& text, QuadratureSpec s) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("quadrature item '" + item + "' is not key=value");
    const std::string k = item.substr(0, eq), v = item.substr(eq + 1);
    try {
      if (k == "chart") {
        if (v == "spherical") s.chart = Chart::spherical;
        else if (v == "cylindrical") s.chart = Chart::cylindrical;
        else if (v == "lorentz" || v == "line") s.chart = Chart::lorentz;
        else throw std::invalid_argument("unknown quadrature chart '" + v + "'");
      } else if (k == "r_max") s.r_max = std::stod(v);
      else if (k == "panels") s.radial_panels = std::stoi(v);
      else if (k == "order") s.radial_order = std::stoi(v);
      else if (k == "n_theta") s.n_theta = std::stoi(v);
      else if (k == "n_phi") s.n_phi = std::stoi(v);
      else if (k == "eta") { s.damper_eta = std::stod(v); s.tail = TailHandling::damper; }
      else if (k == "depth") { s.averaging_depth = std::stoi(v); s.tail = TailHandling::averaging; }
      else if (k == "tol") s.tolerance = std::stod(v);
      else if (k == "tail") {
        if (v == "none") s.tail = TailHandling::none;
        else if (v == "damper") s.tail = TailHandling::damper;
        else if (v == "averaging") s.tail = TailHandling::averaging;
        else throw std::invalid_argument("unknown tail handling '" + v + "'");
      } else throw std::invalid_argument("unknown quadrature key '" + k + "'");
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("bad value for quadrature key '" + k + "': " + v);
    }
  }
  s.validate();
  return s;
}

SliceNodes slice_nodes(const QuadratureSpec& spec) {
  spec.validate();
  SliceNodes n;
  n.chart = spec.chart;
  if (spec.chart == Chart::lorentz) {
    const auto z = composite_gauss_legendre(-spec.r_max, spec.r_max, spec.radial_panels, spec.radial_order);
    for (std::size_t i = 0; i < z.x.size(); ++i) {
      n.pos.push_back({0.0, 0.0, z.x[i]});
      n.weight.push_back(z.w[i]);
      n.radial_index.push_back(static_cast<int>(i));
      n.radial_values.push_back(z.x[i]);
    }
    return n;
  }
  const auto r = composite_gauss_legendre(0.0, spec.r_max, spec.radial_panels, spec.radial_order);
  const auto ph = periodic_trapezoid(spec.n_phi);
  n.radial_values = r.x;
  if (spec.chart == Chart::cylindrical) {
    for (std::size_t i = 0; i < r.x.size(); ++i)
      for (std::size_t k = 0; k < ph.x.size(); ++k) {
        n.pos.push_back({r.x[i] * std::cos(ph.x[k]), r.x[i] * std::sin(ph.x[k]), 0.0});
        n.weight.push_back(r.w[i] * r.x[i] * ph.w[k]);
        n.radial_index.push_back(static_cast<int>(i));
      }
    return n;
  }
  const auto mu = gauss_legendre(spec.n_theta);
  for (std::size_t i = 0; i < r.x.size(); ++i)
    for (std::size_t j = 0; j < mu.x.size(); ++j) {
      const double st = std::sqrt(1.0 - mu.x[j] * mu.x[j]);
      for (std::size_t k = 0; k < ph.x.size(); ++k) {
        n.pos.push_back({r.x[i] * st * std::cos(ph.x[k]), r.x[i] * st * std::sin(ph.x[k]), r.x[i] * mu.x[j]});
        n.weight.push_back(r.w[i] * r.x[i] * r.x[i] * mu.w[j] * ph.w[k]);
        n.radial_index.push_back(static_cast<int>(i));
      }
    }
  return n;
}

SliceNodes rotate_nodes(const SliceNodes& nodes, double beta) {
  SliceNodes r = nodes;
  const double c = std::cos(beta), s = std::sin(beta);
  for (auto& p : r.pos) {
    const double x = p[0], y = p[1];
    p[0] = c * x - s * y;
    p[1] = s * x + c * y;
  }
  return r;
}

std::array<cplx, 4> current(const CovectorJet& a, const CovectorJet& b) {
  std::array<cplx, 4> j{};
  for (int c = 0; c < 4; ++c) {
    cplx s = 0.0;
    for (int k = 0; k < 4; ++k) s += eta(k) * (std::conj(a[k].d[c]) * b[k].v - std::conj(a[k].v) * b[k].d[c]);
    j[static_cast<std::size_t>(c)] = I * s;
  }
  return j;
}

cplx current_divergence(const CovectorJet& a, const CovectorJet& b) {
  cplx s = 0.0;
  for (int k = 0; k < 4; ++k) {
    cplx boxa = 0.0, boxb = 0.0;
    for (int c = 0; c < 4; ++c) {
      boxa += eta(c) * a[k].h[c][c];
      boxb += eta(c) * b[k].h[c][c];
    }
    s += eta(k) * (std::conj(boxa) * b[k].v - std::conj(a[k].v) * boxb);
  }
  return I * s;
}

cplx current0(const FieldSample& a, const FieldSample& b) {
  cplx s = 0.0;
  for (int k = 0; k < 4; ++k) s += eta(k) * (std::conj(a.dt[k]) * b.a[k] - std::conj(a.a[k]) * b.dt[k]);
  return I * s;
}

cplx current0_f_form(const FieldSample& a, const FieldSample& b) {
  cplx s = 0.0;
  for (int k = 0; k < 4; ++k) s += eta(k) * (std::conj(a.f0(k)) * b.a[k] - std::conj(a.a[k]) * b.f0(k));
  return I * s;
}

namespace {

using CurrentFn = cplx (*)(const FieldSample&, const FieldSample&);

CurrentFn current_fn(CurrentForm form) { return form == CurrentForm::coulomb ? current0 : current0_f_form; }

// Radial weight modifier for tail handling on the slice.
std::vector<double> tail_weights(const SliceNodes& nodes, const QuadratureSpec& spec) {
  std::vector<double> w = nodes.weight;
  if (spec.tail == TailHandling::damper) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double r = nodes.radial_values[static_cast<std::size_t>(nodes.radial_index[i])];
      w[i] *= std::exp(-std::pow(spec.damper_eta * r, 2));
    }
  } else if (spec.tail == TailHandling::averaging) {
    // Mean of the partial integrals ending at the last depth+1 panel edges:
    // a node in panel q contributes to the partial sums ending at edges > q.
    const int panels = spec.radial_panels, depth = spec.averaging_depth;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const int q = nodes.radial_index[i] / spec.radial_order;
      const int first_edge = panels - depth;  // edges first_edge..panels
      const int count = std::min(depth + 1, panels - std::max(q + 1, first_edge) + 1);
      w[i] *= static_cast<double>(std::max(count, 0)) / (depth + 1);
    }
  }
  return w;
}

// Nodes per chunk; chunks hold whole radial shells so per-shell caches stay valid.
constexpr std::size_t chunk_nodes = 32768;

SliceNodes slice_subset(const SliceNodes& n, std::size_t begin, std::size_t end) {
  SliceNodes s;
  s.chart = n.chart;
  s.pos.assign(n.pos.begin() + static_cast<std::ptrdiff_t>(begin), n.pos.begin() + static_cast<std::ptrdiff_t>(end));
  s.weight.assign(n.weight.begin() + static_cast<std::ptrdiff_t>(begin),
                  n.weight.begin() + static_cast<std::ptrdiff_t>(end));
  const int r0 = n.radial_index[begin], r1 = n.radial_index[end - 1];
  s.radial_values.assign(n.radial_values.begin() + r0, n.radial_values.begin() + r1 + 1);
  s.radial_index.resize(end - begin);
  for (std::size_t i = begin; i < end; ++i) s.radial_index[i - begin] = n.radial_index[i] - r0;
  return s;
}

// Calls f(sub_nodes, weights) for consecutive shell-aligned chunks.
template <class F>
void for_each_chunk(const SliceNodes& nodes, const std::vector<double>& w, F f) {
  const std::size_t shell = nodes.radial_values.empty() ? 1 : nodes.pos.size() / nodes.radial_values.size();
  const std::size_t step = std::max<std::size_t>(1, chunk_nodes / shell) * shell;
  for (std::size_t b = 0; b < nodes.pos.size(); b += step) {
    const std::size_t e = std::min(nodes.pos.size(), b + step);
    SliceNodes sub = slice_subset(nodes, b, e);
    sub.weight.assign(w.begin() + static_cast<std::ptrdiff_t>(b), w.begin() + static_cast<std::ptrdiff_t>(e));
    f(sub);
  }
}

cplx integrate_chunk(const std::vector<FieldSample>& a, const std::vector<FieldSample>& b,
                     const std::vector<double>& w, CurrentFn fn) {
  std::vector<cplx> terms(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) terms[i] = w[i] * fn(a[i], b[i]);
  return pairwise_sum(terms);
}

// <a,b>, <a,a>, <b,b> over one node set, summed chunk by chunk in a fixed order.
std::array<cplx, 3> integrate_all(const SliceSampler& a, const SliceSampler& b, const QuadratureSpec& spec, double t,
                                  CurrentFn fn, bool with_norms) {
  const SliceNodes nodes = slice_nodes(spec);
  const auto w = tail_weights(nodes, spec);
  std::array<std::vector<cplx>, 3> parts;
  for_each_chunk(nodes, w, [&](const SliceNodes& sub) {
    const auto sa = a(t, sub), sb = b(t, sub);
    parts[0].push_back(integrate_chunk(sa, sb, sub.weight, fn));
    if (with_norms) {
      parts[1].push_back(integrate_chunk(sa, sa, sub.weight, fn));
      parts[2].push_back(integrate_chunk(sb, sb, sub.weight, fn));
    }
  });
  return {pairwise_sum(parts[0]), with_norms ? pairwise_sum(parts[1]) : cplx(0.0),
          with_norms ? pairwise_sum(parts[2]) : cplx(0.0)};
}

}  // namespace

InnerResult inner(const SliceSampler& a, const SliceSampler& b, const QuadratureSpec& spec, double t,
                  CurrentForm form) {
  const CurrentFn fn = current_fn(form);
  InnerResult r;
  r.value = integrate_all(a, b, spec, t, fn, false)[0];
  if (!spec.estimate_error) return r;
  const auto fine = integrate_all(a, b, spec.doubled(), t, fn, true);
  const double scale = std::sqrt(std::abs(fine[1]) * std::abs(fine[2]));
  r.error_estimate = std::abs(fine[0] - r.value);
  r.value = fine[0];
  r.converged = r.error_estimate <= 10.0 * spec.tolerance * std::max(scale, 1e-300);
  if (!r.converged) {
    std::ostringstream os;
    os << "inner product did not converge under node doubling: change " << r.error_estimate << " vs scale " << scale;
    throw ConvergenceError(os.str());
  }
  return r;
}

InnerResult inner_f_form(const SliceSampler& a, const SliceSampler& b, const QuadratureSpec& spec, double t) {
  return inner(a, b, spec, t, CurrentForm::field_strength);
}

SliceSampler mode_sampler(const ModeField& mode) {
  return [mode](double t, const SliceNodes& nodes) {
    std::vector<FieldSample> out(nodes.pos.size());
    for (std::size_t i = 0; i < nodes.pos.size(); ++i) {
      const auto& p = nodes.pos[i];
      const auto jet = mode.jet({t, p[0], p[1], p[2]});
      for (int k = 0; k < 4; ++k) {
        out[i].a[k] = jet[static_cast<std::size_t>(k)].v;
        out[i].dt[k] = jet[static_cast<std::size_t>(k)].d[0];
        out[i].grad_a0[static_cast<std::size_t>(k)] = jet[0].d[static_cast<std::size_t>(k)];
      }
    }
    return out;
  };
}

GaugeFunction gaussian_gauge(cplx amp, std::array<double, 3> c, double width, double nu) {
  if (!(width > 0.0)) throw std::invalid_argument("gauge function width must be positive");
  return [=](double t, const std::array<double, 3>& x) {
    const std::array<double, 3> d{x[0] - c[0], x[1] - c[1], x[2] - c[2]};
    const double r2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
    const double w2 = width * width;
    GaugeSample g;
    g.value = amp * std::exp(-0.5 * r2 / w2) * std::exp(-I * (nu * t));
    g.grad[0] = -I * nu * g.value;
    for (int i = 0; i < 3; ++i) g.grad[static_cast<std::size_t>(i) + 1] = -d[static_cast<std::size_t>(i)] / w2 * g.value;
    g.hess[0][0] = -nu * nu * g.value;
    for (std::size_t i = 1; i < 4; ++i) g.hess[0][i] = g.hess[i][0] = -I * nu * g.grad[i];
    for (std::size_t i = 1; i < 4; ++i)
      for (std::size_t j = 1; j < 4; ++j)
        g.hess[i][j] = (d[i - 1] * d[j - 1] / (w2 * w2) - (i == j ? 1.0 / w2 : 0.0)) * g.value;
    return g;
  };
}

SliceSampler gauge_shift(const SliceSampler& a, const GaugeFunction& lambda) {
  return [a, lambda](double t, const SliceNodes& nodes) {
    auto s = a(t, nodes);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const GaugeSample g = lambda(t, nodes.pos[i]);
      for (int k = 0; k < 4; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        s[i].a[k] += g.grad[uk];
        s[i].dt[k] += g.hess[0][uk];
        s[i].grad_a0[uk] += g.hess[uk][0];
      }
    }
    return s;
  };
}

WavePacket::WavePacket(ModeLabel base, double centre, double width, int p_nodes)
    : base_(std::move(base)), centre_(centre), width_(width) {
  std::visit([](const auto& l) { l.validate(); }, base_);
  if (!(width > 0.0)) throw std::invalid_argument("packet width must be positive");
  if (p_nodes < 8) throw std::invalid_argument("packet needs at least 8 momentum nodes");
  double lower = 0.0;
  if (const auto* c = std::get_if<CylindricalLabel>(&base_)) lower = std::abs(c->p3);
  const double lo = centre - 7.0 * width, hi = centre + 7.0 * width;
  if (!(lo > lower))
    throw std::invalid_argument("packet weight must vanish below the threshold of the continuous label");
  p_rule_ = gauss_legendre(p_nodes, lo, hi);
}

cplx WavePacket::weight(double p) const { return std::exp(-std::pow(p - centre_, 2) / (4.0 * width_ * width_)); }

double WavePacket::weight_norm() const { return width_ * std::sqrt(2.0 * pi); }

double WavePacket::expected_norm() const {
  switch (family_of(base_)) {
    case Family::spherical: return weight_norm();
    case Family::cylindrical: return weight_norm() / (2.0 * pi);
    case Family::plane_wave: return weight_norm() / (4.0 * pi * pi);
  }
  return weight_norm();
}

namespace {

// Distance used for radial caching: |x| for spherical, rho for cylindrical.
std::vector<double> radial_of(const SliceNodes& nodes, Chart want, std::vector<int>& index) {
  if (nodes.chart == want) {
    index = nodes.radial_index;
    return nodes.radial_values;
  }
  std::vector<double> r(nodes.pos.size());
  index.resize(nodes.pos.size());
  for (std::size_t i = 0; i < nodes.pos.size(); ++i) {
    const auto& p = nodes.pos[i];
    r[i] = want == Chart::spherical ? std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]) : std::hypot(p[0], p[1]);
    index[i] = static_cast<int>(i);
  }
  return r;
}

struct Profile {
  std::array<cplx, 3> v{}, dt{};
};

}  // namespace

std::vector<FieldSample> WavePacket::sample(double t, const SliceNodes& nodes) const {
  std::vector<FieldSample> out(nodes.pos.size());
  const auto& P = p_rule_;
  if (const auto* sl = std::get_if<SphericalLabel>(&base_)) {
    std::vector<int> idx;
    const auto rv = radial_of(nodes, Chart::spherical, idx);
    std::vector<Profile> prof(rv.size());
    SphericalLabel lab = *sl;
    for (std::size_t k = 0; k < P.x.size(); ++k) {
      lab.p0 = P.x[k];
      const cplx c = P.w[k] * weight(P.x[k]) * std::exp(-I * (P.x[k] * t));
      const cplx cd = -I * P.x[k] * c;
      for (std::size_t i = 0; i < rv.size(); ++i) {
        const SphRadial R = spherical_radial(lab, rv[i]);
        const std::array<cplx, 3> comp{R.r0, R.rm, R.rp};
        for (int q = 0; q < 3; ++q) {
          prof[i].v[q] += c * comp[q];
          prof[i].dt[q] += cd * comp[q];
        }
      }
    }
    const int l = sl->l, m = sl->m;
    // On a spherical slice every shell repeats the same angular nodes.
    const std::size_t n_ang = nodes.chart == Chart::spherical && !nodes.radial_values.empty()
                                  ? nodes.pos.size() / nodes.radial_values.size()
                                  : nodes.pos.size();
    std::vector<std::array<std::array<cplx, 3>, 3>> angular(n_ang);
    std::vector<bool> have(n_ang, false);
    for (std::size_t i = 0; i < nodes.pos.size(); ++i) {
      auto& ang = angular[i % n_ang];
      if (!have[i % n_ang]) {
        have[i % n_ang] = true;
        const auto& p = nodes.pos[i];
        const double rho = std::hypot(p[0], p[1]);
        const double th = std::atan2(rho, p[2]);
        const double ph = rho > 0.0 ? std::atan2(p[1], p[0]) : 0.0;
        const double ct = std::cos(th), st = std::sin(th), cp = std::cos(ph), sp = std::sin(ph);
        const cplx e = std::exp(I * (m * ph));
        const cplx s2 = std::sin(0.5 * th), c2 = std::cos(0.5 * th);
        const std::array<cplx, 3> y{sw_sph_from_half_angles<cplx>(0, l, m, s2, c2, e),
                                    sw_sph_from_half_angles<cplx>(-1, l, m, s2, c2, e),
                                    sw_sph_from_half_angles<cplx>(1, l, m, s2, c2, e)};
        const std::array<double, 3> rh{st * cp, st * sp, ct}, thh{ct * cp, ct * sp, -st}, phh{-sp, cp, 0.0};
        for (int a = 0; a < 3; ++a) {
          ang[0][a] = y[0] * rh[a];
          ang[1][a] = y[1] * (thh[a] + I * phh[a]) * inv_sqrt2;
          ang[2][a] = y[2] * (thh[a] - I * phh[a]) * inv_sqrt2;
        }
      }
      const Profile& pr = prof[static_cast<std::size_t>(idx[i])];
      for (int a = 0; a < 3; ++a) {
        cplx v = 0.0, d = 0.0;
        for (int q = 0; q < 3; ++q) {
          v += pr.v[q] * ang[q][a];
          d += pr.dt[q] * ang[q][a];
        }
        out[i].a[a + 1] = v;
        out[i].dt[a + 1] = d;
      }
    }
    return out;
  }
  if (const auto* cl = std::get_if<CylindricalLabel>(&base_)) {
    std::vector<int> idx;
    const auto rv = radial_of(nodes, Chart::cylindrical, idx);
    std::vector<Profile> prof(rv.size());
    const int m = cl->m;
    const double s = sign(cl->s), p3c = -cl->p3;
    const int kmax = std::abs(m) + 1;
    for (std::size_t k = 0; k < P.x.size(); ++k) {
      const double p0 = P.x[k];
      const double alpha = std::sqrt((p0 - cl->p3) * (p0 + cl->p3));
      const cplx c = P.w[k] * weight(p0) * std::exp(-I * (p0 * t));
      const cplx cd = -I * p0 * c;
      const std::array<cplx, 3> coef{alpha / (4.0 * pi * p0), I * (s * p0 - p3c) / (4.0 * std::sqrt(2.0) * pi * p0),
                                     I * (s * p0 + p3c) / (4.0 * std::sqrt(2.0) * pi * p0)};
      for (std::size_t i = 0; i < rv.size(); ++i) {
        const auto tab = bessel_jn_table(kmax, alpha * rv[i]);
        auto jn = [&](int n) {
          const double v = tab[static_cast<std::size_t>(std::abs(n))];
          return (n < 0 && (std::abs(n) % 2)) ? -v : v;
        };
        const std::array<double, 3> j{jn(m), jn(m - 1), jn(m + 1)};
        for (int q = 0; q < 3; ++q) {
          prof[i].v[q] += c * coef[q] * j[q];
          prof[i].dt[q] += cd * coef[q] * j[q];
        }
      }
    }
    for (std::size_t i = 0; i < nodes.pos.size(); ++i) {
      const auto& p = nodes.pos[i];
      const double rho = std::hypot(p[0], p[1]);
      const double ph = rho > 0.0 ? std::atan2(p[1], p[0]) : 0.0;
      const cplx zph = std::exp(-I * (p3c * p[2]));
      const Profile& pr = prof[static_cast<std::size_t>(idx[i])];
      const std::array<cplx, 3> e{std::exp(I * (m * ph)), std::exp(I * ((m - 1) * ph)), std::exp(I * ((m + 1) * ph))};
      auto assemble = [&](const std::array<cplx, 3>& v, Covector& out_a) {
        const cplx z = v[0] * e[0] * zph, mc = v[1] * e[1] * zph, pc = v[2] * e[2] * zph;
        out_a[1] = (mc + pc) * inv_sqrt2;
        out_a[2] = (mc - pc) * (I * inv_sqrt2);
        out_a[3] = z;
      };
      assemble(pr.v, out[i].a);
      assemble(pr.dt, out[i].dt);
    }
    return out;
  }
  const auto& pl = std::get<PlaneWaveLabel>(base_);
  const double k0 = pl.p0();
  const std::array<double, 3> n{pl.p[0] / k0, pl.p[1] / k0, pl.p[2] / k0};
  const Covector eps = plane_wave_polarization(pl.p, pl.s);
  for (std::size_t i = 0; i < nodes.pos.size(); ++i) {
    const auto& x = nodes.pos[i];
    const double nx = n[0] * x[0] + n[1] * x[1] + n[2] * x[2];
    cplx v = 0.0, d = 0.0;
    for (std::size_t k = 0; k < P.x.size(); ++k) {
      const double p = P.x[k];
      const cplx c = P.w[k] * weight(p) * std::pow(2.0 * pi, -1.5) / std::sqrt(2.0 * p) * std::exp(-I * (p * (t - nx)));
      v += c;
      d += -I * p * c;
    }
    out[i].a = v * eps;
    out[i].dt = d * eps;
  }
  return out;
}

SliceSampler WavePacket::sampler() const {
  return [self = *this](double t, const SliceNodes& nodes) { return self.sample(t, nodes); };
}

namespace {

const double fd_w[5] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};

void accumulate(FieldSample& out, const FieldSample& in, cplx c) {
  out.a += c * in.a;
  out.dt += c * in.dt;
  for (std::size_t k = 0; k < 4; ++k) out.grad_a0[k] += c * in.grad_a0[k];
}

// (Phi_beta^* A)_a(x) with Phi_beta the rotation by -beta about z.
FieldSample pull_back(const FieldSample& s, double beta) {
  const double c = std::cos(beta), sn = std::sin(beta);
  auto rot = [&](cplx a1, cplx a2, cplx& o1, cplx& o2) {
    o1 = a1 * c - a2 * sn;
    o2 = a1 * sn + a2 * c;
  };
  FieldSample r = s;
  rot(s.a[1], s.a[2], r.a[1], r.a[2]);
  rot(s.dt[1], s.dt[2], r.dt[1], r.dt[2]);
  rot(s.grad_a0[1], s.grad_a0[2], r.grad_a0[1], r.grad_a0[2]);
  return r;
}

}  // namespace

SliceSampler apply_p0_flow(const SliceSampler& a, double delta) {
  return [a, delta](double t, const SliceNodes& nodes) {
    std::vector<FieldSample> out(nodes.pos.size());
    for (int k = 0; k < 5; ++k) {
      if (fd_w[k] == 0.0) continue;
      const auto s = a(t + (k - 2) * delta, nodes);
      const cplx c = I * fd_w[k] / delta;
      for (std::size_t i = 0; i < s.size(); ++i) accumulate(out[i], s[i], c);
    }
    return out;
  };
}

SliceSampler apply_l3_flow(const SliceSampler& a, double delta) {
  return [a, delta](double t, const SliceNodes& nodes) {
    std::vector<FieldSample> out(nodes.pos.size());
    for (int k = 0; k < 5; ++k) {
      if (fd_w[k] == 0.0) continue;
      const double beta = (k - 2) * delta;
      const auto s = a(t, rotate_nodes(nodes, -beta));
      const cplx c = I * fd_w[k] / delta;
      for (std::size_t i = 0; i < s.size(); ++i) accumulate(out[i], pull_back(s[i], beta), c);
    }
    return out;
  };
}

SliceSampler combine(cplx c1, const SliceSampler& a1, cplx c2, const SliceSampler& a2) {
  return [=](double t, const SliceNodes& nodes) {
    const auto s1 = a1(t, nodes), s2 = a2(t, nodes);
    std::vector<FieldSample> out(s1.size());
    for (std::size_t i = 0; i < s1.size(); ++i) {
      accumulate(out[i], s1[i], c1);
      accumulate(out[i], s2[i], c2);
    }
    return out;
  };
}

double GramResult::max_normalized_off_diagonal() const {
  double mx = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      if (i != j) mx = std::max(mx, std::abs(g[i][j]) / std::sqrt(std::abs(g[i][i]) * std::abs(g[j][j])));
  return mx;
}

double GramResult::max_diagonal_error(double expected) const {
  double mx = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) mx = std::max(mx, std::abs(g[i][i] - expected) / expected);
  return mx;
}

GramResult gram_matrix(const std::vector<SliceSampler>& fields, const std::vector<std::string>& labels,
                       const QuadratureSpec& spec, double t) {
  const std::size_t n = fields.size();
  auto compute = [&](const QuadratureSpec& sp) {
    const SliceNodes nodes = slice_nodes(sp);
    const auto w = tail_weights(nodes, sp);
    std::vector<std::vector<std::vector<cplx>>> parts(n, std::vector<std::vector<cplx>>(n));
    for_each_chunk(nodes, w, [&](const SliceNodes& sub) {
      std::vector<std::vector<FieldSample>> s;
      s.reserve(n);
      for (const auto& f : fields) s.push_back(f(t, sub));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) parts[i][j].push_back(integrate_chunk(s[i], s[j], sub.weight, current0));
    });
    std::vector<std::vector<cplx>> g(n, std::vector<cplx>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        g[i][j] = pairwise_sum(parts[i][j]);
        if (j != i) g[j][i] = std::conj(g[i][j]);
      }
    return g;
  };
  GramResult r;
  r.labels = labels;
  r.g = compute(spec);
  r.error.assign(n, std::vector<double>(n, 0.0));
  r.converged.assign(n, std::vector<bool>(n, true));
  if (spec.estimate_error) {
    const auto fine = compute(spec.doubled());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        r.error[i][j] = std::abs(fine[i][j] - r.g[i][j]);
        const double scale = std::sqrt(std::abs(fine[i][i]) * std::abs(fine[j][j]));
        r.converged[i][j] = r.error[i][j] <= 10.0 * spec.tolerance * scale;
      }
    r.g = fine;
  }
  return r;
}

GramResult discrete_orthonormality(const OrthonormalityRequest& req, const QuadratureSpec& spec) {
  std::vector<SliceSampler> fields;
  std::vector<std::string> labels;
  for (int s : {1, -1}) {
    const Helicity h = helicity_from_int(s);
    if (req.family == Family::spherical) {
      for (int l = 1; l <= req.l_max; ++l)
        for (int m = -l; m <= l; ++m) {
          const SphericalLabel lab{req.p0, l, m, h};
          fields.push_back(WavePacket(lab, req.p0, req.width, req.p_nodes).sampler());
          labels.push_back(describe(lab));
        }
    } else if (req.family == Family::cylindrical) {
      for (int m = -req.m_max; m <= req.m_max; ++m) {
        const CylindricalLabel lab{req.p0, req.p3, m, h};
        fields.push_back(WavePacket(lab, req.p0, req.width, req.p_nodes).sampler());
        labels.push_back(describe(lab));
      }
    } else {
      throw std::invalid_argument("discrete orthonormality is defined for spherical and cylindrical families");
    }
  }
  return gram_matrix(fields, labels, spec);
}

const char* overlap_name(OverlapKind k) {
  switch (k) {
    case OverlapKind::cyl_delta: return "cyl_delta";
    case OverlapKind::sph_delta: return "sph_delta";
    case OverlapKind::sph_inverse_r: return "sph_inverse_r";
    case OverlapKind::sph_mixed_lower: return "sph_mixed_lower";
    case OverlapKind::sph_mixed_upper: return "sph_mixed_upper";
    case OverlapKind::sph_mixed_equal: return "sph_mixed_equal";
  }
  return "?";
}

std::vector<OverlapKind> all_overlap_kinds() {
  return {OverlapKind::cyl_delta,       OverlapKind::sph_delta,       OverlapKind::sph_inverse_r,
          OverlapKind::sph_mixed_lower, OverlapKind::sph_mixed_upper, OverlapKind::sph_mixed_equal};
}

OverlapKind parse_overlap_kind(const std::string& name) {
  for (auto k : all_overlap_kinds())
    if (name == overlap_name(k)) return k;
  throw std::invalid_argument("unknown overlap kind '" + name + "'");
}

namespace {

// Richardson extrapolation for values at step ratio 2 with an error series
// c1 h^k + c2 h^(2k) + ... (k = 1 for a general series, k = 2 for an even one).
double richardson(std::vector<double> v, int k = 1) {
  for (std::size_t level = 1; level < v.size(); ++level) {
    const double f = std::pow(2.0, static_cast<double>(k * static_cast<int>(level)));
    for (std::size_t i = v.size() - 1; i >= level; --i) v[i] = (f * v[i] - v[i - 1]) / (f - 1.0);
  }
  return v.back();
}

// Taper equal to the mean over R' in [R, 2R] (weight sin^2) of the indicator r < R'.
double window(double r, double big_r) {
  if (r <= big_r) return 1.0;
  if (r >= 2.0 * big_r) return 0.0;
  const double u = r - big_r;
  return 1.0 - (u - big_r / (2.0 * pi) * std::sin(2.0 * pi * u / big_r)) / big_r;
}

}  // namespace

OverlapResult bessel_overlap(OverlapKind kind, int order, double p, double pp, const OverlapSpec& spec) {
  if (!(p > 0.0) || !(pp > 0.0)) throw std::invalid_argument("overlap parameters must be positive");
  const bool delta = kind == OverlapKind::cyl_delta || kind == OverlapKind::sph_delta;
  if (kind == OverlapKind::cyl_delta) {
    if (order < 0) throw std::invalid_argument("cylindrical overlap needs m >= 0");
  } else if (order < (kind == OverlapKind::sph_delta || kind == OverlapKind::sph_inverse_r ? 0 : 1)) {
    throw std::invalid_argument("spherical overlap order l out of range");
  }
  if (kind == OverlapKind::sph_mixed_equal) pp = p;
  if ((kind == OverlapKind::sph_inverse_r || kind == OverlapKind::sph_mixed_lower) && p > pp)
    throw std::invalid_argument("table entry requires p <= p'");
  if (kind == OverlapKind::sph_mixed_upper && !(p < pp)) throw std::invalid_argument("table entry requires p < p'");

  const double nu = order + 0.5;
  OverlapResult res;
  res.kind = kind;
  res.order = order;
  res.p = p;
  res.p_prime = pp;

  auto kernel = [&](double x) { return kind == OverlapKind::cyl_delta ? bessel_jn(order, x) : bessel_j(nu, x); };
  std::function<double(double)> f;
  QuadratureRule smear;
  std::vector<double> smear_h;
  double r_cut = 1e300;
  if (delta) {
    const double w = spec.smear_width;
    if (!(pp - 7.0 * w > 0.0)) throw std::invalid_argument("smearing window must stay at positive parameter");
    smear = gauss_legendre(160, pp - 7.0 * w, pp + 7.0 * w);
    for (double q : smear.x) smear_h.push_back(std::exp(-0.5 * std::pow((q - pp) / w, 2)));
    res.closed_form = std::exp(-0.5 * std::pow((p - pp) / w, 2)) / p;
    // The smeared kernel decays like exp(-(w r)^2 / 2).
    r_cut = 9.0 / w;
    f = [&](double r) {
      double h = 0.0;
      for (std::size_t k = 0; k < smear.x.size(); ++k) h += smear.w[k] * smear_h[k] * kernel(smear.x[k] * r);
      return r * kernel(p * r) * h;
    };
  } else {
    switch (kind) {
      case OverlapKind::sph_inverse_r:
        res.closed_form = std::pow(p / pp, nu) / (2.0 * order + 1.0);
        f = [&](double r) { return bessel_j(nu, p * r) * bessel_j(nu, pp * r) / r; };
        break;
      case OverlapKind::sph_mixed_lower:
        res.closed_form = std::pow(p / pp, nu) / p;
        f = [&](double r) { return bessel_j(nu - 1.0, p * r) * bessel_j(nu, pp * r); };
        break;
      case OverlapKind::sph_mixed_upper:
        res.closed_form = 0.0;
        f = [&](double r) { return bessel_j(nu - 1.0, pp * r) * bessel_j(nu, p * r); };
        break;
      default:
        res.closed_form = 1.0 / (2.0 * p);
        f = [&](double r) { return bessel_j(nu - 1.0, p * r) * bessel_j(nu, p * r); };
        break;
    }
  }
  res.scale = std::max(std::abs(res.closed_form), 1.0 / p);

  const double r_window = spec.r0 * std::pow(2.0, spec.levels);  // 2 * largest R
  const double eta_min = spec.eta / 4.0;
  const double r_damp = 6.5 / eta_min;
  const double r_end = std::min(std::max(r_window, r_damp), r_cut);
  const int panels = static_cast<int>(std::ceil(r_end / spec.panel));
  const QuadratureRule rule = composite_gauss_legendre(0.0, panels * spec.panel, panels, spec.order);
  std::vector<double> fv(rule.x.size());
  for (std::size_t i = 0; i < rule.x.size(); ++i) fv[i] = f(rule.x[i]);

  auto sum_with = [&](auto weight_fn) {
    std::vector<double> t(fv.size());
    for (std::size_t i = 0; i < fv.size(); ++i) t[i] = rule.w[i] * fv[i] * weight_fn(rule.x[i]);
    return pairwise_sum(t);
  };
  std::vector<double> win, damp;
  for (int k = 0; k < spec.levels; ++k) {
    const double big_r = spec.r0 * std::pow(2.0, k);
    win.push_back(sum_with([&](double r) { return window(r, big_r); }));
  }
  for (int k = 0; k < 3; ++k) {
    const double e = spec.eta / std::pow(2.0, k);
    damp.push_back(sum_with([&](double r) { return std::exp(-std::pow(e * r, 2)); }));
  }
  res.windowed = richardson(win);
  // A Gaussian-smeared integrand decays fast enough for the damper to expand in eta^2.
  res.damped = richardson(damp, delta ? 2 : 1);
  res.pass = res.error_windowed() <= spec.tolerance && res.error_damped() <= spec.tolerance &&
             res.disagreement() <= spec.agreement;
  return res;
}

}  // namespace photon
