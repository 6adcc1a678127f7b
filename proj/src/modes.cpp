#include "photon/modes.hpp"

#include <cmath>
#include <sstream>

#include "photon/bessel.hpp"
#include "photon/harmonics.hpp"

namespace photon {

Helicity helicity_from_int(int s) {
  if (s == 1) return Helicity::positive;
  if (s == -1) return Helicity::negative;
  throw InvalidLabelError("helicity must be +1 or -1, got " + std::to_string(s));
}

double PlaneWaveLabel::p0() const { return std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]); }

void PlaneWaveLabel::validate() const {
  for (double v : p)
    if (!std::isfinite(v)) throw InvalidLabelError("plane-wave momentum must be finite");
  if (!(p0() > 0.0)) throw InvalidLabelError("plane-wave momentum must be nonzero (p0 = |p| > 0)");
}

double CylindricalLabel::alpha() const {
  const double a2 = (p0 - p3) * (p0 + p3);
  return a2 > 0.0 ? std::sqrt(a2) : 0.0;
}

void CylindricalLabel::validate() const {
  if (!(p0 > 0.0) || !std::isfinite(p0)) throw InvalidLabelError("cylindrical mode requires p0 > 0");
  if (!(std::abs(p3) <= p0)) throw InvalidLabelError("cylindrical mode requires |p3| <= p0");
}

void SphericalLabel::validate() const {
  if (!(p0 > 0.0) || !std::isfinite(p0)) throw InvalidLabelError("spherical mode requires p0 > 0");
  if (l < 1) throw InvalidLabelError("l must be ≥ 1 (the spherical basis vanishes for l = 0)");
  if (std::abs(m) > l) throw InvalidLabelError("spherical mode requires |m| <= l");
}

Family family_of(const ModeLabel& label) { return static_cast<Family>(label.index()); }

const char* family_name(Family f) {
  switch (f) {
    case Family::plane_wave: return "plane";
    case Family::cylindrical: return "cylindrical";
    case Family::spherical: return "spherical";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  if (name == "plane" || name == "plane_wave" || name == "plane-wave") return Family::plane_wave;
  if (name == "cylindrical" || name == "cyl") return Family::cylindrical;
  if (name == "spherical" || name == "sph") return Family::spherical;
  throw std::invalid_argument("unknown family '" + name + "' (expected plane, cylindrical or spherical)");
}

std::string describe(const ModeLabel& label) {
  std::ostringstream os;
  os.precision(6);
  std::visit(
      [&](const auto& l) {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, PlaneWaveLabel>)
          os << "plane(p=(" << l.p[0] << "," << l.p[1] << "," << l.p[2] << "),s=" << sign(l.s) << ")";
        else if constexpr (std::is_same_v<L, CylindricalLabel>)
          os << "cylindrical(p0=" << l.p0 << ",p3=" << l.p3 << ",m=" << l.m << ",s=" << sign(l.s) << ")";
        else
          os << "spherical(p0=" << l.p0 << ",l=" << l.l << ",m=" << l.m << ",s=" << sign(l.s) << ")";
      },
      label);
  return os.str();
}

Helicity helicity_of(const ModeLabel& label) {
  return std::visit([](const auto& l) { return l.s; }, label);
}

double energy_of(const ModeLabel& label) {
  return std::visit(
      [](const auto& l) {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, PlaneWaveLabel>) return l.p0();
        else return l.p0;
      },
      label);
}

namespace {

const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

template <class T>
using Vec4 = std::array<T, 4>;

template <class T>
T phase_factor(const T& arg) {
  using std::exp;
  return exp(arg);
}

// Plane wave: N eps exp(-i (p0 t - p.x)).
template <class T>
Vec4<T> plane_assemble(const PlaneWaveLabel& lab, const Vec4<T>& x) {
  const double p0 = lab.p0();
  const double norm = std::pow(2.0 * pi, -1.5) / std::sqrt(2.0 * p0);
  const T arg = (x[0] * p0 - x[1] * lab.p[0] - x[2] * lab.p[1] - x[3] * lab.p[2]) * (-I);
  const T ph = phase_factor(arg) * cplx(norm);
  const Covector eps = plane_wave_polarization(lab.p, lab.s);
  Vec4<T> a;
  for (int i = 0; i < 4; ++i) a[i] = ph * eps[i];
  return a;
}

template <class T>
T cyl_bessel_any(int k, const T& x);

template <>
cplx cyl_bessel_any<cplx>(int k, const cplx& x) {
  return bessel_jn(k, x.real());
}

template <>
Jet cyl_bessel_any<Jet>(int k, const Jet& x) {
  return bessel_jn(k, x);
}

template <class T>
T e_ikphi(int k, const T& eip, const T& eim) {
  return k >= 0 ? ipow(eip, k) : ipow(eim, -k);
}

// Cylindrical geometry: rho and e^{+-i phi}.
template <class T>
struct CylGeo {
  T rho, eip, eim;
};

// Cylindrical mode in the Cartesian-constant frame u-+ = (dx +- i dy)/sqrt2:
//   A = e^{-i(p0 t + p_3 z)} [ (alpha/(4 pi p0)) psi_m dz + c- psi_{m-1} u- + c+ psi_{m+1} u+ ]
// with psi_k = J_k(alpha rho) e^{i k phi}, c-+ = i (s p0 -+ p_3)/(4 sqrt2 pi p0)
// and p_3 = -p3 the covariant component.
template <class T>
Vec4<T> cyl_assemble(const CylindricalLabel& lab, const Vec4<T>& x, const CylGeo<T>& g) {
  const double p0 = lab.p0, p3c = -lab.p3, alpha = lab.alpha(), s = sign(lab.s);
  const T arg = (x[0] * p0 + x[3] * p3c) * (-I);
  const T ph = phase_factor(arg);
  const T ar = g.rho * alpha;
  auto psi = [&](int k) { return cyl_bessel_any<T>(k, ar) * e_ikphi(k, g.eip, g.eim); };
  const cplx c0 = alpha / (4.0 * pi * p0);
  const cplx cm = I * (s * p0 - p3c) / (4.0 * std::sqrt(2.0) * pi * p0);
  const cplx cp = I * (s * p0 + p3c) / (4.0 * std::sqrt(2.0) * pi * p0);
  const T zc = psi(lab.m) * c0;
  const T mc = psi(lab.m - 1) * cm;
  const T pc = psi(lab.m + 1) * cp;
  Vec4<T> a;
  a[0] = T(0.0);
  a[1] = (mc + pc) * (ph * inv_sqrt2);
  a[2] = (mc - pc) * (ph * (I * inv_sqrt2));
  a[3] = zc * ph;
  return a;
}

// Spherical geometry: radius, half-angle values, e^{+-i phi} and the frame
// {dr, eps-, eps+} as Lorentz covectors.
template <class T>
struct SphGeo {
  T r, s2, c2, eip, eim;
  std::array<Vec4<T>, 3> frame;
};

template <class T>
T sph_bessel_any(int l, const T& x);

template <>
cplx sph_bessel_any<cplx>(int l, const cplx& x) {
  return sph_bessel_j(l, x.real());
}

template <>
Jet sph_bessel_any<Jet>(int l, const Jet& x) {
  return sph_bessel_j(l, x);
}

// A = e^{-i p0 t} K [ (j_l/x) 0Y dr + (i s j_l + q_l)/sqrt(2L) (-1Y) eps- + (i s j_l - q_l)/sqrt(2L) (+1Y) eps+ ]
// with x = p0 r, L = l(l+1), K = sqrt(L)/2 sqrt(2 p0/pi), j_l/x = (j_{l-1} + j_{l+1})/(2l+1)
// and q_l = j_{l-1} - l j_l/x = ((l+1) j_{l-1} - l j_{l+1})/(2l+1).
template <class T>
Vec4<T> sph_assemble(const SphericalLabel& lab, const Vec4<T>& x, const SphGeo<T>& g) {
  const int l = lab.l, m = lab.m;
  const double p0 = lab.p0, s = sign(lab.s);
  const double big_l = l * (l + 1.0);
  const double k = 0.5 * std::sqrt(big_l) * std::sqrt(2.0 * p0 / pi);
  const T xr = g.r * p0;
  const T jm1 = sph_bessel_any<T>(l - 1, xr);
  const T j0 = sph_bessel_any<T>(l, xr);
  const T jp1 = sph_bessel_any<T>(l + 1, xr);
  const T jx = (jm1 + jp1) * cplx(1.0 / (2.0 * l + 1.0));
  const T q = (jm1 * (l + 1.0) - jp1 * static_cast<double>(l)) * cplx(1.0 / (2.0 * l + 1.0));
  const T eimphi = e_ikphi(m, g.eip, g.eim);
  const T y0 = sw_sph_from_half_angles(0, l, m, g.s2, g.c2, eimphi);
  const T ym = sw_sph_from_half_angles(-1, l, m, g.s2, g.c2, eimphi);
  const T yp = sw_sph_from_half_angles(1, l, m, g.s2, g.c2, eimphi);
  const cplx kt = k / std::sqrt(2.0 * big_l);
  const T c_r = jx * y0 * cplx(k);
  const T c_m = (j0 * (I * s) + q) * ym * kt;
  const T c_p = (j0 * (I * s) - q) * yp * kt;
  const T ph = phase_factor(x[0] * (-I * p0));
  Vec4<T> a;
  for (int i = 0; i < 4; ++i) a[i] = (c_r * g.frame[0][i] + c_m * g.frame[1][i] + c_p * g.frame[2][i]) * ph;
  return a;
}

template <class T>
std::array<Vec4<T>, 3> sph_frame(const T& ct, const T& st, const T& cp, const T& sp) {
  const T zero(0.0);
  const Vec4<T> rhat{zero, st * cp, st * sp, ct};
  const Vec4<T> that{zero, ct * cp, ct * sp, -st};
  const Vec4<T> phat{zero, -sp, cp, zero};
  std::array<Vec4<T>, 3> f;
  f[0] = rhat;
  for (int i = 0; i < 4; ++i) {
    f[1][i] = (that[i] + phat[i] * I) * inv_sqrt2;
    f[2][i] = (that[i] - phat[i] * I) * inv_sqrt2;
  }
  return f;
}

Vec4<cplx> as_complex(const std::array<double, 4>& x) { return {x[0], x[1], x[2], x[3]}; }

Vec4<Jet> as_jet(const std::array<double, 4>& x) {
  Vec4<Jet> j;
  for (int i = 0; i < 4; ++i) j[i] = Jet::coordinate(i, x[static_cast<std::size_t>(i)]);
  return j;
}

CylGeo<cplx> cyl_geo_value(const std::array<double, 4>& x) {
  const double rho = std::hypot(x[1], x[2]);
  const cplx e = rho > 0.0 ? cplx(x[1], x[2]) / rho : cplx(1.0);
  return {rho, e, std::conj(e)};
}

CylGeo<Jet> cyl_geo_jet(const Vec4<Jet>& x) {
  const double rho = std::hypot(x[1].v.real(), x[2].v.real());
  if (!(rho > 0.0)) throw DegenerateAxisError("analytic derivatives of cylindrical modes need rho > 0");
  const Jet r = sqrt(x[1] * x[1] + x[2] * x[2]);
  const Jet inv = inverse(r);
  return {r, (x[1] + x[2] * I) * inv, (x[1] - x[2] * I) * inv};
}

SphGeo<cplx> sph_geo_value(const std::array<double, 4>& x) {
  const double rho = std::hypot(x[1], x[2]);
  const double r = std::hypot(rho, x[3]);
  const double th = r > 0.0 ? std::atan2(rho, x[3]) : 0.0;
  const double ph = rho > 0.0 ? std::atan2(x[2], x[1]) : 0.0;
  SphGeo<cplx> g;
  g.r = r;
  g.s2 = std::sin(0.5 * th);
  g.c2 = std::cos(0.5 * th);
  g.eip = std::exp(I * ph);
  g.eim = std::conj(g.eip);
  g.frame = sph_frame<cplx>(std::cos(th), std::sin(th), std::cos(ph), std::sin(ph));
  return g;
}

SphGeo<Jet> sph_geo_jet(const Vec4<Jet>& x) {
  const double rho_v = std::hypot(x[1].v.real(), x[2].v.real());
  if (!(rho_v > 0.0)) throw DegenerateAxisError("analytic derivatives of spherical modes need a point off the z axis");
  const Jet rho = sqrt(x[1] * x[1] + x[2] * x[2]);
  const Jet r = sqrt(x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
  const Jet inv_r = inverse(r), inv_rho = inverse(rho);
  const Jet ct = x[3] * inv_r, st = rho * inv_r;
  const Jet cp = x[1] * inv_rho, sp = x[2] * inv_rho;
  SphGeo<Jet> g;
  g.r = r;
  if (ct.v.real() >= 0.0) {
    g.c2 = sqrt((ct + cplx(1.0)) * 0.5);
    g.s2 = st * inverse(g.c2 * 2.0);
  } else {
    g.s2 = sqrt((cplx(1.0) - ct) * 0.5);
    g.c2 = st * inverse(g.s2 * 2.0);
  }
  g.eip = cp + sp * I;
  g.eim = cp - sp * I;
  g.frame = sph_frame<Jet>(ct, st, cp, sp);
  return g;
}

template <class T>
Covector to_covector(const Vec4<T>& a);

template <>
Covector to_covector<cplx>(const Vec4<cplx>& a) {
  Covector c;
  for (int i = 0; i < 4; ++i) c[i] = a[i];
  return c;
}

}  // namespace

Covector plane_wave_polarization(const std::array<double, 3>& p, Helicity s) {
  const double rho = std::hypot(p[0], p[1]);
  const double th = std::atan2(rho, p[2]);
  const double ph = rho > 0.0 ? std::atan2(p[1], p[0]) : 0.0;
  const double ct = std::cos(th), st = std::sin(th), cp = std::cos(ph), sp = std::sin(ph);
  const std::array<double, 3> et{ct * cp, ct * sp, -st};
  const std::array<double, 3> ep{-sp, cp, 0.0};
  Covector e;
  for (int i = 0; i < 3; ++i) e[i + 1] = (et[i] + I * (sign(s) * ep[i])) * inv_sqrt2;
  return e;
}

CylCoefficients cylindrical_coefficients(const CylindricalLabel& label) {
  label.validate();
  const double alpha = label.alpha();
  if (!(alpha > 0.0)) throw InvalidLabelError("coefficient relations need alpha > 0");
  const double s = sign(label.s), p3c = -label.p3, p0 = label.p0;
  return {1.0, I * (s * p0 - p3c) / (std::sqrt(2.0) * alpha), I * (s * p0 + p3c) / (std::sqrt(2.0) * alpha)};
}

namespace {

template <class T>
std::array<T, 3> radial_functions(const SphericalLabel& label, const T& r) {
  label.validate();
  const int l = label.l;
  const double big_l = l * (l + 1.0);
  const double k = 0.5 * std::sqrt(big_l) * std::sqrt(2.0 * label.p0 / pi);
  const T x = r * cplx(label.p0);
  const T jm1 = sph_bessel_any<T>(l - 1, x), j0 = sph_bessel_any<T>(l, x), jp1 = sph_bessel_any<T>(l + 1, x);
  const T jx = (jm1 + jp1) * cplx(1.0 / (2.0 * l + 1.0));
  const T q = (jm1 * (l + 1.0) - jp1 * static_cast<double>(l)) * cplx(1.0 / (2.0 * l + 1.0));
  const double s = sign(label.s);
  const cplx kt = k / std::sqrt(2.0 * big_l);
  return {jx * cplx(k), (j0 * (I * s) + q) * kt, (j0 * (I * s) - q) * kt};
}

}  // namespace

SphRadial spherical_radial(const SphericalLabel& label, double r) {
  const auto f = radial_functions<cplx>(label, cplx(r));
  return {f[0], f[1], f[2]};
}

std::array<Jet, 3> spherical_radial(const SphericalLabel& label, const Jet& r) {
  return radial_functions<Jet>(label, r);
}

ModeField::ModeField(ModeLabel label) : label_(std::move(label)) {
  std::visit([](const auto& l) { l.validate(); }, label_);
}

bool ModeField::identically_zero() const {
  if (const auto* c = std::get_if<CylindricalLabel>(&label_)) {
    if (c->alpha() != 0.0) return false;
    if (c->m != 1 && c->m != -1) return true;
    // alpha = 0, m = +-1: only the component with J_0 survives; its
    // coefficient s p0 -+ p_3 vanishes unless p3 = m s p0.
    const double s = sign(c->s), p3c = -c->p3;
    const double coeff = c->m == 1 ? s * c->p0 - p3c : s * c->p0 + p3c;
    return coeff == 0.0;
  }
  return false;
}

Covector ModeField::potential(const std::array<double, 4>& x) const {
  return std::visit(
      [&](const auto& lab) -> Covector {
        using L = std::decay_t<decltype(lab)>;
        if constexpr (std::is_same_v<L, PlaneWaveLabel>)
          return to_covector(plane_assemble<cplx>(lab, as_complex(x)));
        else if constexpr (std::is_same_v<L, CylindricalLabel>)
          return to_covector(cyl_assemble<cplx>(lab, as_complex(x), cyl_geo_value(x)));
        else
          return to_covector(sph_assemble<cplx>(lab, as_complex(x), sph_geo_value(x)));
      },
      label_);
}

CovectorJet ModeField::jet(const std::array<double, 4>& x) const {
  const auto xj = as_jet(x);
  return std::visit(
      [&](const auto& lab) -> CovectorJet {
        using L = std::decay_t<decltype(lab)>;
        if constexpr (std::is_same_v<L, PlaneWaveLabel>)
          return plane_assemble<Jet>(lab, xj);
        else if constexpr (std::is_same_v<L, CylindricalLabel>)
          return cyl_assemble<Jet>(lab, xj, cyl_geo_jet(xj));
        else
          return sph_assemble<Jet>(lab, xj, sph_geo_jet(xj));
      },
      label_);
}

Tensor2 ModeField::field_strength(const std::array<double, 4>& x) const { return exterior_derivative(jet(x)); }

ModeField plane_wave(const PlaneWaveLabel& label) { return ModeField(label); }
ModeField cylindrical_mode(const CylindricalLabel& label) { return ModeField(label); }
ModeField spherical_mode(const SphericalLabel& label) { return ModeField(label); }

}  // namespace photon
