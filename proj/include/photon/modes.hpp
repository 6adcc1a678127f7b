#pragma once

#include <array>
#include <string>
#include <variant>

#include "photon/charts.hpp"
#include "photon/jet.hpp"

namespace photon {

enum class Helicity { negative = -1, positive = 1 };

inline int sign(Helicity s) { return static_cast<int>(s); }

/// Converts +1 / -1 to a Helicity; anything else is an InvalidLabelError.
Helicity helicity_from_int(int s);

struct PlaneWaveLabel {
  std::array<double, 3> p{0.0, 0.0, 1.0};  // contravariant spatial momentum
  Helicity s = Helicity::positive;

  double p0() const;
  void validate() const;
};

/// Bessel-beam label. p3 is the eigenvalue of P^3 = -i d_z.
struct CylindricalLabel {
  double p0 = 1.0;
  double p3 = 0.0;
  int m = 0;
  Helicity s = Helicity::positive;

  double alpha() const;
  void validate() const;
};

struct SphericalLabel {
  double p0 = 1.0;
  int l = 1;
  int m = 0;
  Helicity s = Helicity::positive;

  void validate() const;
};

using ModeLabel = std::variant<PlaneWaveLabel, CylindricalLabel, SphericalLabel>;

enum class Family { plane_wave, cylindrical, spherical };

Family family_of(const ModeLabel& label);
const char* family_name(Family f);
Family parse_family(const std::string& name);
std::string describe(const ModeLabel& label);
Helicity helicity_of(const ModeLabel& label);
/// Energy p0 of the mode.
double energy_of(const ModeLabel& label);

/// Normalized basis mode. The potential is in Coulomb gauge (A_0 = 0) and is
/// evaluated through analytic limits on coordinate axes and at the origin.
class ModeField {
 public:
  explicit ModeField(ModeLabel label);

  const ModeLabel& label() const { return label_; }
  Family family() const { return family_of(label_); }
  Helicity helicity() const { return helicity_of(label_); }

  Covector potential(const std::array<double, 4>& x) const;
  Covector potential(const SpacetimePoint& p) const { return potential(p.lorentz_coords()); }

  /// Second-order jet of A_mu in Lorentz coordinates. Requires a point off
  /// the z axis for cylindrical and spherical modes.
  CovectorJet jet(const std::array<double, 4>& x) const;

  /// F_ab = d_a A_b - d_b A_a from the analytic jet.
  Tensor2 field_strength(const std::array<double, 4>& x) const;
  Tensor2 field_strength(const SpacetimePoint& p) const { return field_strength(p.lorentz_coords()); }

  /// True for the cylindrical alpha = 0 labels whose basis expression vanishes.
  bool identically_zero() const;

 private:
  ModeLabel label_;
};

ModeField plane_wave(const PlaneWaveLabel& label);
ModeField cylindrical_mode(const CylindricalLabel& label);
ModeField spherical_mode(const SphericalLabel& label);

/// Polarization covector eps_s(p) = (e_theta(p) + i s e_phi(p)) / sqrt2.
Covector plane_wave_polarization(const std::array<double, 3>& p, Helicity s);

/// Coefficients (a0, a-, a+) of the cylindrical mode along
/// {J_m e^{im phi} dz, J_{m-1} e^{im phi} eps-, J_{m+1} e^{im phi} eps+},
/// each multiplied by alpha / (4 pi p0). They satisfy the gauge and helicity
/// relations with a0 = 1.
struct CylCoefficients {
  cplx a0, a_minus, a_plus;
};
CylCoefficients cylindrical_coefficients(const CylindricalLabel& label);

/// Radial functions of the spherical mode in the {dr, eps-, eps+} frame at
/// t = 0: A = R0 (0Y) dr + Rm (-1Y) eps- + Rp (+1Y) eps+.
struct SphRadial {
  cplx r0, rm, rp;
};
SphRadial spherical_radial(const SphericalLabel& label, double r);

/// The same radial functions (R0, R-, R+) as jets in r, for differentiating the radial equations.
std::array<Jet, 3> spherical_radial(const SphericalLabel& label, const Jet& r);

}  // namespace photon
