#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "photon/modes.hpp"
#include "photon/quadrature.hpp"

namespace photon {

enum class TailHandling { none, damper, averaging };

/// Quadrature over a truncated t = const slice.
///   spherical   ball r <= r_max, Gauss-Legendre in cos(theta), trapezoid in phi
///   cylindrical disk rho <= r_max at z = 0 (result per unit z length)
///   lorentz     line |z| <= r_max at x = y = 0 (result per unit transverse area)
struct QuadratureSpec {
  Chart chart = Chart::spherical;
  double r_max = 40.0;
  int radial_panels = 16;
  int radial_order = 16;
  int n_theta = 16;
  int n_phi = 16;
  TailHandling tail = TailHandling::none;
  double damper_eta = 0.0;
  int averaging_depth = 0;
  double tolerance = 1e-8;  // relative, for the node-doubling check
  bool estimate_error = true;

  void validate() const;
  QuadratureSpec doubled() const;
};

/// Parses "key=value,key=value" (keys: chart, r_max, panels, order, n_theta,
/// n_phi, tail, eta, depth, tol). Unknown keys are rejected.
QuadratureSpec parse_quadrature_spec(const std::string& text, QuadratureSpec base = {});

/// Quadrature nodes on the slice. radial_index groups nodes sharing the same
/// distance from the symmetry axis or centre so radial profiles can be reused.
struct SliceNodes {
  Chart chart = Chart::spherical;
  std::vector<std::array<double, 3>> pos;
  std::vector<double> weight;
  std::vector<int> radial_index;
  std::vector<double> radial_values;
};

SliceNodes slice_nodes(const QuadratureSpec& spec);

/// Rotates every node about the z axis by angle beta (radial grouping kept).
SliceNodes rotate_nodes(const SliceNodes& nodes, double beta);

/// A and its derivatives needed by both current forms at one node.
struct FieldSample {
  Covector a;                     // A_b
  Covector dt;                    // d_0 A_b
  std::array<cplx, 4> grad_a0{};  // d_b A_0

  /// F_0b = d_0 A_b - d_b A_0.
  cplx f0(int b) const { return dt[b] - grad_a0[static_cast<std::size_t>(b)]; }
};

using SliceSampler = std::function<std::vector<FieldSample>(double t, const SliceNodes& nodes)>;

/// j_a = i [ (d_a conj A_b) A'^b - conj A^b d_a A'_b ] from second-order jets.
std::array<cplx, 4> current(const CovectorJet& a, const CovectorJet& b);

/// Analytic divergence eta^{ab} d_a j_b of the current.
cplx current_divergence(const CovectorJet& a, const CovectorJet& b);

/// Time component of the current from slice samples (Coulomb-gauge form).
cplx current0(const FieldSample& a, const FieldSample& b);

/// Time component of the gauge-invariant form i [ conj F_0b A'^b - conj A^b F'_0b ].
cplx current0_f_form(const FieldSample& a, const FieldSample& b);

struct InnerResult {
  cplx value{};
  double error_estimate = 0.0;
  bool converged = true;
};

enum class CurrentForm { coulomb, field_strength };

/// (A, A') on the slice at time t. With spec.estimate_error the integral is
/// repeated on the doubled rule; a change larger than 10 * tolerance (relative
/// to sqrt(|(A,A)| |(A',A')|)) raises ConvergenceError.
InnerResult inner(const SliceSampler& a, const SliceSampler& b, const QuadratureSpec& spec, double t = 0.0,
                  CurrentForm form = CurrentForm::coulomb);

/// Same as inner() with the gauge-invariant current.
InnerResult inner_f_form(const SliceSampler& a, const SliceSampler& b, const QuadratureSpec& spec, double t = 0.0);

/// Samples a basis mode through its analytic jet.
SliceSampler mode_sampler(const ModeField& mode);

/// Scalar gauge function with its derivatives at a spacetime point.
struct GaugeSample {
  cplx value;
  std::array<cplx, 4> grad;                  // d_a Lambda
  std::array<std::array<cplx, 4>, 4> hess;  // d_a d_b Lambda
};
using GaugeFunction = std::function<GaugeSample(double t, const std::array<double, 3>& x)>;

/// Lambda = amp exp(-|x - c|^2 / (2 w^2)) exp(-i nu t).
GaugeFunction gaussian_gauge(cplx amp, std::array<double, 3> centre, double width, double nu);

/// A -> A + d Lambda.
SliceSampler gauge_shift(const SliceSampler& a, const GaugeFunction& lambda);

/// Superposition of one family's basis modes over the continuous label with
/// Gaussian weight g(p) = exp(-(p - centre)^2 / (4 width^2)); the discrete
/// labels come from `base`. The continuous label is p0 (spherical,
/// cylindrical at fixed p3) or |p| along the direction of base.p (plane).
class WavePacket {
 public:
  WavePacket(ModeLabel base, double centre, double width, int p_nodes = 64);

  const ModeLabel& base() const { return base_; }
  double centre() const { return centre_; }
  double width() const { return width_; }

  cplx weight(double p) const;
  /// Integral of |g|^2 over the real line, in closed form.
  double weight_norm() const;
  /// The norm the packet must have on the slice geometry of its family:
  /// the weight norm, divided by 2 pi per unit length (cylindrical) or by
  /// (2 pi)^2 per unit area (plane).
  double expected_norm() const;

  std::vector<FieldSample> sample(double t, const SliceNodes& nodes) const;
  SliceSampler sampler() const;

 private:
  ModeLabel base_;
  double centre_, width_;
  QuadratureRule p_rule_;
};

/// Generator applied through its flow. P0 uses fourth-order differences in
/// t with step delta; L3 uses fourth-order differences in the rotation angle.
SliceSampler apply_p0_flow(const SliceSampler& a, double delta = 1e-2);
SliceSampler apply_l3_flow(const SliceSampler& a, double delta = 1e-2);

/// Linear combination c1 A1 + c2 A2.
SliceSampler combine(cplx c1, const SliceSampler& a1, cplx c2, const SliceSampler& a2);

struct GramResult {
  std::vector<std::string> labels;
  std::vector<std::vector<cplx>> g;
  std::vector<std::vector<double>> error;
  std::vector<std::vector<bool>> converged;

  /// max_{i != j} |G_ij| / sqrt(G_ii G_jj).
  double max_normalized_off_diagonal() const;
  /// max_i |G_ii - expected| / expected.
  double max_diagonal_error(double expected) const;
};

GramResult gram_matrix(const std::vector<SliceSampler>& fields, const std::vector<std::string>& labels,
                       const QuadratureSpec& spec, double t = 0.0);

/// Gram matrix of Gaussian packets sharing one continuous weight.
/// Spherical: all (l, m, s) with 1 <= l <= l_max. Cylindrical: all (m, s)
/// with |m| <= m_max at fixed p3. The packet weight is centred on p0.
struct OrthonormalityRequest {
  Family family = Family::spherical;
  double p0 = 1.0;
  double p3 = 0.0;
  int l_max = 3;
  int m_max = 3;
  double width = 0.2;
  int p_nodes = 64;
};

GramResult discrete_orthonormality(const OrthonormalityRequest& request, const QuadratureSpec& spec);

/// Closed-form Bessel integrals.
///   cyl_delta        int rho J_m(a rho) J_m(a' rho) = delta(a - a') / a
///   sph_delta        int r J_{l+1/2}(p r) J_{l+1/2}(p' r) = delta(p - p') / p
///   sph_inverse_r    int J_{l+1/2}(p r) J_{l+1/2}(p' r) / r = (p/p')^{l+1/2} / (2l+1)
///   sph_mixed_lower  int J_{l-1/2}(p r) J_{l+1/2}(p' r) = (p/p')^{l+1/2} / p
///   sph_mixed_upper  int J_{l-1/2}(p' r) J_{l+1/2}(p r) = 0
///   sph_mixed_equal  int J_{l-1/2}(p r) J_{l+1/2}(p r) = 1 / (2p)
/// with p <= p' (strictly for the mixed_upper entry).
enum class OverlapKind { cyl_delta, sph_delta, sph_inverse_r, sph_mixed_lower, sph_mixed_upper, sph_mixed_equal };

const char* overlap_name(OverlapKind k);
OverlapKind parse_overlap_kind(const std::string& name);
std::vector<OverlapKind> all_overlap_kinds();

struct OverlapSpec {
  double r0 = 120.0;        // first truncation radius of the windowed partial sums
  int levels = 3;           // truncation radii r0, 2 r0, 4 r0
  double eta = 0.04;        // largest damper scale; eta/2 and eta/4 are also used
  double panel = 1.0;       // radial panel width
  int order = 10;           // Gauss-Legendre order per panel
  double smear_width = 0.25; // Gaussian smearing width for delta entries
  double tolerance = 1e-3;  // scaled absolute error
  double agreement = 5e-4;  // scaled agreement between the regularizations
};

struct OverlapResult {
  OverlapKind kind{};
  int order = 0;
  double p = 0.0, p_prime = 0.0;
  double closed_form = 0.0;
  double windowed = 0.0;  // windowed partial sums + Richardson in 1/R
  double damped = 0.0;    // Gaussian damper + Richardson in eta
  double scale = 1.0;
  bool pass = false;

  double error_windowed() const { return std::abs(windowed - closed_form) / scale; }
  double error_damped() const { return std::abs(damped - closed_form) / scale; }
  double disagreement() const { return std::abs(windowed - damped) / scale; }
};

/// For delta entries the integral is smeared in the primed parameter with a
/// Gaussian h centred at p_prime and compared with h(p)/p.
OverlapResult bessel_overlap(OverlapKind kind, int order, double p, double p_prime, const OverlapSpec& spec = {});

}  // namespace photon
