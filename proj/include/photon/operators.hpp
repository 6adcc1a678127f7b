#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "photon/grid.hpp"
#include "photon/jet.hpp"
#include "photon/modes.hpp"

namespace photon {

/// Affine complex vector field xi^a(x) = c^a + B^a_b x^b in Lorentz
/// coordinates. Every Killing field of Minkowski space has this form.
struct KillingField {
  std::string name;
  std::array<cplx, 4> c{};
  std::array<std::array<cplx, 4>, 4> b{};  // b[a][k] = d_k xi^a

  std::array<cplx, 4> at(const std::array<double, 4>& x) const;
  bool operator==(const KillingField& o) const { return c == o.c && b == o.b; }
  bool is_zero() const;

  friend KillingField operator+(const KillingField& u, const KillingField& v);
  friend KillingField operator-(const KillingField& u, const KillingField& v);
  friend KillingField operator*(cplx s, const KillingField& u);
};

/// P_mu = i d_mu (lower index label).
KillingField momentum_generator(int mu);
/// M_mu nu = i (x_mu d_nu - x_nu d_mu).
KillingField lorentz_generator(int mu, int nu);
/// P^mu = eta^{mu mu} P_mu.
KillingField momentum_generator_up(int mu);
/// L1 = M23, L2 = M31, L3 = M12.
KillingField angular_generator(int i);
/// L+- = L1 +- i L2.
KillingField ladder_generator(int sign);

/// The ten generators P0..P3, M01, M02, M03, M12, M13, M23.
std::vector<KillingField> poincare_generators();

/// Exact Lie bracket [u, v]^a = u^b d_b v^a - v^b d_b u^a.
KillingField bracket(const KillingField& u, const KillingField& v);

/// Bracket predicted by the Poincare structure constants.
///   [P_mu, P_nu] = 0
///   [P_mu, M_rs] = i (eta_mr P_s - eta_ms P_r)
///   [M_mn, M_rs] = i (eta_mr M_sn - eta_ms M_rn - eta_nr M_sm + eta_ns M_rm)
KillingField structure_constant_bracket(const KillingField& u, const KillingField& v);

struct BracketRecord {
  std::string lhs, rhs;
  bool match = false;
};

/// All 45 brackets among the ten generators, compared with zero tolerance.
std::vector<BracketRecord> bracket_table();

class BracketMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Computes [u, v] and throws BracketMismatchError naming the pair if it
/// differs from the structure constants.
KillingField commutator_check(const KillingField& u, const KillingField& v);

/// (Lie_xi A)_a = xi^b d_b A_a + A_b d_a xi^b.
Covector lie_derivative(const KillingField& xi, const CovectorJet& a, const std::array<double, 4>& x);

/// Lie_xi Lie_eta A from the second-order jet of A.
Covector lie2(const KillingField& xi, const KillingField& eta, const CovectorJet& a, const std::array<double, 4>& x);

/// L^2 = L1^2 + L2^2 + L3^2 applied to A.
Covector angular_momentum_squared(const CovectorJet& a, const std::array<double, 4>& x);

/// Lie derivative of a two-form from its value and first derivatives dF[c][a][b] = d_c F_ab.
using TensorGradient = std::array<Tensor2, 4>;
Tensor2 lie_derivative(const KillingField& xi, const Tensor2& f, const TensorGradient& df,
                       const std::array<double, 4>& x);

/// d_c F_ab from the second-order jet of A.
TensorGradient field_strength_gradient(const CovectorJet& a);

/// (S F)_ab = -(i/2) epsilon_abcd F^cd with indices raised by eta. Throws
/// std::invalid_argument if ||F + F^T|| > 1e-12 max(1, ||F||).
Tensor2 helicity_dual(const Tensor2& f);

/// Second-order jet of a covector field by fourth-order central differences.
CovectorJet fd_jet(const CovectorFunction& field, const std::array<double, 4>& x, double h);

/// Relative residual ||O A - lambda A|| / ||A|| accumulated over points.
struct OperatorResidual {
  std::string op;
  cplx eigenvalue{};
  double residual = 0.0;
  double norm = 0.0;
};

/// Operators of the complete observable sets.
enum class Observable { P0, P1, P2, P3, L3, L2, S };

const char* observable_name(Observable o);

/// Eigenvalue a basis mode carries for an observable.
cplx expected_eigenvalue(const ModeLabel& label, Observable o);

/// The observables whose simultaneous eigenbasis the family forms.
std::vector<Observable> complete_set(Family f);

enum class DerivativePath { analytic, finite_difference };

/// Eigen-residual of one observable on a mode at the given points. The
/// helicity residual compares dual(F) with s F.
OperatorResidual eigen_residual(const ModeField& mode, Observable o, const std::vector<std::array<double, 4>>& points,
                                DerivativePath path, double h = 2e-2);

/// Relative defect of S_mu = P_mu S on F, with S_mu = (1/2) eps_mu nu rho sigma P^nu M^rho sigma.
/// M is applied analytically, P^nu by fourth-order differences with step h.
double pauli_lubanski_residual(const ModeField& mode, const std::array<double, 4>& x, double h = 1e-2);

/// Finite-difference residual reports on Lorentz grids. Nodes within
/// boundary_width of an edge are excluded.
struct GridResidual {
  double max_abs = 0.0;         // max over interior of the operator norm
  double reference_norm = 0.0;  // max over the grid of ||A||
  double relative = 0.0;
  double max_a0 = 0.0;          // max over the grid of |A_0|
  int boundary_width = 2;
  std::size_t interior_nodes = 0;
};

/// eta^{ab} d_a d_b A_c with fourth-order stencils.
GridResidual dalembertian_residual(const FieldGrid& grid);
/// eta^{ab} d_a A_b with fourth-order stencils; also reports max |A_0|.
GridResidual divergence_residual(const FieldGrid& grid);

}  // namespace photon
