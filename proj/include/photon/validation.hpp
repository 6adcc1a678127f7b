#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "photon/inner_product.hpp"
#include "photon/modes.hpp"

namespace photon {

/// Seed used by every randomized check unless overridden.
inline constexpr std::uint64_t default_seed = 0x5eed2024ULL;

class UnknownSuiteError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CheckSpec {
  std::uint64_t seed = default_seed;
  int samples = 20;  // randomized labels per family
  int points = 3;    // random evaluation points per label
  std::vector<ModeLabel> labels;  // when non-empty, replaces randomized sampling
  std::optional<QuadratureSpec> quadrature;
};

struct Residual {
  std::string claim;
  std::string op;
  std::string label;
  std::string grid;
  double value = 0.0;
  double tolerance = 0.0;
  bool at_least = false;  // lower bound instead of upper bound
  bool pass = false;
};

struct CheckReport {
  std::string suite;
  std::string name;
  std::vector<std::string> claims;
  std::vector<std::string> labels;
  std::vector<Residual> residuals;
  std::vector<std::string> errors;
  std::vector<std::string> notes;
  std::uint64_t seed = default_seed;
  double runtime = 0.0;  // seconds
  bool pass = false;

  std::string id() const { return suite + "/" + name; }
  void add(const std::string& claim, const std::string& op, const std::string& label, const std::string& grid,
           double value, double tolerance);
  void add_at_least(const std::string& claim, const std::string& op, const std::string& label, const std::string& grid,
                    double value, double bound);
  /// pass <=> no errors, at least one residual and every residual within tolerance.
  void finalize();
  double worst_ratio() const;
};

struct CheckDefinition {
  std::string suite;
  std::string name;
  std::vector<std::string> claims;
  std::function<CheckReport(const CheckSpec&)> run;
};

const std::vector<CheckDefinition>& check_registry();
std::vector<std::string> suite_names();
bool has_suite(const std::string& name);

/// Runs one suite (or "all"). Throws UnknownSuiteError listing the available suites.
std::vector<CheckReport> run_suite(const std::string& name, const CheckSpec& spec = {});
CheckReport run_check(const std::string& id, const CheckSpec& spec = {});

/// (claim, check id) for every claim declared by a registered check.
std::vector<std::pair<std::string, std::string>> claim_manifest();

/// Deterministic label and point sampling.
std::vector<ModeLabel> random_labels(Family family, int count, std::uint64_t seed);
std::vector<std::array<double, 4>> random_points(int count, std::uint64_t seed, double min_rho = 0.2);

CheckReport run_eigen_suite(Family family, const CheckSpec& spec = {});
CheckReport run_field_equation_suite(Family family, const CheckSpec& spec = {});
CheckReport run_degeneracy_suite();
CheckReport run_crosscheck_suite(const CheckSpec& spec = {});

/// Plane wave with p3 = 0 rebuilt from cylindrical modes with |m| <= m_max.
struct JacobiAngerResult {
  double max_error = 0.0;  // relative to the plane-wave amplitude
  cplx kappa{};            // plane wave = kappa * sum_m i^m A_m
  double polarization_mismatch = 0.0;
};
JacobiAngerResult jacobi_anger(double alpha, Helicity s, int m_max, double alpha_rho_max = 5.0);

}  // namespace photon
