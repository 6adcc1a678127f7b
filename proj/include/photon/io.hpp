#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "photon/grid.hpp"
#include "photon/inner_product.hpp"
#include "photon/validation.hpp"

namespace photon {

inline constexpr const char* tool_version = "1.0.0";

/// Malformed command-line specification (unknown key, bad number, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& text);
std::string hex64(std::uint64_t v);

/// Tool version, seed and the hash of the canonical run specification.
struct Provenance {
  std::string command;
  std::string spec;  // canonical "key=value;..." string of the run
  std::uint64_t seed = default_seed;

  nlohmann::ordered_json to_json() const;
};

/// Lowercase scientific with 17 significant digits.
std::string format_double(double v);

/// "p0=1,l=1,m=0,s=1" style labels. Unknown or missing keys are UsageErrors;
/// physically invalid values surface as InvalidLabelError from the label.
ModeLabel parse_label(Family family, const std::string& text);

/// "r:0.5:5:32,theta:0.1:3.0:32" in the axis names of the chart.
std::vector<GridAxis> parse_grid(Chart chart, const std::string& text);

nlohmann::ordered_json label_to_json(const ModeLabel& label);
nlohmann::ordered_json covector_to_json(const Covector& c);

/// Header line "# {json}", a column line, then one row per node in
/// row-major order: 4 coordinates and 8 reals for the complex components.
void write_field_grid_csv(std::ostream& os, const FieldGrid& g, const Provenance& prov);
nlohmann::ordered_json field_grid_to_json(const FieldGrid& g, const Provenance& prov);

nlohmann::ordered_json report_to_json(const CheckReport& r, bool timing);
nlohmann::ordered_json reports_to_json(const std::vector<CheckReport>& reports, const Provenance& prov, bool timing);
/// Fixed-width table with one row per check.
std::string summary_table(const std::vector<CheckReport>& reports);

/// Non-converged entries are written as null.
nlohmann::ordered_json gram_to_json(const GramResult& g, const Provenance& prov, bool normalize);
nlohmann::ordered_json overlap_to_json(const std::vector<OverlapResult>& rows, const Provenance& prov);

}  // namespace photon
