#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "photon/io.hpp"

using namespace photon;
using nlohmann::ordered_json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

struct Options {
  std::string family;
  std::string label;
  std::string grid;
  std::string quad;
  std::string out;
  std::string format = "csv";
  std::string suite = "all";
  std::string kind;
  std::uint64_t seed = default_seed;
  int samples = 20;
  bool timing = false;
  bool normalize = false;
};

// Writes to --out when given, to stdout otherwise.
template <class F>
void emit(const std::string& path, F write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  write(f);
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

Chart natural_chart(Family f) {
  switch (f) {
    case Family::plane_wave: return Chart::lorentz;
    case Family::cylindrical: return Chart::cylindrical;
    case Family::spherical: return Chart::spherical;
  }
  return Chart::lorentz;
}

// The chart whose axis names cover every axis in the grid string; the
// family's own chart wins when several do.
Chart infer_chart(Family family, const std::string& grid) {
  std::vector<std::string> given;
  std::istringstream in(grid);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) given.push_back(item.substr(0, item.find(':')));
  auto covers = [&](Chart c) {
    const auto names = axis_names(c);
    return std::all_of(given.begin(), given.end(),
                       [&](const std::string& g) { return std::find(names.begin(), names.end(), g) != names.end(); });
  };
  if (covers(natural_chart(family))) return natural_chart(family);
  for (Chart c : {Chart::lorentz, Chart::cylindrical, Chart::spherical})
    if (covers(c)) return c;
  throw UsageError("grid axes '" + grid + "' do not belong to a single chart (t,x,y,z | t,rho,phi,z | t,r,theta,phi)");
}

int cmd_eval(const Options& o) {
  if (o.family.empty() || o.label.empty() || o.grid.empty()) throw UsageError("eval needs --family, --label and --grid");
  const Family family = parse_family(o.family);
  const ModeLabel label = parse_label(family, o.label);
  const Chart chart = infer_chart(family, o.grid);
  const auto axes = make_axes(chart, parse_grid(chart, o.grid));
  const FieldGrid g = sample_grid(ModeField(label), chart, axes);
  std::ostringstream spec;
  spec << "command=eval;label=" << describe(label) << ";chart=" << chart_name(chart) << ";grid=";
  for (const auto& a : axes) spec << a.name << ':' << format_double(a.min) << ':' << format_double(a.max) << ':' << a.n << ' ';
  spec << ";format=" << o.format;
  const Provenance prov{"eval", spec.str(), o.seed};
  for (const auto& w : g.warnings) std::cerr << "warning: " << w << '\n';
  emit(o.out, [&](std::ostream& os) {
    if (o.format == "csv")
      write_field_grid_csv(os, g, prov);
    else
      os << field_grid_to_json(g, prov).dump(1) << '\n';
  });
  return exit_ok;
}

int cmd_validate(const Options& o) {
  if (!has_suite(o.suite)) {
    run_suite(o.suite);  // throws UnknownSuiteError with the list of suites
  }
  CheckSpec spec;
  spec.seed = o.seed;
  spec.samples = o.samples;
  if (!o.quad.empty()) spec.quadrature = parse_quadrature_spec(o.quad);
  const auto reports = run_suite(o.suite, spec);
  std::ostringstream s;
  s << "command=validate;suite=" << o.suite << ";samples=" << o.samples << ";quad=" << o.quad;
  const Provenance prov{"validate", s.str(), o.seed};
  const ordered_json j = reports_to_json(reports, prov, o.timing);
  const std::string table = summary_table(reports);
  if (!o.out.empty()) {
    emit(o.out, [&](std::ostream& os) { os << j.dump(1) << '\n'; });
    std::cout << table;
  } else if (o.format == "json") {
    std::cout << j.dump(1) << '\n';
    std::cerr << table;
  } else {
    std::cout << table;
  }
  const bool pass = std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass; });
  return pass ? exit_ok : exit_failure;
}

std::map<std::string, std::string> overlap_keys(const std::string& text, const std::vector<std::string>& allowed) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("expected key=value, got '" + item + "'");
    const std::string k = item.substr(0, eq);
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      throw UsageError("unknown overlap key '" + k + "' (allowed: " + list + ")");
    }
    kv[k] = item.substr(eq + 1);
  }
  return kv;
}

double number(const std::map<std::string, std::string>& kv, const std::string& k, double fallback) {
  const auto it = kv.find(k);
  if (it == kv.end()) return fallback;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != it->second.size() || it->second.empty()) throw UsageError("'" + k + "' expects a number");
  return v;
}

int integer(const std::map<std::string, std::string>& kv, const std::string& k, int fallback) {
  const double v = number(kv, k, fallback);
  if (v != static_cast<int>(v)) throw UsageError("'" + k + "' expects an integer");
  return static_cast<int>(v);
}

int cmd_bessel_overlap(const Options& o) {
  const auto kv = overlap_keys(o.label, {"order", "p", "p_prime"});
  std::vector<OverlapKind> kinds;
  if (o.kind == "all")
    kinds = all_overlap_kinds();
  else
    kinds.push_back(parse_overlap_kind(o.kind));
  std::vector<OverlapResult> rows;
  for (OverlapKind k : kinds) {
    const bool delta = k == OverlapKind::cyl_delta || k == OverlapKind::sph_delta;
    const double p = number(kv, "p", delta ? 2.1 : 1.0);
    double pp = number(kv, "p_prime", delta ? 2.0 : 1.7);
    if (k == OverlapKind::sph_mixed_equal) pp = p;
    rows.push_back(bessel_overlap(k, integer(kv, "order", 1), p, pp));
  }
  std::ostringstream s;
  s << "command=overlap;kind=" << o.kind << ";label=" << o.label;
  const Provenance prov{"overlap", s.str(), o.seed};
  emit(o.out, [&](std::ostream& os) { os << overlap_to_json(rows, prov).dump(1) << '\n'; });
  return exit_ok;
}

int cmd_overlap(const Options& o) {
  if (!o.kind.empty()) return cmd_bessel_overlap(o);
  if (o.family.empty()) throw UsageError("overlap needs --family (spherical or cylindrical) or --kind");
  const Family family = parse_family(o.family);
  if (family == Family::plane_wave) throw UsageError("overlap Gram matrices need --family spherical or cylindrical");
  const auto kv = overlap_keys(o.label, {"p0", "p3", "width", "l_min", "l_max", "m_max", "l", "m", "s"});
  const double p0 = number(kv, "p0", family == Family::spherical ? 1.0 : 1.2);
  const double p3 = number(kv, "p3", family == Family::spherical ? 0.0 : 0.3);
  const double width = number(kv, "width", 0.12);
  const int l_min = integer(kv, "l", integer(kv, "l_min", 1));
  const int l_max = integer(kv, "l", integer(kv, "l_max", 3));
  const int m_max = integer(kv, "m_max", 3);
  std::vector<int> helicities{1, -1};
  if (kv.count("s")) helicities = {integer(kv, "s", 1)};
  std::vector<SliceSampler> fields;
  std::vector<std::string> names;
  for (int s : helicities) {
    const Helicity h = helicity_from_int(s);
    if (family == Family::spherical) {
      for (int l = l_min; l <= l_max; ++l)
        for (int m = -l; m <= l; ++m) {
          if (kv.count("m") && m != integer(kv, "m", 0)) continue;
          const SphericalLabel lab{p0, l, m, h};
          lab.validate();
          fields.push_back(WavePacket(lab, p0, width).sampler());
          names.push_back(describe(lab));
        }
    } else {
      for (int m = -m_max; m <= m_max; ++m) {
        if (kv.count("m") && m != integer(kv, "m", 0)) continue;
        const CylindricalLabel lab{p0, p3, m, h};
        lab.validate();
        fields.push_back(WavePacket(lab, p0, width).sampler());
        names.push_back(describe(lab));
      }
    }
  }
  if (fields.empty()) throw UsageError("the label ranges select no modes");
  QuadratureSpec base;
  base.chart = natural_chart(family);
  const QuadratureSpec q = parse_quadrature_spec(o.quad, base);
  if (q.chart != base.chart) throw UsageError("quadrature chart does not match the family");
  const GramResult g = gram_matrix(fields, names, q);
  std::ostringstream s;
  s << "command=overlap;family=" << family_name(family) << ";label=" << o.label << ";quad=" << o.quad
    << ";normalize=" << o.normalize;
  const Provenance prov{"overlap", s.str(), o.seed};
  emit(o.out, [&](std::ostream& os) { os << gram_to_json(g, prov, o.normalize).dump(1) << '\n'; });
  int missing = 0;
  for (const auto& row : g.converged) missing += static_cast<int>(std::count(row.begin(), row.end(), false));
  if (missing > 0) std::cerr << missing << " entries did not converge under node doubling and are null\n";
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photon mode bases: evaluate modes, run validation suites, compute overlaps"};
  app.require_subcommand(1);
  Options o;
  auto* eval = app.add_subcommand("eval", "Sample a mode on a chart grid");
  auto* validate = app.add_subcommand("validate", "Run validation suites");
  auto* overlap = app.add_subcommand("overlap", "Gram matrix of wave packets or Bessel overlap tables");

  for (auto* sub : {eval, validate, overlap}) {
    sub->add_option("--seed", o.seed, "Seed for randomized labels and points");
    sub->add_option("--out", o.out, "Output file (stdout when omitted)");
  }
  eval->add_option("--family", o.family, "plane, cylindrical or spherical")->required();
  eval->add_option("--label", o.label, "Mode label, e.g. p0=1,l=1,m=0,s=1")->required();
  eval->add_option("--grid", o.grid, "Axes as name:min:max:n, comma separated")->required();
  eval->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  validate->add_option("suite", o.suite, "Suite name or all");
  validate->add_option("--samples", o.samples, "Randomized labels per family")->check(CLI::PositiveNumber);
  validate->add_option("--quad", o.quad, "Quadrature override for packet checks");
  validate->add_option("--format", o.format, "table or json")->check(CLI::IsMember({"json", "table"}));
  validate->add_flag("--timing", o.timing, "Include runtimes in the JSON report");

  overlap->add_option("--family", o.family, "spherical or cylindrical");
  overlap->add_option("--label", o.label, "Ranges, e.g. p0=1,width=0.12,l_max=3 or order=2,p=1,p_prime=1.6");
  overlap->add_option("--quad", o.quad, "Quadrature spec, e.g. r_max=40,panels=16,n_theta=16");
  overlap->add_option("--kind", o.kind, "Bessel overlap kind or all");
  overlap->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));
  overlap->add_flag("--normalize", o.normalize, "Divide by sqrt(G_ii G_jj)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }
  if (overlap->parsed() && o.format == "csv") o.format = "json";
  if (validate->parsed() && o.format == "csv") o.format = "table";

  try {
    if (eval->parsed()) return cmd_eval(o);
    if (validate->parsed()) return cmd_validate(o);
    return cmd_overlap(o);
  } catch (const UnknownSuiteError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const InvalidLabelError& e) {
    std::cerr << "error: invalid label: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_failure;
  }
}
