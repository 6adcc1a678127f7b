#include "photon/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace photon {

using nlohmann::ordered_json;

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

ordered_json Provenance::to_json() const {
  return {{"tool", "photonmodes"},
          {"version", tool_version},
          {"command", command},
          {"seed", seed},
          {"spec", spec},
          {"spec_hash", hex64(fnv1a(spec))}};
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x))
    throw UsageError("'" + key + "' expects a number, got '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  int x = 0;
  const char* begin = v.data() + (v.size() > 1 && v[0] == '+' ? 1 : 0);
  const auto [ptr, ec] = std::from_chars(begin, v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw UsageError("'" + key + "' expects an integer, got '" + v + "'");
  return x;
}

std::map<std::string, std::string> key_values(const std::string& text, const std::set<std::string>& allowed) {
  std::map<std::string, std::string> kv;
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    if (!allowed.count(key)) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      throw UsageError("unknown label key '" + key + "' (allowed: " + list + ")");
    }
    if (kv.count(key)) throw UsageError("duplicate label key '" + key + "'");
    kv[key] = item.substr(eq + 1);
  }
  for (const auto& a : allowed)
    if (!kv.count(a)) throw UsageError("missing label key '" + a + "'");
  return kv;
}

}  // namespace

ModeLabel parse_label(Family family, const std::string& text) {
  switch (family) {
    case Family::plane_wave: {
      auto kv = key_values(text, {"px", "py", "pz", "s"});
      PlaneWaveLabel l;
      l.p = {to_double("px", kv["px"]), to_double("py", kv["py"]), to_double("pz", kv["pz"])};
      l.s = helicity_from_int(to_int("s", kv["s"]));
      l.validate();
      return l;
    }
    case Family::cylindrical: {
      auto kv = key_values(text, {"p0", "p3", "m", "s"});
      CylindricalLabel l{to_double("p0", kv["p0"]), to_double("p3", kv["p3"]), to_int("m", kv["m"]),
                         helicity_from_int(to_int("s", kv["s"]))};
      l.validate();
      return l;
    }
    case Family::spherical: {
      auto kv = key_values(text, {"p0", "l", "m", "s"});
      SphericalLabel l{to_double("p0", kv["p0"]), to_int("l", kv["l"]), to_int("m", kv["m"]),
                       helicity_from_int(to_int("s", kv["s"]))};
      l.validate();
      return l;
    }
  }
  throw UsageError("unknown family");
}

std::vector<GridAxis> parse_grid(Chart chart, const std::string& text) {
  const auto names = axis_names(chart);
  std::vector<GridAxis> axes;
  for (const auto& item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 4) throw UsageError("grid axis must be name:min:max:n, got '" + item + "'");
    if (std::find(names.begin(), names.end(), parts[0]) == names.end()) {
      std::string list;
      for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
      throw UsageError("unknown axis '" + parts[0] + "' for this chart (axes: " + list + ")");
    }
    for (const auto& a : axes)
      if (a.name == parts[0]) throw UsageError("duplicate axis '" + parts[0] + "'");
    GridAxis a{parts[0], to_double("min", parts[1]), to_double("max", parts[2]), to_int("n", parts[3])};
    if (a.n < 1) throw UsageError("axis '" + a.name + "' needs n >= 1");
    if (a.n > 1 && !(a.max > a.min)) throw UsageError("axis '" + a.name + "' needs max > min");
    axes.push_back(a);
  }
  return axes;
}

ordered_json label_to_json(const ModeLabel& label) {
  ordered_json j;
  j["family"] = family_name(family_of(label));
  if (const auto* p = std::get_if<PlaneWaveLabel>(&label)) {
    j["p"] = {p->p[0], p->p[1], p->p[2]};
    j["s"] = sign(p->s);
  } else if (const auto* c = std::get_if<CylindricalLabel>(&label)) {
    j["p0"] = c->p0;
    j["p3"] = c->p3;
    j["m"] = c->m;
    j["s"] = sign(c->s);
  } else if (const auto* s = std::get_if<SphericalLabel>(&label)) {
    j["p0"] = s->p0;
    j["l"] = s->l;
    j["m"] = s->m;
    j["s"] = sign(s->s);
  }
  return j;
}

ordered_json covector_to_json(const Covector& c) {
  ordered_json a = ordered_json::array();
  for (int k = 0; k < 4; ++k) a.push_back({c[k].real(), c[k].imag()});
  return a;
}

namespace {

ordered_json grid_header(const FieldGrid& g, const Provenance& prov) {
  ordered_json h;
  h["provenance"] = prov.to_json();
  h["chart"] = chart_name(g.chart);
  if (g.label) h["label"] = label_to_json(*g.label);
  ordered_json axes = ordered_json::array();
  for (const auto& a : g.axes) axes.push_back({{"name", a.name}, {"min", a.min}, {"max", a.max}, {"n", a.n}});
  h["axes"] = axes;
  h["rows"] = g.size();
  h["components"] = "Lorentz covector A_t, A_x, A_y, A_z";
  h["warnings"] = g.warnings;
  return h;
}

template <class F>
void for_each_node(const FieldGrid& g, F f) {
  for (int i0 = 0; i0 < g.axes[0].n; ++i0)
    for (int i1 = 0; i1 < g.axes[1].n; ++i1)
      for (int i2 = 0; i2 < g.axes[2].n; ++i2)
        for (int i3 = 0; i3 < g.axes[3].n; ++i3)
          f(std::array<double, 4>{g.axes[0].node(i0), g.axes[1].node(i1), g.axes[2].node(i2), g.axes[3].node(i3)},
            g.at(i0, i1, i2, i3));
}

}  // namespace

void write_field_grid_csv(std::ostream& os, const FieldGrid& g, const Provenance& prov) {
  os << "# " << grid_header(g, prov).dump() << '\n';
  for (const auto& a : g.axes) os << a.name << ',';
  os << "re_At,im_At,re_Ax,im_Ax,re_Ay,im_Ay,re_Az,im_Az\n";
  for_each_node(g, [&](const std::array<double, 4>& q, const Covector& v) {
    for (double x : q) os << format_double(x) << ',';
    for (int k = 0; k < 4; ++k) {
      os << format_double(v[k].real()) << ',' << format_double(v[k].imag());
      os << (k == 3 ? '\n' : ',');
    }
  });
}

ordered_json field_grid_to_json(const FieldGrid& g, const Provenance& prov) {
  ordered_json j = grid_header(g, prov);
  ordered_json nodes = ordered_json::array();
  for_each_node(g, [&](const std::array<double, 4>& q, const Covector& v) {
    nodes.push_back({{"point", q}, {"A", covector_to_json(v)}});
  });
  j["nodes"] = nodes;
  return j;
}

ordered_json report_to_json(const CheckReport& r, bool timing) {
  ordered_json j;
  j["check"] = r.id();
  j["claims"] = r.claims;
  j["seed"] = r.seed;
  j["pass"] = r.pass;
  j["labels"] = r.labels;
  ordered_json res = ordered_json::array();
  for (const auto& x : r.residuals) {
    ordered_json e{{"claim", x.claim},       {"operator", x.op},
                   {"label", x.label},       {"grid", x.grid},
                   {"residual", x.value},    {"tolerance", x.tolerance},
                   {"bound", x.at_least ? "lower" : "upper"}, {"pass", x.pass}};
    if (!std::isfinite(x.value)) e["residual"] = nullptr;
    res.push_back(e);
  }
  j["residuals"] = res;
  j["errors"] = r.errors;
  j["notes"] = r.notes;
  if (timing) j["runtime_s"] = r.runtime;
  return j;
}

ordered_json reports_to_json(const std::vector<CheckReport>& reports, const Provenance& prov, bool timing) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r, timing));
  bool pass = true;
  for (const auto& r : reports) pass = pass && r.pass;
  return {{"provenance", prov.to_json()}, {"pass", pass}, {"reports", arr}};
}

std::string summary_table(const std::vector<CheckReport>& reports) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-34s %-6s %9s %11s %9s\n", "check", "result", "residuals", "worst/tol", "time[s]");
  os << line;
  int failed = 0;
  double total = 0.0;
  for (const auto& r : reports) {
    std::snprintf(line, sizeof line, "%-34s %-6s %9zu %11.3g %9.2f\n", r.id().c_str(), r.pass ? "PASS" : "FAIL",
                  r.residuals.size(), r.worst_ratio(), r.runtime);
    os << line;
    for (const auto& e : r.errors) os << "    error: " << e << '\n';
    failed += r.pass ? 0 : 1;
    total += r.runtime;
  }
  std::snprintf(line, sizeof line, "%zu checks, %d failed, %.1f s\n", reports.size(), failed, total);
  os << line;
  return os.str();
}

ordered_json gram_to_json(const GramResult& g, const Provenance& prov, bool normalize) {
  const std::size_t n = g.g.size();
  ordered_json re = ordered_json::array(), im = ordered_json::array(), err = ordered_json::array();
  for (std::size_t i = 0; i < n; ++i) {
    ordered_json rr = ordered_json::array(), ri = ordered_json::array(), re_err = ordered_json::array();
    for (std::size_t j = 0; j < n; ++j) {
      if (!g.converged[i][j]) {
        rr.push_back(nullptr);
        ri.push_back(nullptr);
      } else {
        cplx v = g.g[i][j];
        if (normalize) v /= std::sqrt(std::abs(g.g[i][i]) * std::abs(g.g[j][j]));
        rr.push_back(v.real());
        ri.push_back(v.imag());
      }
      re_err.push_back(g.error[i][j]);
    }
    re.push_back(rr);
    im.push_back(ri);
    err.push_back(re_err);
  }
  return {{"provenance", prov.to_json()},
          {"labels", g.labels},
          {"normalized", normalize},
          {"real", re},
          {"imag", im},
          {"error_estimate", err},
          {"max_normalized_off_diagonal", g.max_normalized_off_diagonal()}};
}

ordered_json overlap_to_json(const std::vector<OverlapResult>& rows, const Provenance& prov) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows)
    arr.push_back({{"kind", overlap_name(r.kind)},
                   {"order", r.order},
                   {"p", r.p},
                   {"p_prime", r.p_prime},
                   {"closed_form", r.closed_form},
                   {"windowed", r.windowed},
                   {"damped", r.damped},
                   {"scale", r.scale},
                   {"error_windowed", r.error_windowed()},
                   {"error_damped", r.error_damped()},
                   {"pass", r.pass}});
  return {{"provenance", prov.to_json()}, {"overlaps", arr}};
}

}  // namespace photon
