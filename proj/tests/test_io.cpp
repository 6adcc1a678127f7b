#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "photon/io.hpp"

using namespace photon;

TEST_CASE("FNV-1a reference vectors") {
  CHECK(hex64(fnv1a("")) == "cbf29ce484222325");
  CHECK(hex64(fnv1a("a")) == "af63dc4c8601ec8c");
  CHECK(hex64(fnv1a("foobar")) == "85944171f73967e8");
}

TEST_CASE("doubles are written with 17 significant digits") {
  CHECK(format_double(0.1) == "1.0000000000000001e-01");
  CHECK(format_double(-2.5) == "-2.5000000000000000e+00");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("label parsing") {
  const auto s = std::get<SphericalLabel>(parse_label(Family::spherical, "p0=1.5,l=2,m=-1,s=-1"));
  CHECK(s.p0 == 1.5);
  CHECK(s.l == 2);
  CHECK(s.m == -1);
  CHECK(s.s == Helicity::negative);
  const auto c = std::get<CylindricalLabel>(parse_label(Family::cylindrical, "p0=2,p3=-0.5,m=3,s=1"));
  CHECK(c.p3 == -0.5);
  const auto p = std::get<PlaneWaveLabel>(parse_label(Family::plane_wave, "px=0,py=0,pz=1,s=1"));
  CHECK(p.p[2] == 1.0);
  CHECK_THROWS_AS(parse_label(Family::spherical, "p0=1,l=1,m=0"), UsageError);
  CHECK_THROWS_AS(parse_label(Family::spherical, "p0=1,l=1,m=0,s=1,q=2"), UsageError);
  CHECK_THROWS_AS(parse_label(Family::spherical, "p0=1,p0=2,l=1,m=0,s=1"), UsageError);
  CHECK_THROWS_AS(parse_label(Family::spherical, "p0=x,l=1,m=0,s=1"), UsageError);
  CHECK_THROWS_AS(parse_label(Family::spherical, "p0=1,l=0,m=0,s=1"), InvalidLabelError);
  CHECK_THROWS_AS(parse_label(Family::cylindrical, "p0=1,p3=2,m=0,s=1"), InvalidLabelError);
}

TEST_CASE("grid parsing") {
  const auto axes = parse_grid(Chart::spherical, "r:0.5:5:10,theta:0.1:3:4");
  REQUIRE(axes.size() == 2u);
  CHECK(axes[0].name == "r");
  CHECK(axes[0].n == 10);
  CHECK(axes[1].max == 3.0);
  CHECK_THROWS_AS(parse_grid(Chart::spherical, "rho:0:1:3"), UsageError);
  CHECK_THROWS_AS(parse_grid(Chart::spherical, "r:0:1"), UsageError);
  CHECK_THROWS_AS(parse_grid(Chart::spherical, "r:0:1:3,r:0:2:3"), UsageError);
  CHECK_THROWS_AS(parse_grid(Chart::spherical, "r:1:0:3"), UsageError);
  CHECK_THROWS_AS(parse_grid(Chart::lorentz, "x:0:1:0"), UsageError);
}

TEST_CASE("field grid CSV") {
  const ModeField mode(SphericalLabel{1.0, 1, 0, Helicity::positive});
  const auto axes = make_axes(Chart::spherical, parse_grid(Chart::spherical, "r:2:2:1,theta:0.1:3.0:32,phi:0:6.2:32"));
  const FieldGrid g = sample_grid(mode, Chart::spherical, axes);
  Provenance prov{"eval", "family=spherical;label=p0=1,l=1,m=0,s=1", 7};
  std::ostringstream a, b;
  write_field_grid_csv(a, g, prov);
  write_field_grid_csv(b, g, prov);
  CHECK(a.str() == b.str());
  std::istringstream in(a.str());
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 1026u);
  CHECK(lines[0].rfind("# {", 0) == 0);
  const auto header = nlohmann::json::parse(lines[0].substr(2));
  CHECK(header["provenance"]["seed"] == 7);
  CHECK(header["provenance"]["spec_hash"] == hex64(fnv1a(prov.spec)));
  CHECK(std::count(lines[2].begin(), lines[2].end(), ',') == 11);
  const auto j = field_grid_to_json(g, prov);
  CHECK(j["nodes"].size() == 1024u);
}

TEST_CASE("report JSON") {
  CheckReport r;
  r.suite = "eigen";
  r.name = "spherical";
  r.add("c", "L2", "label", "grid", 1e-12, 1e-10);
  r.runtime = 1.5;
  r.finalize();
  CHECK_FALSE(report_to_json(r, false).contains("runtime_s"));
  CHECK(report_to_json(r, true)["runtime_s"] == 1.5);
  CHECK(report_to_json(r, false)["pass"] == true);
  const std::string table = summary_table({r});
  CHECK(table.find("eigen/spherical") != std::string::npos);
  CHECK(table.find("PASS") != std::string::npos);
}

TEST_CASE("Gram JSON marks unconverged entries") {
  GramResult g;
  g.labels = {"a", "b"};
  g.g = {{cplx(2.0), cplx(0.1, 0.2)}, {cplx(0.1, -0.2), cplx(2.0)}};
  g.error = {{0.0, 0.0}, {0.0, 0.0}};
  g.converged = {{true, false}, {true, true}};
  const auto j = gram_to_json(g, Provenance{"overlap", "x", 1}, true);
  CHECK(j["real"][0][1].is_null());
  CHECK(j["imag"][0][1].is_null());
  CHECK(j["real"][0][0] == 1.0);
  CHECK_FALSE(j["real"][1][0].is_null());
}
