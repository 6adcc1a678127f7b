#include "photon/grid.hpp"

#include <cstdio>
#include <stdexcept>

namespace photon {

std::array<std::string, 4> axis_names(Chart chart) {
  switch (chart) {
    case Chart::lorentz: return {"t", "x", "y", "z"};
    case Chart::cylindrical: return {"t", "rho", "phi", "z"};
    case Chart::spherical: return {"t", "r", "theta", "phi"};
  }
  return {"t", "x", "y", "z"};
}

std::size_t FieldGrid::size() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= static_cast<std::size_t>(a.n);
  return n;
}

std::size_t FieldGrid::index(int i0, int i1, int i2, int i3) const {
  return ((static_cast<std::size_t>(i0) * axes[1].n + i1) * axes[2].n + i2) * axes[3].n + i3;
}

SpacetimePoint FieldGrid::point(int i0, int i1, int i2, int i3) const {
  const double q0 = axes[0].node(i0), q1 = axes[1].node(i1), q2 = axes[2].node(i2), q3 = axes[3].node(i3);
  switch (chart) {
    case Chart::lorentz: return SpacetimePoint::lorentz(q0, q1, q2, q3);
    case Chart::cylindrical: return SpacetimePoint::cylindrical(q0, q1, q2, q3);
    case Chart::spherical: return SpacetimePoint::spherical(q0, q1, q2, q3);
  }
  return SpacetimePoint::lorentz(q0, q1, q2, q3);
}

std::array<GridAxis, 4> make_axes(Chart chart, const std::vector<GridAxis>& given) {
  const auto names = axis_names(chart);
  std::array<GridAxis, 4> axes;
  for (int i = 0; i < 4; ++i) axes[static_cast<std::size_t>(i)] = {names[static_cast<std::size_t>(i)], 0.0, 0.0, 1};
  for (const auto& g : given) {
    bool found = false;
    for (auto& a : axes)
      if (a.name == g.name) {
        if (g.n < 1) throw std::invalid_argument("grid axis '" + g.name + "' needs n >= 1");
        a = g;
        found = true;
      }
    if (!found)
      throw std::invalid_argument("axis '" + g.name + "' does not belong to the " + chart_name(chart) + " chart");
  }
  return axes;
}

FieldGrid sample_grid(const CovectorFunction& field, Chart chart, const std::array<GridAxis, 4>& axes) {
  FieldGrid g;
  g.chart = chart;
  g.axes = axes;
  for (const auto& a : axes)
    if (a.n < 1) throw std::invalid_argument("grid axis '" + a.name + "' needs n >= 1");
  g.values.resize(g.size());
  std::size_t k = 0;
  for (int i0 = 0; i0 < axes[0].n; ++i0)
    for (int i1 = 0; i1 < axes[1].n; ++i1)
      for (int i2 = 0; i2 < axes[2].n; ++i2)
        for (int i3 = 0; i3 < axes[3].n; ++i3) g.values[k++] = field(g.point(i0, i1, i2, i3).lorentz_coords());
  return g;
}

FieldGrid sample_grid(const ModeField& mode, Chart chart, const std::array<GridAxis, 4>& axes) {
  FieldGrid g = sample_grid([&](const std::array<double, 4>& x) { return mode.potential(x); }, chart, axes);
  g.label = mode.label();
  const double limit = 1.0 / (8.0 * energy_of(mode.label()));
  if (chart == Chart::lorentz) {
    for (const auto& a : axes)
      if (a.n > 1 && a.step() > limit) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "axis %s spacing %.3g exceeds 1/(8 p0) = %.3g", a.name.c_str(), a.step(), limit);
        g.warnings.emplace_back(buf);
      }
  }
  return g;
}

}  // namespace photon
