#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "photon/charts.hpp"
#include "photon/modes.hpp"

namespace photon {

struct GridAxis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int n = 1;

  double step() const { return n > 1 ? (max - min) / (n - 1) : 0.0; }
  double node(int i) const { return n > 1 ? min + (max - min) * i / (n - 1) : min; }
};

/// Axis names of a chart in coordinate order.
std::array<std::string, 4> axis_names(Chart chart);

/// Covector field sampled on a chart-aligned product grid. Values are Lorentz
/// components, stored row-major with axis 0 varying slowest.
struct FieldGrid {
  Chart chart = Chart::lorentz;
  std::optional<ModeLabel> label;
  std::array<GridAxis, 4> axes;
  std::vector<Covector> values;
  std::vector<std::string> warnings;

  std::size_t size() const;
  std::size_t index(int i0, int i1, int i2, int i3) const;
  const Covector& at(int i0, int i1, int i2, int i3) const { return values[index(i0, i1, i2, i3)]; }
  SpacetimePoint point(int i0, int i1, int i2, int i3) const;
};

/// Builds the four axes of a grid. Axes absent from the map are collapsed to
/// a single node at 0.
std::array<GridAxis, 4> make_axes(Chart chart, const std::vector<GridAxis>& given);

using CovectorFunction = std::function<Covector(const std::array<double, 4>&)>;

FieldGrid sample_grid(const CovectorFunction& field, Chart chart, const std::array<GridAxis, 4>& axes);

/// Samples a mode. Adds a resolution warning if a Lorentz-chart spacing
/// exceeds 1/(8 p0).
FieldGrid sample_grid(const ModeField& mode, Chart chart, const std::array<GridAxis, 4>& axes);

}  // namespace photon
