#pragma once

#include <map>
#include <string>
#include <vector>

namespace cvrpisa {

enum class ColorBy { SourceSet, Performance, Membership };

enum class Marker { Circle, Star, Square, Triangle };

struct PlotPoint {
  std::string name;
  double x = 0.0;
  double y = 0.0;
  std::string category;  // SourceSet / Membership
  double value = 0.0;    // Performance
};

struct PlotSpec {
  ColorBy color_by = ColorBy::SourceSet;
  std::string title;
  // Performance scale endpoints; values are clamped into [lo, hi].
  double value_lo = 0.0;
  double value_hi = 1.0;
  std::string value_label = "PI";
  std::map<std::string, Marker> markers;   // per category
  std::map<std::string, std::string> colors;  // per category, any SVG color
  double size = 640.0;
};

// Color of a performance value: blue at lo (better), red at hi.
std::string performance_color(double value, double lo, double hi);

// Static scatter of Z1 (horizontal) against Z2 (vertical) with equal axis
// scales and a legend. Data markers carry class="marker", legend rows
// class="legend-entry".
std::string render_scatter_svg(const std::vector<PlotPoint>& points, const PlotSpec& spec);

}  // namespace cvrpisa
