#include "cvrpisa/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>

namespace cvrpisa {

namespace {

// Okabe-Ito, colorblind-safe.
const char* const kPalette[] = {"#000000", "#D55E00", "#0072B2", "#009E73", "#E69F00",
                                "#CC79A7", "#56B4E9", "#F0E442"};
constexpr int kBlue[3] = {33, 102, 172};
constexpr int kRed[3] = {178, 24, 43};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  std::string s = buf;
  return s == "-0.00" ? "0.00" : s;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string marker_svg(Marker m, double cx, double cy, double r, const std::string& fill, const std::string& cls,
                       const std::string& title) {
  const std::string tip = title.empty() ? "" : "<title>" + xml_escape(title) + "</title>";
  const std::string open = "class=\"" + cls + "\" fill=\"" + fill + "\"";
  switch (m) {
    case Marker::Circle:
      return "<circle " + open + " cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) + "\">" + tip +
             "</circle>\n";
    case Marker::Square:
      return "<rect " + open + " x=\"" + num(cx - r) + "\" y=\"" + num(cy - r) + "\" width=\"" + num(2 * r) +
             "\" height=\"" + num(2 * r) + "\">" + tip + "</rect>\n";
    case Marker::Triangle:
    case Marker::Star: {
      std::string pts;
      const int corners = m == Marker::Star ? 10 : 3;
      for (int k = 0; k < corners; ++k) {
        const double rr = (m == Marker::Star && k % 2 == 1) ? r * 0.45 : r * 1.3;
        const double ang = -std::numbers::pi / 2 + k * std::numbers::pi * 2 / corners;
        pts += (k ? " " : "") + num(cx + rr * std::cos(ang)) + "," + num(cy + rr * std::sin(ang));
      }
      return "<polygon " + open + " points=\"" + pts + "\">" + tip + "</polygon>\n";
    }
  }
  return {};
}

}  // namespace

std::string performance_color(double value, double lo, double hi) {
  double t = hi > lo ? (value - lo) / (hi - lo) : 0.0;
  t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0);
  char buf[8];
  int rgb[3];
  for (int i = 0; i < 3; ++i) rgb[i] = static_cast<int>(std::lround(kBlue[i] + t * (kRed[i] - kBlue[i])));
  std::snprintf(buf, sizeof(buf), "#%02X%02X%02X", rgb[0], rgb[1], rgb[2]);
  return buf;
}

std::string render_scatter_svg(const std::vector<PlotPoint>& points, const PlotSpec& spec) {
  const double size = spec.size;
  const double margin = 60.0;
  const double legend_w = 160.0;
  const double plot = size - 2 * margin;

  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  if (!points.empty()) {
    xmin = xmax = points[0].x;
    ymin = ymax = points[0].y;
    for (const auto& p : points) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }
  // One scale for both axes.
  double span = std::max(xmax - xmin, ymax - ymin);
  if (!(span > 0.0)) span = 1.0;
  span *= 1.1;
  const double cx = (xmin + xmax) / 2, cy = (ymin + ymax) / 2;
  const double x0 = cx - span / 2, y0 = cy - span / 2;
  auto sx = [&](double x) { return margin + (x - x0) / span * plot; };
  auto sy = [&](double y) { return margin + plot - (y - y0) / span * plot; };

  std::vector<std::string> cats;
  if (spec.color_by != ColorBy::Performance) {
    std::set<std::string> seen;
    for (const auto& p : points)
      if (seen.insert(p.category).second) cats.push_back(p.category);
    std::sort(cats.begin(), cats.end());
  }
  auto cat_index = [&](const std::string& c) {
    return static_cast<std::size_t>(std::find(cats.begin(), cats.end(), c) - cats.begin());
  };
  auto cat_color = [&](const std::string& c) {
    if (auto it = spec.colors.find(c); it != spec.colors.end()) return it->second;
    if (spec.color_by == ColorBy::Membership && cats.size() <= 2) return std::string(cat_index(c) == 0 ? "#000000" : "#D62728");
    return std::string(kPalette[cat_index(c) % (sizeof(kPalette) / sizeof(kPalette[0]))]);
  };
  auto cat_marker = [&](const std::string& c) {
    if (auto it = spec.markers.find(c); it != spec.markers.end()) return it->second;
    if (spec.color_by == ColorBy::Membership && cats.size() <= 2) return cat_index(c) == 0 ? Marker::Circle : Marker::Star;
    return Marker::Circle;
  };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(size + legend_w) + "\" height=\"" + num(size) +
       "\" viewBox=\"0 0 " + num(size + legend_w) + " " + num(size) + "\" font-family=\"sans-serif\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + num(size + legend_w) + "\" height=\"" + num(size) + "\" fill=\"#FFFFFF\"/>\n";
  if (!spec.title.empty())
    s += "<text x=\"" + num(size / 2) + "\" y=\"" + num(margin / 2) + "\" text-anchor=\"middle\" font-size=\"16\">" +
         xml_escape(spec.title) + "</text>\n";
  s += "<rect x=\"" + num(margin) + "\" y=\"" + num(margin) + "\" width=\"" + num(plot) + "\" height=\"" + num(plot) +
       "\" fill=\"none\" stroke=\"#333333\"/>\n";

  // Ticks at five evenly spaced positions per axis.
  for (int i = 0; i <= 4; ++i) {
    const double fx = x0 + span * i / 4, fy = y0 + span * i / 4;
    s += "<text x=\"" + num(sx(fx)) + "\" y=\"" + num(margin + plot + 18) + "\" text-anchor=\"middle\" font-size=\"11\">" +
         num(fx) + "</text>\n";
    s += "<text x=\"" + num(margin - 6) + "\" y=\"" + num(sy(fy) + 4) + "\" text-anchor=\"end\" font-size=\"11\">" +
         num(fy) + "</text>\n";
  }
  s += "<text x=\"" + num(margin + plot / 2) + "\" y=\"" + num(size - 15) +
       "\" text-anchor=\"middle\" font-size=\"14\">Z1</text>\n";
  s += "<text x=\"18\" y=\"" + num(margin + plot / 2) + "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 " +
       num(margin + plot / 2) + ")\">Z2</text>\n";

  s += "<g id=\"points\">\n";
  for (const auto& p : points) {
    if (spec.color_by == ColorBy::Performance) {
      s += marker_svg(Marker::Circle, sx(p.x), sy(p.y), 4.0, performance_color(p.value, spec.value_lo, spec.value_hi),
                      "marker", p.name);
    } else {
      s += marker_svg(cat_marker(p.category), sx(p.x), sy(p.y), 4.0, cat_color(p.category), "marker", p.name);
    }
  }
  s += "</g>\n<g id=\"legend\">\n";
  const double lx = size + 10;
  if (spec.color_by == ColorBy::Performance) {
    s += "<defs><linearGradient id=\"scale\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">"
         "<stop offset=\"0\" stop-color=\"" + performance_color(spec.value_lo, spec.value_lo, spec.value_hi) +
         "\"/><stop offset=\"1\" stop-color=\"" + performance_color(spec.value_hi, spec.value_lo, spec.value_hi) +
         "\"/></linearGradient></defs>\n";
    s += "<text x=\"" + num(lx) + "\" y=\"" + num(margin - 10) + "\" font-size=\"12\">" + xml_escape(spec.value_label) +
         "</text>\n";
    s += "<rect x=\"" + num(lx) + "\" y=\"" + num(margin) + "\" width=\"20\" height=\"200\" fill=\"url(#scale)\"/>\n";
    s += "<text class=\"legend-entry\" x=\"" + num(lx + 26) + "\" y=\"" + num(margin + 200) + "\" font-size=\"11\">" +
         num(spec.value_lo) + " (better)</text>\n";
    s += "<text class=\"legend-entry\" x=\"" + num(lx + 26) + "\" y=\"" + num(margin + 10) + "\" font-size=\"11\">" +
         num(spec.value_hi) + "</text>\n";
  } else {
    for (std::size_t i = 0; i < cats.size(); ++i) {
      const double ly = margin + 20.0 * static_cast<double>(i);
      s += "<g class=\"legend-entry\">" + marker_svg(cat_marker(cats[i]), lx + 6, ly, 5.0, cat_color(cats[i]), "legend-marker", "") +
           "<text x=\"" + num(lx + 18) + "\" y=\"" + num(ly + 4) + "\" font-size=\"12\">" + xml_escape(cats[i]) +
           "</text></g>\n";
    }
  }
  s += "</g>\n</svg>\n";
  return s;
}

}  // namespace cvrpisa
