#pragma once

// Minimal standalone SVG boxplots: one box per labeled sample set, whiskers
// at the most extreme points within 1.5 IQR of the box, outliers as dots.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "searchathome/stats/descriptive.hpp"

namespace searchathome::harness {

struct BoxplotLayout {
  static constexpr double kPlotTop = 40.0;
  static constexpr double kPlotBottom = 360.0;
  static constexpr double kLeft = 70.0;
  static constexpr double kBoxSpacing = 120.0;
  static constexpr double kBoxWidth = 60.0;

  double lo = 0;
  double hi = 1;

  // Data range padded by 5% of its span on each side; a zero span is
  // widened to +-1.
  static BoxplotLayout fit(const std::vector<stats::SampleSet>& sets) {
    double mn = sets.front().values.front();
    double mx = mn;
    for (const auto& s : sets) {
      for (const double v : s.values) {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
      }
    }
    if (mx == mn) return {mn - 1.0, mx + 1.0};
    const double pad = 0.05 * (mx - mn);
    return {mn - pad, mx + pad};
  }

  double y(double value) const {
    return kPlotBottom - (value - lo) / (hi - lo) * (kPlotBottom - kPlotTop);
  }
  double center_x(std::size_t index) const {
    return kLeft + kBoxSpacing * (static_cast<double>(index) + 0.5);
  }
  double width(std::size_t count) const {
    return kLeft + kBoxSpacing * static_cast<double>(count) + 20.0;
  }
};

inline std::string fmt2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string render_boxplot_svg(const std::vector<stats::SampleSet>& sets,
                                      const std::string& title = "") {
  if (sets.empty()) throw std::invalid_argument("boxplot needs at least one sample set");
  for (const auto& s : sets) {
    if (s.values.empty()) {
      throw std::invalid_argument("boxplot sample set '" + s.label + "' is empty");
    }
  }
  const auto layout = BoxplotLayout::fit(sets);
  const double width = layout.width(sets.size());
  const double height = BoxplotLayout::kPlotBottom + 50.0;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt2(width) + "\" height=\"" +
         fmt2(height) + "\" viewBox=\"0 0 " + fmt2(width) + " " + fmt2(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    svg += "<text x=\"" + fmt2(width / 2) + "\" y=\"20.00\" text-anchor=\"middle\" " +
           "font-family=\"sans-serif\" font-size=\"14\">" + xml_escape(title) + "</text>\n";
  }
  // Axis with ticks at the data extremes and midpoint.
  const double axis_x = BoxplotLayout::kLeft - 10.0;
  svg += "<line class=\"axis\" x1=\"" + fmt2(axis_x) + "\" y1=\"" + fmt2(BoxplotLayout::kPlotTop) +
         "\" x2=\"" + fmt2(axis_x) + "\" y2=\"" + fmt2(BoxplotLayout::kPlotBottom) +
         "\" stroke=\"black\"/>\n";
  for (const double v : {layout.lo, 0.5 * (layout.lo + layout.hi), layout.hi}) {
    svg += "<text x=\"" + fmt2(axis_x - 4) + "\" y=\"" + fmt2(layout.y(v) + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" + fmt2(v) +
           "</text>\n";
  }

  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto& set = sets[i];
    const auto s = stats::describe(set.values);
    const double iqr = s.q3 - s.q1;
    const double lo_fence = s.q1 - 1.5 * iqr;
    const double hi_fence = s.q3 + 1.5 * iqr;
    double whisker_lo = s.q1, whisker_hi = s.q3;
    std::vector<double> outliers;
    for (const double v : set.values) {
      if (v < lo_fence || v > hi_fence) {
        outliers.push_back(v);
      } else {
        whisker_lo = std::min(whisker_lo, v);
        whisker_hi = std::max(whisker_hi, v);
      }
    }
    std::sort(outliers.begin(), outliers.end());

    const double cx = layout.center_x(i);
    const double left = cx - BoxplotLayout::kBoxWidth / 2;
    const double right = cx + BoxplotLayout::kBoxWidth / 2;
    svg += "<g class=\"box\" data-label=\"" + xml_escape(set.label) + "\">\n";
    svg += "<line class=\"whisker\" x1=\"" + fmt2(cx) + "\" y1=\"" + fmt2(layout.y(whisker_hi)) +
           "\" x2=\"" + fmt2(cx) + "\" y2=\"" + fmt2(layout.y(s.q3)) + "\" stroke=\"black\"/>\n";
    svg += "<line class=\"whisker\" x1=\"" + fmt2(cx) + "\" y1=\"" + fmt2(layout.y(s.q1)) +
           "\" x2=\"" + fmt2(cx) + "\" y2=\"" + fmt2(layout.y(whisker_lo)) +
           "\" stroke=\"black\"/>\n";
    svg += "<rect class=\"iqr\" x=\"" + fmt2(left) + "\" y=\"" + fmt2(layout.y(s.q3)) +
           "\" width=\"" + fmt2(BoxplotLayout::kBoxWidth) + "\" height=\"" +
           fmt2(layout.y(s.q1) - layout.y(s.q3)) +
           "\" fill=\"#cfe2f3\" stroke=\"black\"/>\n";
    svg += "<line class=\"median\" x1=\"" + fmt2(left) + "\" y1=\"" + fmt2(layout.y(s.median)) +
           "\" x2=\"" + fmt2(right) + "\" y2=\"" + fmt2(layout.y(s.median)) +
           "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    for (const double v : outliers) {
      svg += "<circle class=\"outlier\" cx=\"" + fmt2(cx) + "\" cy=\"" + fmt2(layout.y(v)) +
             "\" r=\"3\" fill=\"none\" stroke=\"black\"/>\n";
    }
    svg += "<text x=\"" + fmt2(cx) + "\" y=\"" + fmt2(BoxplotLayout::kPlotBottom + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           xml_escape(set.label) + "</text>\n";
    svg += "</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

inline void emit_boxplot_svg(const std::vector<stats::SampleSet>& sets,
                             const std::filesystem::path& output_path,
                             const std::string& title = "") {
  const auto svg = render_boxplot_svg(sets, title);
  std::ofstream out(output_path, std::ios::trunc | std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + output_path.string() + "'");
  out << svg;
  if (!out) throw std::runtime_error("failed writing '" + output_path.string() + "'");
}

}  // namespace searchathome::harness
