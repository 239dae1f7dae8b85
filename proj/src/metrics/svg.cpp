#include "encforge/metrics/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace encforge::metrics {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

// Ten distinguishable colors for the sigma grid.
const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

SvgDocument::SvgDocument(double width, double height) : width_(width), height_(height) {}

void SvgDocument::rect(double x, double y, double w, double h, const std::string& fill,
                       const std::string& stroke) {
  body_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" +
           num(h) + "\" fill=\"" + fill + "\" stroke=\"" + stroke + "\"/>\n";
}

void SvgDocument::line(double x1, double y1, double x2, double y2, const std::string& stroke,
                       double stroke_width, bool dashed) {
  body_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
           num(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(stroke_width) + "\"" +
           (dashed ? " stroke-dasharray=\"4 3\"" : "") + "/>\n";
}

void SvgDocument::polyline(const std::vector<std::pair<double, double>>& points,
                           const std::string& stroke, double stroke_width, bool dashed) {
  body_ += "<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + num(stroke_width) +
           "\"" + (dashed ? " stroke-dasharray=\"4 3\"" : "") + " points=\"";
  for (std::size_t i = 0; i < points.size(); ++i) {
    body_ += (i ? " " : "") + num(points[i].first) + "," + num(points[i].second);
  }
  body_ += "\"/>\n";
}

void SvgDocument::circle(double cx, double cy, double r, const std::string& fill) {
  body_ += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) + "\" fill=\"" +
           fill + "\"/>\n";
}

void SvgDocument::text(double x, double y, const std::string& content, double size) {
  body_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" + num(size) +
           "\" font-family=\"sans-serif\">" + escape(content) + "</text>\n";
}

std::string SvgDocument::str() const {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width_) + "\" height=\"" +
         num(height_) + "\" viewBox=\"0 0 " + num(width_) + " " + num(height_) + "\">\n" +
         "<rect x=\"0\" y=\"0\" width=\"" + num(width_) + "\" height=\"" + num(height_) +
         "\" fill=\"white\" stroke=\"none\"/>\n" + body_ + "</svg>\n";
}

std::string green_to_red(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(255.0 * t));
  const int g = static_cast<int>(std::lround(160.0 * (1.0 - t)));
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x00", r, g);
  return buf;
}

std::string render_sweep_panel(const std::vector<model::SweepFrame>& frames, std::size_t code) {
  constexpr double cell = 160.0;
  constexpr double pad = 8.0;
  constexpr double header = 24.0;
  constexpr double axis = 1.05;
  const std::size_t columns = std::min<std::size_t>(7, std::max<std::size_t>(1, frames.size()));
  const std::size_t rows = (frames.size() + columns - 1) / columns;
  SvgDocument doc(columns * cell, header + std::max<std::size_t>(rows, 1) * cell);
  doc.text(pad, 16, "code " + std::to_string(code) + " traversal", 12);

  for (std::size_t f = 0; f < frames.size(); ++f) {
    const double ox = static_cast<double>(f % columns) * cell;
    const double oy = header + static_cast<double>(f / columns) * cell;
    const double inner = cell - 2 * pad;
    auto map = [&](const data::Point& p) {
      const double x = std::clamp(p.x, -axis, axis);
      const double y = std::clamp(p.y, -axis, axis);
      return std::make_pair(ox + pad + (x + axis) / (2 * axis) * inner,
                            oy + pad + (axis - y) / (2 * axis) * inner);
    };
    doc.rect(ox + pad, oy + pad, inner, inner, "none", "#cccccc");
    const auto& enc = frames[f].encounter;
    const std::size_t T = enc.length();
    for (std::size_t t = 0; t < T; ++t) {
      const auto a = map(enc.s1[t]);
      const auto b = map(enc.s2[t]);
      const double frac = T > 1 ? static_cast<double>(t) / static_cast<double>(T - 1) : 0.0;
      doc.line(a.first, a.second, b.first, b.second, green_to_red(frac), 0.5);
    }
    for (const auto* s : {&enc.s1, &enc.s2}) {
      std::vector<std::pair<double, double>> pts;
      for (const auto& p : *s) pts.push_back(map(p));
      doc.polyline(pts, "#333333", 1.0);
      if (!pts.empty()) {
        doc.circle(pts.front().first, pts.front().second, 2.5, "#00a000");
        doc.circle(pts.back().first, pts.back().second, 2.5, "#ff0000");
      }
    }
    char label[32];
    std::snprintf(label, sizeof label, "z=%.2f", frames[f].value);
    doc.text(ox + pad + 2, oy + pad + 10, label, 9);
  }
  return doc.str();
}

std::string render_disentanglement(const DisentanglementProfile& profile) {
  const std::size_t K = profile.latent;
  const std::size_t S = profile.sigma_grid.size();
  constexpr double panel_w = 420.0;
  constexpr double panel_h = 170.0;
  constexpr double margin = 30.0;
  const std::size_t columns = 2;
  const std::size_t rows = (K + columns - 1) / columns;
  SvgDocument doc(columns * panel_w, std::max<std::size_t>(rows, 1) * panel_h + 40.0);

  for (std::size_t m = 0; m < S; ++m) {
    char label[32];
    std::snprintf(label, sizeof label, "s=%.1f", profile.sigma_grid[m]);
    const double x = 10.0 + static_cast<double>(m) * 70.0;
    doc.rect(x, 8, 10, 10, kPalette[m % 10]);
    doc.text(x + 13, 17, label, 10);
  }

  for (std::size_t i = 0; i < K; ++i) {
    const double ox = static_cast<double>(i % columns) * panel_w;
    const double oy = 40.0 + static_cast<double>(i / columns) * panel_h;
    const double plot_w = panel_w - 2 * margin;
    const double plot_h = panel_h - 2 * margin;
    double vmax = 0.0;
    for (std::size_t m = 0; m < S; ++m) {
      for (double v : profile.group(i, m).omega) vmax = std::max(vmax, v);
    }
    doc.text(ox + margin, oy + 14, "Code " + std::to_string(i) + " (max " + num(vmax) + ")", 11);
    doc.line(ox + margin, oy + margin + plot_h, ox + margin + plot_w, oy + margin + plot_h,
             "#000000");
    const double group_w = plot_w / static_cast<double>(K);
    const double bar_w = group_w * 0.8 / static_cast<double>(S);
    for (std::size_t j = 0; j < K; ++j) {
      const double gx = ox + margin + static_cast<double>(j) * group_w + group_w * 0.1;
      for (std::size_t m = 0; m < S; ++m) {
        const double v = profile.group(i, m).omega[j];
        const double h = vmax > 0.0 ? v / vmax * plot_h : 0.0;
        doc.rect(gx + static_cast<double>(m) * bar_w, oy + margin + plot_h - h, bar_w, h,
                 kPalette[m % 10]);
      }
      doc.text(gx + group_w * 0.3, oy + margin + plot_h + 12, std::to_string(j), 9);
    }
  }
  return doc.str();
}

namespace {

void line_chart(SvgDocument& doc, double ox, double oy, double w, double h,
                const std::string& title, const std::vector<const std::vector<double>*>& series,
                const std::vector<std::string>& colors,
                const std::vector<const std::vector<double>*>& reference) {
  double vmin = 0.0;
  double vmax = 0.0;
  std::size_t n = 0;
  for (const auto* group : {&series, &reference}) {
    for (const auto* s : *group) {
      for (double v : *s) {
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
      }
      n = std::max(n, s->size());
    }
  }
  if (vmax <= vmin) vmax = vmin + 1.0;
  doc.text(ox, oy - 6, title + " (max " + num(vmax) + ")", 11);
  doc.rect(ox, oy, w, h, "none", "#999999");
  auto project = [&](const std::vector<double>& s) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double x = n > 1 ? ox + w * static_cast<double>(i) / static_cast<double>(n - 1) : ox;
      pts.emplace_back(x, oy + h - (s[i] - vmin) / (vmax - vmin) * h);
    }
    return pts;
  };
  for (std::size_t k = 0; k < series.size(); ++k) doc.polyline(project(*series[k]), colors[k], 1.5);
  for (const auto* s : reference) doc.polyline(project(*s), "#000000", 1.0, true);
}

}  // namespace

std::string render_rationality(const RationalityReport& r) {
  constexpr double w = 300.0;
  constexpr double h = 180.0;
  SvgDocument doc(3 * (w + 40.0) + 20.0, h + 60.0);
  std::vector<const std::vector<double>*> ref_distance, ref_speed, ref_direction;
  if (r.reference) {
    ref_distance = {&r.reference->distance};
    ref_speed = {&r.reference->speed1, &r.reference->speed2};
    ref_direction = {&r.reference->direction1, &r.reference->direction2};
  }
  line_chart(doc, 30, 30, w, h, "distance", {&r.distance}, {"#1f77b4"}, ref_distance);
  line_chart(doc, 30 + (w + 40), 30, w, h, "speed", {&r.speed1, &r.speed2},
             {"#1f77b4", "#ff7f0e"}, ref_speed);
  line_chart(doc, 30 + 2 * (w + 40), 30, w, h, "direction change (deg)",
             {&r.direction1, &r.direction2}, {"#1f77b4", "#ff7f0e"}, ref_direction);
  return doc.str();
}

}  // namespace encforge::metrics
