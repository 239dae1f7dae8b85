#pragma once

#include <string>
#include <utility>
#include <vector>

#include "encforge/metrics/disentangle.hpp"
#include "encforge/metrics/rationality.hpp"
#include "encforge/model/sweep.hpp"

namespace encforge::metrics {

/// Minimal SVG document builder; coordinates are in the view box.
class SvgDocument {
 public:
  SvgDocument(double width, double height);

  double width() const { return width_; }
  double height() const { return height_; }

  void rect(double x, double y, double w, double h, const std::string& fill,
            const std::string& stroke = "none");
  void line(double x1, double y1, double x2, double y2, const std::string& stroke,
            double stroke_width = 1.0, bool dashed = false);
  void polyline(const std::vector<std::pair<double, double>>& points, const std::string& stroke,
                double stroke_width = 1.0, bool dashed = false);
  void circle(double cx, double cy, double r, const std::string& fill);
  void text(double x, double y, const std::string& content, double size = 10.0);

  std::string str() const;

 private:
  double width_;
  double height_;
  std::string body_;
};

// Hex color blending green (t = 0) to red (t = 1).
std::string green_to_red(double t);

// Grid of decoded frames on fixed [-1.05, 1.05] axes. Matched time indices
// are joined by lines shaded from green (start) to red (end).
std::string render_sweep_panel(const std::vector<model::SweepFrame>& frames, std::size_t code);

// One grouped-bar panel per target code: for each recovered code, one bar
// per sigma in the grid.
std::string render_disentanglement(const DisentanglementProfile& profile);

// Distance, speed and direction line charts; reference means dashed black.
std::string render_rationality(const RationalityReport& report);

}  // namespace encforge::metrics
