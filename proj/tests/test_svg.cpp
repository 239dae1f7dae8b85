#include <gtest/gtest.h>

#include <regex>
#include <sstream>
#include <string>

#include "encforge/metrics/svg.hpp"
#include "test_util.hpp"

using namespace encforge;
using namespace encforge::metrics;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

std::pair<double, double> view_box(const std::string& svg) {
  std::smatch m;
  const std::regex re(R"(viewBox="0 0 ([0-9.eE+-]+) ([0-9.eE+-]+)\")");
  EXPECT_TRUE(std::regex_search(svg, m, re));
  return {std::stod(m[1]), std::stod(m[2])};
}

// Every numeric x/y/cx/cy/x1.. attribute lies inside the view box.
void expect_coordinates_inside(const std::string& svg) {
  const auto [w, h] = view_box(svg);
  const std::regex attr(R"re(\b(x|x1|x2|cx|y|y1|y2|cy)="([0-9.eE+-]+)")re");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), attr); it != std::sregex_iterator(); ++it) {
    const std::string name = (*it)[1];
    const double v = std::stod((*it)[2]);
    const double limit = name[0] == 'x' || name == "cx" ? w : h;
    EXPECT_GE(v, 0.0) << name;
    EXPECT_LE(v, limit) << name;
  }
  const std::regex pts(R"re(points="([^"]*)")re");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), pts); it != std::sregex_iterator(); ++it) {
    std::string list = (*it)[1];
    for (char& c : list)
      if (c == ',') c = ' ';
    std::istringstream in(list);
    double x, y;
    while (in >> x >> y) {
      EXPECT_GE(x, 0.0);
      EXPECT_LE(x, w);
      EXPECT_GE(y, 0.0);
      EXPECT_LE(y, h);
    }
  }
}

}  // namespace

TEST(Svg, GreenToRedEndpoints) {
  EXPECT_EQ(green_to_red(0.0), "#00a000");
  EXPECT_EQ(green_to_red(1.0), "#ff0000");
  EXPECT_EQ(green_to_red(-3.0), "#00a000");
  EXPECT_EQ(green_to_red(7.0), "#ff0000");
  EXPECT_EQ(green_to_red(0.5), "#805000");
}

TEST(Svg, DocumentWellFormed) {
  SvgDocument d(100, 50);
  d.text(1, 2, "a<b & c");
  const std::string s = d.str();
  EXPECT_EQ(s.rfind("<svg", 0), 0u);
  EXPECT_NE(s.find("</svg>"), std::string::npos);
  EXPECT_NE(s.find("a&lt;b &amp; c"), std::string::npos);
}

TEST(Svg, SweepPanelStaysInViewBox) {
  std::vector<model::SweepFrame> frames;
  for (int i = 0; i < 9; ++i) {
    auto e = encforge::testing::wavy_encounter(20, 0.3 * i);
    e.s1[3] = {5.0, -5.0};  // out-of-range points are clamped to the axes
    frames.push_back({-1.0 + 0.25 * i, e});
  }
  const std::string svg = render_sweep_panel(frames, 4);
  expect_coordinates_inside(svg);
  EXPECT_NE(svg.find("code 4"), std::string::npos);
  EXPECT_EQ(count(svg, "<polyline"), 18u);
  EXPECT_NE(svg.find("#00a000"), std::string::npos);
  EXPECT_NE(svg.find("#ff0000"), std::string::npos);
}

TEST(Svg, DisentanglementBarsPerGroup) {
  const auto profile = disentanglement_scan(identity_pair(3), ScanOptions{kDefaultSigmaGrid, 20, 5, false});
  const std::string svg = render_disentanglement(profile);
  expect_coordinates_inside(svg);
  // 10 legend swatches, then K panels x K groups x 10 sigma bars.
  EXPECT_EQ(count(svg, "<rect"), 10u + 3u * 3u * 10u + 1u);
}

TEST(Svg, RationalityChartsInViewBox) {
  const auto enc = encforge::testing::wavy_encounter(30, 0.1);
  const std::vector<data::Encounter> ref{encforge::testing::wavy_encounter(30, 0.9)};
  const std::string with_ref = render_rationality(rationality_report(enc, &ref));
  const std::string without = render_rationality(rationality_report(enc));
  expect_coordinates_inside(with_ref);
  expect_coordinates_inside(without);
  EXPECT_NE(with_ref.find("stroke-dasharray"), std::string::npos);
  EXPECT_EQ(without.find("stroke-dasharray"), std::string::npos);
}
