#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace encforge::data {

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

using Trajectory = std::vector<Point>;

enum class NormalizeMode {
  // Joint centroid and joint scale for both vehicles; keeps inter-vehicle
  // geometry intact.
  SharedFrame,
  // Each sequence centered on its own mean, joint scale.
  PerSequence,
};

const char* to_string(NormalizeMode mode);
NormalizeMode parse_normalize_mode(const std::string& name);

// Affine frame that maps normalized coordinates back to raw meters:
// raw = normalized * scale + center.
struct NormalizationFrame {
  NormalizeMode mode = NormalizeMode::SharedFrame;
  Point center1;
  Point center2;
  double scale = 1.0;
};

/// Two time-aligned vehicle trajectories of equal length.
struct Encounter {
  std::string id;
  Trajectory s1;
  Trajectory s2;
  bool normalized = false;
  std::optional<NormalizationFrame> frame;

  std::size_t length() const noexcept { return s1.size(); }

  // Throws ValidationError if the sequences differ in length or are empty.
  void validate() const;
  // Throws PreconditionError if any |coordinate| > 1.
  void require_unit_box() const;
};

}  // namespace encforge::data
