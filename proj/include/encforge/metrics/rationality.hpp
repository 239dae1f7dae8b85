#pragma once

#include <optional>
#include <vector>

#include "encforge/data/encounter.hpp"

namespace encforge::metrics {

using data::Encounter;
using data::Trajectory;

// Euclidean distance between the two vehicles at each time index (length T).
std::vector<double> distance_profile(const Encounter& enc);

// Step lengths between adjacent points (length T - 1). Throws on T < 2.
std::vector<double> speed_profile(const Trajectory& seq);

struct DirectionProfile {
  std::vector<double> degrees;  // length T - 2, each in [0, 180]
  // Set when a zero-length displacement forced a 0 entry.
  bool degenerate = false;
};

// Turn angle between consecutive displacement vectors,
// |atan2(cross, dot)| in degrees. Throws on T < 3.
DirectionProfile direction_profile(const Trajectory& seq);

struct Summary {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

Summary summarize(const std::vector<double>& values);

struct ReferenceOverlay {
  std::vector<double> distance;
  std::vector<double> speed1, speed2;
  std::vector<double> direction1, direction2;
};

struct RationalityReport {
  std::vector<double> distance;
  std::vector<double> speed1, speed2;
  std::vector<double> direction1, direction2;
  Summary distance_summary;
  Summary speed1_summary, speed2_summary;
  Summary direction1_summary, direction2_summary;
  bool degenerate_direction = false;
  // Mean reference profiles, present iff reference data was supplied.
  std::optional<ReferenceOverlay> reference;
};

// The encounter must be normalized (coordinates within [-1, 1]). Reference
// encounters must share its length.
RationalityReport rationality_report(const Encounter& enc,
                                     const std::vector<Encounter>* reference = nullptr);

}  // namespace encforge::metrics
