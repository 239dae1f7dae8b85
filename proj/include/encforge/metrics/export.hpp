#pragma once

#include <iosfwd>
#include <vector>

#include "encforge/metrics/disentangle.hpp"
#include "encforge/metrics/rationality.hpp"
#include "encforge/model/sweep.hpp"

namespace encforge::metrics {

// target_code,sigma,out_code,variance
void write_profile_csv(std::ostream& out, const DisentanglementProfile& profile);
// code,sigma_sq,ratio (ratio left empty for flagged groups)
void write_ratio_csv(std::ostream& out, const std::vector<RatioEntry>& ratios);
// fixed_code,out_code,variance,excluded
void write_prior_metric_csv(std::ostream& out, const PriorMetricProfile& profile);

// One file each; reference columns are appended when an overlay exists.
void write_distance_csv(std::ostream& out, const RationalityReport& r);  // t,distance[,reference]
void write_speed_csv(std::ostream& out, const RationalityReport& r);     // t,speed1,speed2[,...]
void write_direction_csv(std::ostream& out, const RationalityReport& r); // t,direction1,direction2[,...]

// value,t_index,x1,y1,x2,y2
void write_sweep_csv(std::ostream& out, const std::vector<model::SweepFrame>& frames);

}  // namespace encforge::metrics
