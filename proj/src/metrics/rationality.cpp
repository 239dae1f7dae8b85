#include "encforge/metrics/rationality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "encforge/error.hpp"

namespace encforge::metrics {

std::vector<double> distance_profile(const Encounter& enc) {
  enc.validate();
  std::vector<double> out(enc.length());
  for (std::size_t t = 0; t < enc.length(); ++t) {
    out[t] = std::hypot(enc.s1[t].x - enc.s2[t].x, enc.s1[t].y - enc.s2[t].y);
  }
  return out;
}

std::vector<double> speed_profile(const Trajectory& seq) {
  if (seq.size() < 2) throw PreconditionError("speed profile needs T >= 2");
  std::vector<double> out(seq.size() - 1);
  for (std::size_t t = 0; t + 1 < seq.size(); ++t) {
    out[t] = std::hypot(seq[t + 1].x - seq[t].x, seq[t + 1].y - seq[t].y);
  }
  return out;
}

DirectionProfile direction_profile(const Trajectory& seq) {
  if (seq.size() < 3) throw PreconditionError("direction profile needs T >= 3");
  DirectionProfile out;
  out.degrees.resize(seq.size() - 2);
  for (std::size_t t = 0; t + 2 < seq.size(); ++t) {
    const double ax = seq[t + 1].x - seq[t].x;
    const double ay = seq[t + 1].y - seq[t].y;
    const double bx = seq[t + 2].x - seq[t + 1].x;
    const double by = seq[t + 2].y - seq[t + 1].y;
    if ((ax == 0.0 && ay == 0.0) || (bx == 0.0 && by == 0.0)) {
      out.degrees[t] = 0.0;
      out.degenerate = true;
      continue;
    }
    const double cross = ax * by - ay * bx;
    const double dot = ax * bx + ay * by;
    out.degrees[t] = std::abs(std::atan2(cross, dot)) * 180.0 / std::numbers::pi;
  }
  return out;
}

Summary summarize(const std::vector<double>& values) {
  Summary s;
  if (values.empty()) return s;
  double acc = 0.0;
  for (double v : values) acc += v;
  s.mean = acc / static_cast<double>(values.size());
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  return s;
}

namespace {

void accumulate(std::vector<double>& acc, const std::vector<double>& v) {
  if (acc.empty()) acc.assign(v.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) acc[i] += v[i];
}

void divide(std::vector<double>& acc, double n) {
  for (double& v : acc) v /= n;
}

}  // namespace

RationalityReport rationality_report(const Encounter& enc, const std::vector<Encounter>* reference) {
  enc.validate();
  enc.require_unit_box();
  RationalityReport r;
  r.distance = distance_profile(enc);
  r.speed1 = speed_profile(enc.s1);
  r.speed2 = speed_profile(enc.s2);
  const DirectionProfile d1 = direction_profile(enc.s1);
  const DirectionProfile d2 = direction_profile(enc.s2);
  r.direction1 = d1.degrees;
  r.direction2 = d2.degrees;
  r.degenerate_direction = d1.degenerate || d2.degenerate;
  r.distance_summary = summarize(r.distance);
  r.speed1_summary = summarize(r.speed1);
  r.speed2_summary = summarize(r.speed2);
  r.direction1_summary = summarize(r.direction1);
  r.direction2_summary = summarize(r.direction2);

  if (reference != nullptr && !reference->empty()) {
    ReferenceOverlay o;
    for (const Encounter& ref : *reference) {
      ref.validate();
      if (ref.length() != enc.length()) {
        throw DimensionError("reference encounter '" + ref.id + "' has length " +
                             std::to_string(ref.length()) + ", expected " +
                             std::to_string(enc.length()));
      }
      accumulate(o.distance, distance_profile(ref));
      accumulate(o.speed1, speed_profile(ref.s1));
      accumulate(o.speed2, speed_profile(ref.s2));
      accumulate(o.direction1, direction_profile(ref.s1).degrees);
      accumulate(o.direction2, direction_profile(ref.s2).degrees);
    }
    const double n = static_cast<double>(reference->size());
    for (auto* v : {&o.distance, &o.speed1, &o.speed2, &o.direction1, &o.direction2}) divide(*v, n);
    r.reference = std::move(o);
  }
  return r;
}

}  // namespace encforge::metrics
