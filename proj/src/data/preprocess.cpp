#include "encforge/data/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "encforge/error.hpp"

namespace encforge::data {

Trajectory resample(const Trajectory& traj, std::size_t length) {
  if (traj.size() < 2) {
    throw PreconditionError("resample: need at least 2 input points, got " +
                            std::to_string(traj.size()));
  }
  if (length < 2) throw PreconditionError("resample: target length must be >= 2");

  const std::size_t n = traj.size();
  Trajectory out(length);
  const double span = static_cast<double>(n - 1);
  const double denom = static_cast<double>(length - 1);
  for (std::size_t k = 0; k < length; ++k) {
    const double pos = static_cast<double>(k) * span / denom;
    const auto lo = std::min(static_cast<std::size_t>(pos), n - 2);
    const double frac = pos - static_cast<double>(lo);
    const Point& a = traj[lo];
    const Point& b = traj[lo + 1];
    out[k] = Point{a.x + frac * (b.x - a.x), a.y + frac * (b.y - a.y)};
  }
  out.front() = traj.front();
  out.back() = traj.back();
  return out;
}

Encounter resample(const Encounter& enc, std::size_t length) {
  enc.validate();
  Encounter out = enc;
  out.s1 = resample(enc.s1, length);
  out.s2 = resample(enc.s2, length);
  return out;
}

namespace {

Point mean_of(const Trajectory& a, const Trajectory* b) {
  double sx = 0.0, sy = 0.0;
  std::size_t n = 0;
  for (const Trajectory* s : {&a, b}) {
    if (s == nullptr) continue;
    for (const Point& p : *s) {
      sx += p.x;
      sy += p.y;
      ++n;
    }
  }
  return Point{sx / static_cast<double>(n), sy / static_cast<double>(n)};
}

double max_deviation(const Trajectory& s, Point c) {
  double m = 0.0;
  for (const Point& p : s) m = std::max({m, std::abs(p.x - c.x), std::abs(p.y - c.y)});
  return m;
}

Trajectory map_points(const Trajectory& s, Point center, double scale, bool forward) {
  Trajectory out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    out[i] = forward ? Point{(s[i].x - center.x) / scale, (s[i].y - center.y) / scale}
                     : Point{s[i].x * scale + center.x, s[i].y * scale + center.y};
  }
  return out;
}

}  // namespace

Encounter normalize(const Encounter& enc, NormalizeMode mode) {
  enc.validate();
  if (enc.normalized) throw PreconditionError("normalize: encounter '" + enc.id + "' already normalized");

  NormalizationFrame frame;
  frame.mode = mode;
  if (mode == NormalizeMode::SharedFrame) {
    frame.center1 = frame.center2 = mean_of(enc.s1, &enc.s2);
  } else {
    frame.center1 = mean_of(enc.s1, nullptr);
    frame.center2 = mean_of(enc.s2, nullptr);
  }
  frame.scale = std::max(max_deviation(enc.s1, frame.center1), max_deviation(enc.s2, frame.center2));
  if (!(frame.scale > 0.0) || !std::isfinite(frame.scale)) {
    throw DomainError("normalize: encounter '" + enc.id + "' is degenerate (zero scale)");
  }

  Encounter out;
  out.id = enc.id;
  out.s1 = map_points(enc.s1, frame.center1, frame.scale, true);
  out.s2 = map_points(enc.s2, frame.center2, frame.scale, true);
  out.normalized = true;
  out.frame = frame;
  return out;
}

Encounter denormalize(const Encounter& enc) {
  if (!enc.normalized || !enc.frame) {
    throw PreconditionError("denormalize: encounter '" + enc.id + "' has no normalization frame");
  }
  const NormalizationFrame& f = *enc.frame;
  Encounter out;
  out.id = enc.id;
  out.s1 = map_points(enc.s1, f.center1, f.scale, false);
  out.s2 = map_points(enc.s2, f.center2, f.scale, false);
  return out;
}

}  // namespace encforge::data
