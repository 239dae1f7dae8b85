#include "encforge/data/synth.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "encforge/error.hpp"

namespace encforge::data {

const char* to_string(EncounterFamily f) {
  switch (f) {
    case EncounterFamily::Crossing:
      return "crossing";
    case EncounterFamily::SameDirection:
      return "same-direction";
    case EncounterFamily::OppositeDirection:
      return "opposite-direction";
    case EncounterFamily::Merging:
      return "merging";
  }
  return "?";
}

EncounterFamily parse_family(const std::string& name) {
  for (auto f : {EncounterFamily::Crossing, EncounterFamily::SameDirection,
                 EncounterFamily::OppositeDirection, EncounterFamily::Merging}) {
    if (name == to_string(f)) return f;
  }
  throw ConfigError("unknown encounter family '" + name +
                    "' (expected crossing, same-direction, opposite-direction or merging)");
}

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLaneWidth = 3.5;

struct Vec {
  double x, y;
};

Vec operator+(Vec a, Vec b) { return {a.x + b.x, a.y + b.y}; }
Vec operator-(Vec a, Vec b) { return {a.x - b.x, a.y - b.y}; }
Vec operator*(double s, Vec a) { return {s * a.x, s * a.y}; }

Vec heading(double angle) { return {std::cos(angle), std::sin(angle)}; }

Encounter make_one(const SynthSpec& spec, std::size_t index, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  const auto samples = static_cast<std::size_t>(std::llround(spec.duration_s * spec.rate_hz)) + 1;
  const double dt = 1.0 / spec.rate_hz;
  const std::size_t mid = (samples - 1) / 2;
  const double t_mid = static_cast<double>(mid) * dt;
  const double t_end = static_cast<double>(samples - 1) * dt;

  const double theta = uniform(0.0, 2.0 * kPi);
  const Vec d1 = heading(theta);
  const Vec normal{-d1.y, d1.x};
  const Vec origin{uniform(-20.0, 20.0), uniform(-20.0, 20.0)};
  const double v1 = uniform(spec.speed_min, spec.speed_max);
  const double v2 = uniform(spec.speed_min, spec.speed_max);

  Encounter enc;
  char id[64];
  std::snprintf(id, sizeof id, "%s-%04zu", to_string(spec.family), index);
  enc.id = id;
  enc.s1.resize(samples);
  enc.s2.resize(samples);

  switch (spec.family) {
    case EncounterFamily::Crossing: {
      const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
      const Vec d2 = heading(theta + sign * uniform(kPi / 3.0, 2.0 * kPi / 3.0));
      for (std::size_t i = 0; i < samples; ++i) {
        const double tau = static_cast<double>(i) * dt - t_mid;
        const Vec p1 = origin + (v1 * tau) * d1;
        const Vec p2 = origin + (v2 * tau) * d2;
        enc.s1[i] = {p1.x, p1.y};
        enc.s2[i] = {p2.x, p2.y};
      }
      break;
    }
    case EncounterFamily::SameDirection: {
      const double gap = uniform(-10.0, 10.0);
      const Vec start2 = origin + kLaneWidth * normal + gap * d1;
      for (std::size_t i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) * dt;
        const Vec p1 = origin + (v1 * t) * d1;
        const Vec p2 = start2 + (v2 * t) * d1;
        enc.s1[i] = {p1.x, p1.y};
        enc.s2[i] = {p2.x, p2.y};
      }
      break;
    }
    case EncounterFamily::OppositeDirection: {
      const Vec d2{-d1.x, -d1.y};
      const Vec lane = origin + kLaneWidth * normal;
      for (std::size_t i = 0; i < samples; ++i) {
        const double tau = static_cast<double>(i) * dt - t_mid;
        const Vec p1 = origin + (v1 * tau) * d1;
        const Vec p2 = lane + (v2 * tau) * d2;
        enc.s1[i] = {p1.x, p1.y};
        enc.s2[i] = {p2.x, p2.y};
      }
      break;
    }
    case EncounterFamily::Merging: {
      const double lateral = uniform(kLaneWidth, 2.0 * kLaneWidth);
      const double terminal_gap = uniform(0.5, 2.0);
      const Vec start2 = origin + lateral * normal + uniform(-5.0, 5.0) * d1;
      const Vec end2 = origin + (v1 * t_end - terminal_gap) * d1;
      for (std::size_t i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) * dt;
        const Vec p1 = origin + (v1 * t) * d1;
        const Vec p2 = start2 + (t / t_end) * (end2 - start2);
        enc.s1[i] = {p1.x, p1.y};
        enc.s2[i] = {p2.x, p2.y};
      }
      break;
    }
  }

  if (spec.noise > 0.0) {
    std::normal_distribution<double> jitter(0.0, spec.noise);
    for (Trajectory* s : {&enc.s1, &enc.s2}) {
      for (Point& p : *s) {
        p.x += jitter(rng);
        p.y += jitter(rng);
      }
    }
  }
  return enc;
}

}  // namespace

std::vector<Encounter> synth_generate(const SynthSpec& spec) {
  if (!(spec.noise >= 0.0)) throw ConfigError("synth: noise must be >= 0");
  if (spec.count < 1) throw ConfigError("synth: count must be >= 1");
  if (!(spec.speed_min > 0.0) || spec.speed_max < spec.speed_min) {
    throw ConfigError("synth: speed range must satisfy 0 < min <= max");
  }
  if (!(spec.duration_s > 0.0) || !(spec.rate_hz > 0.0) || spec.duration_s * spec.rate_hz < 2.0) {
    throw ConfigError("synth: window must span at least 3 samples");
  }
  std::mt19937_64 rng(spec.seed);
  std::vector<Encounter> out;
  out.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) out.push_back(make_one(spec, i, rng));
  return out;
}

std::vector<Encounter> synth_mixed(std::size_t per_family, double noise, std::uint64_t seed) {
  std::vector<Encounter> out;
  std::uint64_t offset = 0;
  for (auto f : {EncounterFamily::Crossing, EncounterFamily::SameDirection,
                 EncounterFamily::OppositeDirection, EncounterFamily::Merging}) {
    SynthSpec spec;
    spec.family = f;
    spec.noise = noise;
    spec.count = per_family;
    spec.seed = seed + offset++;
    auto batch = synth_generate(spec);
    out.insert(out.end(), batch.begin(), batch.end());
  }
  return out;
}

}  // namespace encforge::data
