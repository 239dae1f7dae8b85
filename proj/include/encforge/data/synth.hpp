#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "encforge/data/encounter.hpp"

namespace encforge::data {

enum class EncounterFamily { Crossing, SameDirection, OppositeDirection, Merging };

const char* to_string(EncounterFamily f);
// Throws ConfigError on an unknown name.
EncounterFamily parse_family(const std::string& name);

/// Parameters of the synthetic two-vehicle encounter generator.
///
/// Windows default to 10 s at 10 Hz, both endpoints included (101 raw
/// samples). Coordinates are meters in a randomly rotated and offset frame.
struct SynthSpec {
  EncounterFamily family = EncounterFamily::Crossing;
  double noise = 0.0;  // std-dev of pointwise Gaussian noise, meters
  double speed_min = 5.0;
  double speed_max = 15.0;
  std::uint64_t seed = 0;
  std::size_t count = 1;
  double duration_s = 10.0;
  double rate_hz = 10.0;
};

// Straight constant-speed paths per family:
//   crossing           headings 60-120 deg apart, paths meet at the middle sample
//   same-direction     parallel, one lane apart
//   opposite-direction antiparallel, one lane apart, passing mid-window
//   merging            second vehicle converges to a small terminal gap
std::vector<Encounter> synth_generate(const SynthSpec& spec);

// `per_family` encounters of each family, seeds derived from `seed`.
std::vector<Encounter> synth_mixed(std::size_t per_family, double noise, std::uint64_t seed);

}  // namespace encforge::data
