#pragma once

#include <cstddef>

#include "encforge/data/encounter.hpp"

namespace encforge::data {

inline constexpr std::size_t kDefaultLength = 50;

// Piecewise-linear resampling by sample index: output k sits at index
// position k (n - 1) / (length - 1) of the input. Endpoints are copied.
Trajectory resample(const Trajectory& traj, std::size_t length);
Encounter resample(const Encounter& enc, std::size_t length);

// Centers and scales into [-1, 1] by the largest absolute deviation over
// both sequences, storing the frame for denormalize().
Encounter normalize(const Encounter& enc, NormalizeMode mode = NormalizeMode::SharedFrame);
Encounter denormalize(const Encounter& enc);

}  // namespace encforge::data
