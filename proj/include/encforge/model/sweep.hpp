#pragma once

#include <optional>
#include <vector>

#include "encforge/model/model.hpp"

namespace encforge::model {

struct SweepOptions {
  double lo = -1.0;
  double hi = 1.0;
  double step = 0.1;
  std::optional<Tensor> base_z;  // zeros when absent
  std::optional<std::size_t> length;  // model's trained T when absent
};

struct SweepFrame {
  double value = 0.0;
  Encounter encounter;
};

// Values lo, lo + step, ... up to hi; hi itself is always the last value.
std::vector<double> sweep_values(double lo, double hi, double step);

// Decodes base_z with code k replaced by each sweep value.
// Throws IndexError when k >= K and PreconditionError when step <= 0.
std::vector<SweepFrame> latent_sweep(const ModelParams& p, std::size_t k,
                                     const SweepOptions& opts = {});

}  // namespace encforge::model
