#pragma once

#include <cstdint>
#include <vector>

#include "encforge/numerics/param_store.hpp"

namespace encforge::numerics {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Adaptive-moment state; sized lazily against the store on first step.
struct OptState {
  std::uint64_t step = 0;
  std::vector<Tensor> first_moment;
  std::vector<Tensor> second_moment;
};

// One Adam update of every parameter from its gradient slot, then zeroes
// the gradients. Throws PreconditionError if no gradients were populated.
void optimizer_step(ParamStore& params, const AdamConfig& cfg, OptState& state);

}  // namespace encforge::numerics
