#pragma once

#include <random>

#include "encforge/numerics/tensor.hpp"

namespace encforge::numerics {

using Rng = std::mt19937_64;

// Uniform in ±sqrt(6 / (fan_in + fan_out)) for a rows × cols matrix.
Tensor glorot_uniform(std::size_t rows, std::size_t cols, Rng& rng);

// One standard-normal draw per element.
Tensor standard_normal(std::size_t n, Rng& rng);

}  // namespace encforge::numerics
