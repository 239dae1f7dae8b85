#include "encforge/numerics/init.hpp"

#include <cmath>

namespace encforge::numerics {

Tensor glorot_uniform(std::size_t rows, std::size_t cols, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  std::uniform_real_distribution<double> dist(-limit, limit);
  Tensor t({rows, cols});
  for (double& v : t.values()) v = dist(rng);
  return t;
}

Tensor standard_normal(std::size_t n, Rng& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Tensor t({n});
  for (double& v : t.values()) v = dist(rng);
  return t;
}

}  // namespace encforge::numerics
