#include "encforge/model/sweep.hpp"

#include <cmath>
#include <string>

#include "encforge/error.hpp"

namespace encforge::model {

std::vector<double> sweep_values(double lo, double hi, double step) {
  if (!(step > 0.0)) throw PreconditionError("sweep: step must be > 0");
  if (!(hi >= lo)) throw PreconditionError("sweep: hi must be >= lo");
  // The slack absorbs representation error of decimal steps such as 0.1.
  const double slack = 1e-9;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + slack)) + 1;
  std::vector<double> values;
  values.reserve(count + 1);
  for (std::size_t i = 0; i < count; ++i) values.push_back(lo + static_cast<double>(i) * step);
  if (std::abs(values.back() - hi) <= slack * step) {
    values.back() = hi;
  } else {
    values.push_back(hi);
  }
  return values;
}

std::vector<SweepFrame> latent_sweep(const ModelParams& p, std::size_t k, const SweepOptions& opts) {
  const std::size_t K = p.config.latent;
  if (k >= K) {
    throw IndexError("sweep: code index " + std::to_string(k) + " out of range [0, " +
                     std::to_string(K) + ")");
  }
  Tensor z = opts.base_z.value_or(Tensor({K}));
  if (z.size() != K) {
    throw DimensionError("sweep: base z has " + std::to_string(z.size()) + " codes, model has " +
                         std::to_string(K));
  }
  const std::size_t length = opts.length.value_or(p.config.length);
  std::vector<SweepFrame> frames;
  for (double v : sweep_values(opts.lo, opts.hi, opts.step)) {
    z[k] = v;
    frames.push_back({v, decode(p, z.values(), length)});
  }
  return frames;
}

}  // namespace encforge::model
