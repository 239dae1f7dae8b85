#include "encforge/metrics/model_pair.hpp"

namespace encforge::metrics {

ModelPair model_pair(const model::ModelParams& params, std::size_t length) {
  ModelPair pair;
  pair.latent = params.config.latent;
  pair.decode = [&params, length](std::span<const double> z) {
    return model::decode(params, z, length);
  };
  pair.encode = [&params](const Encounter& enc) {
    const model::LatentCode code = model::encode(params, enc);
    return std::vector<double>(code.mu.values().begin(), code.mu.values().end());
  };
  return pair;
}

}  // namespace encforge::metrics
