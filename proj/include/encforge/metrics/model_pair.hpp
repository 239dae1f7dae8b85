#pragma once

#include "encforge/metrics/disentangle.hpp"
#include "encforge/model/model.hpp"

namespace encforge::metrics {

// Free-running decode of `length` steps and encoder-mean re-encode. The pair
// keeps a reference to `params`, which must outlive it.
ModelPair model_pair(const model::ModelParams& params, std::size_t length);

}  // namespace encforge::metrics
