#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "encforge/model/model.hpp"

namespace encforge::model {

struct TrainConfig {
  Variant variant = Variant::Mtg;
  double beta = 1.0;
  std::size_t epochs = 2000;
  std::size_t batch_size = 16;
  double learning_rate = 1e-3;
  std::uint64_t seed = 0;
  std::size_t hidden = 64;
  std::size_t latent = 10;
  bool teacher_forcing = true;
  // Draw z = μ + σ ε per example; off trains on z = μ.
  bool sample_latent = true;

  void validate() const;
};

// Dataset-mean loss terms observed during one epoch's updates.
struct EpochStats {
  std::size_t epoch = 0;  // 1-based
  double total = 0.0;
  double recon = 0.0;
  double kl = 0.0;
};

struct TrainResult {
  ModelParams params;
  std::vector<EpochStats> history;
};

using EpochCallback = std::function<void(const EpochStats&)>;

// Minibatch Adam on the per-example objective, gradients averaged over the
// batch. Shuffling, initialization and latent noise all derive from
// cfg.seed, so two runs with the same inputs produce identical parameters.
TrainResult train(const std::vector<Encounter>& dataset, const TrainConfig& cfg,
                  const EpochCallback& on_epoch = {});

// Mean loss terms over a dataset with z = μ.
LossValues evaluate(const ModelParams& p, const std::vector<Encounter>& dataset, double beta,
                    bool teacher_forcing);

}  // namespace encforge::model
