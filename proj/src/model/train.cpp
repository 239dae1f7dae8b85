#include "encforge/model/train.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <string>

#include "encforge/error.hpp"
#include "encforge/numerics/optimizer.hpp"

namespace encforge::model {

void TrainConfig::validate() const {
  if (!(beta >= 0.0)) throw ConfigError("beta must be >= 0");
  if (latent < 1) throw ConfigError("latent width K must be >= 1");
  if (hidden < 1) throw ConfigError("hidden width H must be >= 1");
  if (batch_size < 1) throw ConfigError("batch size must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be > 0");
}

namespace {

std::size_t check_dataset(const std::vector<Encounter>& dataset) {
  if (dataset.empty()) throw PreconditionError("train: empty dataset");
  const std::size_t length = dataset.front().length();
  for (const auto& e : dataset) {
    e.validate();
    if (e.length() != length) {
      throw PreconditionError("train: inconsistent sequence lengths (" + std::to_string(length) +
                              " vs " + std::to_string(e.length()) + " in '" + e.id + "')");
    }
    e.require_unit_box();
  }
  return length;
}

}  // namespace

TrainResult train(const std::vector<Encounter>& dataset, const TrainConfig& cfg,
                  const EpochCallback& on_epoch) {
  cfg.validate();
  const std::size_t length = check_dataset(dataset);

  std::seed_seq seq{cfg.seed, std::uint64_t{0x5eed}};
  std::array<std::uint64_t, 3> seeds{};
  seq.generate(seeds.begin(), seeds.end());
  numerics::Rng shuffle_rng(seeds[1]);
  numerics::Rng noise_rng(seeds[2]);

  TrainResult result;
  ModelConfig mc{cfg.variant, cfg.hidden, cfg.latent, length};
  result.params = init_params(mc, seeds[0]);
  ModelParams& params = result.params;
  numerics::AdamConfig adam;
  adam.lr = cfg.learning_rate;
  numerics::OptState state;

  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const double n = static_cast<double>(dataset.size());
  result.history.reserve(cfg.epochs);

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    EpochStats stats;
    stats.epoch = epoch;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t stop = std::min(order.size(), start + cfg.batch_size);
      const double weight = 1.0 / static_cast<double>(stop - start);
      params.store.zero_grad();
      for (std::size_t i = start; i < stop; ++i) {
        const Encounter& enc = dataset[order[i]];
        numerics::GradContext ctx;
        Tensor noise;
        if (cfg.sample_latent) noise = numerics::standard_normal(cfg.latent, noise_rng);
        const LossVars terms = example_loss(ctx, params, enc, cfg.beta,
                                            cfg.sample_latent ? &noise : nullptr,
                                            cfg.teacher_forcing);
        ctx.backward(terms.total, params.store, weight);
        stats.total += terms.total.value()[0];
        stats.recon += terms.recon.value()[0];
        stats.kl += terms.kl.value()[0];
      }
      numerics::optimizer_step(params.store, adam, state);
    }
    stats.total /= n;
    stats.recon /= n;
    stats.kl /= n;
    result.history.push_back(stats);
    if (on_epoch) on_epoch(stats);
  }
  return result;
}

LossValues evaluate(const ModelParams& p, const std::vector<Encounter>& dataset, double beta,
                    bool teacher_forcing) {
  check_dataset(dataset);
  LossValues mean;
  for (const auto& enc : dataset) {
    numerics::GradContext ctx(false);
    const LossVars terms = example_loss(ctx, p, enc, beta, nullptr, teacher_forcing);
    mean.total += terms.total.value()[0];
    mean.recon += terms.recon.value()[0];
    mean.kl += terms.kl.value()[0];
  }
  const double n = static_cast<double>(dataset.size());
  mean.total /= n;
  mean.recon /= n;
  mean.kl /= n;
  return mean;
}

}  // namespace encforge::model
