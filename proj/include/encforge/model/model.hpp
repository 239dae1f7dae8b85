#pragma once

// Sequence VAE architectures over two-vehicle encounters.
//
// Mtg:       bi-directional GRU encoder; two decoder branches whose hidden
//            states are cross-coupled (branch 1 steps from branch 2's
//            previous hidden state and vice versa), each emitting a 2-D
//            point through a tanh head.
// Baseline1: single-direction GRU encoder; one decoder emitting both points
//            jointly as a 4-vector.
//
// Both map the encoder state to μ = W_mu h + b_mu and
// σ = exp((W_sigma h + b_sigma) / 2), and derive the decoder's initial
// hidden state(s) from z with affine maps.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "encforge/data/encounter.hpp"
#include "encforge/numerics/autodiff.hpp"
#include "encforge/numerics/init.hpp"
#include "encforge/numerics/param_store.hpp"

namespace encforge::model {

using data::Encounter;
using numerics::GradContext;
using numerics::ParamStore;
using numerics::Tensor;
using numerics::Var;

enum class Variant { Mtg, Baseline1 };

const char* to_string(Variant v);
Variant parse_variant(const std::string& name);

inline constexpr std::size_t kInputWidth = 4;  // [x1, y1, x2, y2]

struct ModelConfig {
  Variant variant = Variant::Mtg;
  std::size_t hidden = 64;
  std::size_t latent = 10;
  std::size_t length = 50;  // sequence length the model was trained on

  bool operator==(const ModelConfig&) const = default;
};

struct ModelParams {
  ModelConfig config;
  ParamStore store;
};

// Glorot-uniform matrices, zero biases and start tokens.
ModelParams init_params(const ModelConfig& config, std::uint64_t seed);

struct LatentCode {
  Tensor z;
  Tensor mu;
  Tensor sigma;
};

// ---- traced building blocks ------------------------------------------------

struct EncoderHeads {
  Var mu;
  Var sigma;
};

struct DecodedSequences {
  std::vector<Var> s1;  // 2-vectors
  std::vector<Var> s2;
};

// Encoder on a trace. The encounter must lie in [-1, 1].
EncoderHeads encode_graph(GradContext& ctx, const ModelParams& p, const Encounter& enc);

// Decoder on a trace. With `teacher`, step t > 0 consumes the ground-truth
// point t - 1 instead of the model's own previous output.
DecodedSequences decode_graph(GradContext& ctx, const ModelParams& p, Var z, std::size_t length,
                              const Encounter* teacher = nullptr);

struct LossVars {
  Var total;
  Var recon;
  Var kl;
};

// mse(S1, S̄1) + mse(S2, S̄2) + beta · KL(N(μ, σ²) || N(0, I)).
LossVars loss_graph(GradContext& ctx, const Encounter& target, const DecodedSequences& recon,
                    Var mu, Var sigma, double beta);

// Full per-example objective: encode, reparameterize with the given noise
// (z = μ when absent), decode, score.
LossVars example_loss(GradContext& ctx, const ModelParams& p, const Encounter& enc, double beta,
                      const Tensor* noise, bool teacher_forcing);

// ---- value-level API -------------------------------------------------------

// z = μ + σ ⊙ noise.
Tensor reparameterize(const Tensor& mu, const Tensor& sigma, const Tensor& noise);

// z = μ when `noise` is absent.
LatentCode encode(const ModelParams& p, const Encounter& enc, const Tensor* noise = nullptr);
LatentCode encode(const ModelParams& p, const Encounter& enc, numerics::Rng& rng);
// Free-running generation of `length` steps. Throws PreconditionError on 0.
Encounter decode(const ModelParams& p, std::span<const double> z, std::size_t length);

// Variant-checked entry points; throw PreconditionError on a mismatch.
LatentCode encode_mtg(const ModelParams& p, const Encounter& enc, const Tensor* noise = nullptr);
Encounter decode_mtg(const ModelParams& p, std::span<const double> z, std::size_t length);
LatentCode encode_baseline(const ModelParams& p, const Encounter& enc, const Tensor* noise = nullptr);
Encounter decode_baseline(const ModelParams& p, std::span<const double> z, std::size_t length);

struct LossValues {
  double total = 0.0;
  double recon = 0.0;
  double kl = 0.0;
};

LossValues loss(const Encounter& target, const Encounter& recon, const Tensor& mu,
                const Tensor& sigma, double beta);

}  // namespace encforge::model
