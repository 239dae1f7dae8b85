#pragma once

// Gated recurrent unit with the update gate weighting the candidate:
//
//   u = sigmoid(W_z x + U_z h + b_z)
//   r = sigmoid(W_r x + U_r h + b_r)
//   c = tanh(W_h x + U_h (r ⊙ h) + b_h)
//   h' = (1 - u) ⊙ h + u ⊙ c
//
// Checkpoints record this convention as kGateConvention.

#include <span>
#include <string>
#include <vector>

#include "encforge/numerics/autodiff.hpp"
#include "encforge/numerics/init.hpp"
#include "encforge/numerics/param_store.hpp"

namespace encforge::recurrent {

using numerics::GradContext;
using numerics::ParamStore;
using numerics::Var;

inline constexpr const char* kGateConvention = "h=(1-u)*h_prev+u*candidate";

struct GruShape {
  std::size_t input = 0;
  std::size_t hidden = 0;
};

// Registers <prefix>.{W,U,b}_{z,r,h} in `store`: matrices Glorot-uniform,
// biases zero.
void add_gru_params(ParamStore& store, const std::string& prefix, GruShape shape,
                    numerics::Rng& rng);

// Names a GRU's parameters within a store, in registration order.
std::vector<std::string> gru_param_names(const std::string& prefix);

/// A GRU cell's parameters bound onto a trace.
struct GruParams {
  Var W_z, U_z, b_z;
  Var W_r, U_r, b_r;
  Var W_h, U_h, b_h;
  GruShape shape;

  static GruParams bind(GradContext& ctx, const ParamStore& store, const std::string& prefix);
};

Var gru_cell(Var x, Var h_prev, const GruParams& p);

struct GruRun {
  std::vector<Var> hiddens;
  Var final;
};

// Throws PreconditionError on an empty sequence.
GruRun run_gru(std::span<const Var> seq, Var h0, const GruParams& p);

// [forward final state over seq ; backward final state over reversed seq],
// both started from zeros. Width 2H.
Var run_bigru(std::span<const Var> seq, const GruParams& fwd, const GruParams& bwd);

}  // namespace encforge::recurrent
