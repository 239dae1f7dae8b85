#include "encforge/recurrent/gru.hpp"

#include <string>

#include "encforge/error.hpp"

namespace encforge::recurrent {

namespace {

constexpr const char* kGates[] = {"z", "r", "h"};

}  // namespace

void add_gru_params(ParamStore& store, const std::string& prefix, GruShape shape,
                    numerics::Rng& rng) {
  if (shape.input == 0 || shape.hidden == 0) {
    throw PreconditionError("GRU widths must be positive");
  }
  for (const char* g : kGates) {
    store.add(prefix + ".W_" + g, numerics::glorot_uniform(shape.hidden, shape.input, rng));
    store.add(prefix + ".U_" + g, numerics::glorot_uniform(shape.hidden, shape.hidden, rng));
    store.add(prefix + ".b_" + g, numerics::Tensor({shape.hidden}));
  }
}

std::vector<std::string> gru_param_names(const std::string& prefix) {
  std::vector<std::string> names;
  for (const char* g : kGates) {
    names.push_back(prefix + ".W_" + g);
    names.push_back(prefix + ".U_" + g);
    names.push_back(prefix + ".b_" + g);
  }
  return names;
}

GruParams GruParams::bind(GradContext& ctx, const ParamStore& store, const std::string& prefix) {
  auto p = [&](const char* suffix) { return ctx.param(store, prefix + suffix); };
  GruParams g{p(".W_z"), p(".U_z"), p(".b_z"), p(".W_r"), p(".U_r"),
              p(".b_r"), p(".W_h"), p(".U_h"), p(".b_h"), {}};
  g.shape.hidden = g.W_z.value().rows();
  g.shape.input = g.W_z.value().cols();
  return g;
}

Var gru_cell(Var x, Var h_prev, const GruParams& p) {
  if (x.size() != p.shape.input || h_prev.size() != p.shape.hidden) {
    throw DimensionError("gru_cell: expected input " + std::to_string(p.shape.input) +
                         " / hidden " + std::to_string(p.shape.hidden) + ", got " +
                         std::to_string(x.size()) + " / " + std::to_string(h_prev.size()));
  }
  using namespace numerics;
  Var update = sigmoid(linear2(p.W_z, x, p.U_z, h_prev, p.b_z));
  Var reset = sigmoid(linear2(p.W_r, x, p.U_r, h_prev, p.b_r));
  Var candidate = numerics::tanh(linear2(p.W_h, x, p.U_h, hadamard(reset, h_prev), p.b_h));
  // (1 - u) ⊙ h + u ⊙ c, written as h + u ⊙ (c - h)
  return add(h_prev, hadamard(update, sub(candidate, h_prev)));
}

GruRun run_gru(std::span<const Var> seq, Var h0, const GruParams& p) {
  if (seq.empty()) throw PreconditionError("run_gru: empty sequence");
  GruRun run;
  run.hiddens.reserve(seq.size());
  Var h = h0;
  for (Var x : seq) {
    h = gru_cell(x, h, p);
    run.hiddens.push_back(h);
  }
  run.final = h;
  return run;
}

Var run_bigru(std::span<const Var> seq, const GruParams& fwd, const GruParams& bwd) {
  if (seq.empty()) throw PreconditionError("run_bigru: empty sequence");
  if (fwd.shape.input != bwd.shape.input || fwd.shape.hidden != bwd.shape.hidden) {
    throw DimensionError("run_bigru: forward and backward GRU widths differ");
  }
  GradContext& ctx = *seq.front().ctx;
  const std::vector<Var> reversed(seq.rbegin(), seq.rend());
  Var forward = run_gru(seq, ctx.constant(numerics::Tensor({fwd.shape.hidden})), fwd).final;
  Var backward = run_gru(reversed, ctx.constant(numerics::Tensor({bwd.shape.hidden})), bwd).final;
  return concat(forward, backward);
}

}  // namespace encforge::recurrent
