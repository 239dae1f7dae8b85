#pragma once

// Tape-based reverse-mode differentiation over Tensor values.
//
// A GradContext records every op applied to its Vars. backward() walks the
// tape in reverse and, for every parameter read through param(), adds the
// gradient into the ParamStore's gradient slot once. Parameter values are
// only ever read.

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "encforge/numerics/param_store.hpp"
#include "encforge/numerics/tensor.hpp"

namespace encforge::numerics {

class GradContext;

struct Var {
  GradContext* ctx = nullptr;
  std::uint32_t id = 0;

  const Tensor& value() const;
  std::size_t size() const { return value().size(); }
};

class GradContext {
 public:
  using Backward = std::function<void(GradContext&, std::uint32_t self)>;

  // With tracing off no backward closures are kept; use for inference.
  explicit GradContext(bool tracing = true) : tracing_(tracing) {}
  GradContext(const GradContext&) = delete;
  GradContext& operator=(const GradContext&) = delete;

  bool tracing() const noexcept { return tracing_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }

  Var constant(Tensor value);
  // Leaf bound to a stored parameter. Repeated lookups of the same name
  // share one node. All params in a trace must come from the same store.
  Var param(const ParamStore& store, std::string_view name);

  const Tensor& value(Var v) const;
  const Tensor& value(std::uint32_t id) const;

  // d(loss)/d(node), available after backward(); empty if the node did not
  // influence the loss.
  const Tensor& grad(Var v) const { return grads_[v.id]; }

  // Adds seed · d(loss)/d(param) into `store`'s gradient slots. `loss` must
  // be a single-element node and `store` the one params were read from.
  void backward(Var loss, ParamStore& store, double seed = 1.0);

  // Op plumbing: records a node and returns its handle.
  Var push(Tensor value, Backward backward);
  // Gradient accumulator of a node, allocated as zeros on first use.
  Tensor& grad_slot(std::uint32_t id);
  bool has_grad(std::uint32_t id) const { return !grads_[id].empty(); }

 private:
  struct Node {
    Tensor value;
    const Tensor* param_value = nullptr;
    std::int64_t param_index = -1;
    Backward backward;
  };

  bool tracing_;
  std::vector<Node> nodes_;
  std::vector<Tensor> grads_;
  const ParamStore* store_ = nullptr;
  std::vector<std::int64_t> param_nodes_;  // store index -> node id, -1 if unused
};

// ---- primitive ops -------------------------------------------------------

Var matvec(Var w, Var x);                               // W x
Var linear(Var w, Var x, Var b);                        // W x + b
Var linear2(Var w, Var x, Var u, Var h, Var b);         // W x + U h + b
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var hadamard(Var a, Var b);
Var scale(Var a, double s);
Var concat(Var a, Var b);
Var slice(Var a, std::size_t offset, std::size_t length);
Var tanh(Var a);  // result kept strictly inside (-1, 1)
Var sigmoid(Var a);
Var exp(Var a);
Var sum(Var a);

// Mean over all elements of (a - b)², with each list read as the
// concatenation of its members.
Var mse(std::span<const Var> a, std::span<const Var> b);
Var mse(Var a, Var b);

// ½ Σ (μ² + σ² − 1 − ln σ²); KL of N(μ, diag σ²) from N(0, I).
Var gaussian_kl(Var mu, Var sigma);

// μ + σ ⊙ noise. The noise is a constant: no gradient flows to it.
Var reparameterize(Var mu, Var sigma, const Tensor& noise);

// Plain value versions used outside a trace.
double mse(const Tensor& a, const Tensor& b);
double gaussian_kl(const Tensor& mu, const Tensor& sigma);

}  // namespace encforge::numerics
