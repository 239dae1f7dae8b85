#include "encforge/numerics/autodiff.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "encforge/error.hpp"
#include "encforge/numerics/kernels.hpp"

namespace encforge::numerics {

const Tensor& Var::value() const { return ctx->value(*this); }

Var GradContext::constant(Tensor value) {
  require_finite(value, "constant");
  return push(std::move(value), nullptr);
}

Var GradContext::param(const ParamStore& store, std::string_view name) {
  if (store_ == nullptr) {
    store_ = &store;
    param_nodes_.assign(store.size(), -1);
  } else if (store_ != &store) {
    throw PreconditionError("trace already bound to a different parameter store");
  }
  const std::size_t idx = store.index(name);
  if (param_nodes_[idx] >= 0) return Var{this, static_cast<std::uint32_t>(param_nodes_[idx])};

  Node node;
  node.param_value = &store.entry(idx).value;
  node.param_index = static_cast<std::int64_t>(idx);
  nodes_.push_back(std::move(node));
  grads_.emplace_back();
  const auto id = static_cast<std::uint32_t>(nodes_.size() - 1);
  param_nodes_[idx] = id;
  return Var{this, id};
}

const Tensor& GradContext::value(Var v) const { return value(v.id); }

const Tensor& GradContext::value(std::uint32_t id) const {
  const Node& n = nodes_[id];
  return n.param_value != nullptr ? *n.param_value : n.value;
}

Var GradContext::push(Tensor value, Backward backward) {
  Node node;
  node.value = std::move(value);
  if (tracing_) node.backward = std::move(backward);
  nodes_.push_back(std::move(node));
  grads_.emplace_back();
  return Var{this, static_cast<std::uint32_t>(nodes_.size() - 1)};
}

Tensor& GradContext::grad_slot(std::uint32_t id) {
  Tensor& g = grads_[id];
  if (g.empty()) g = Tensor::zeros_like(value(id));
  return g;
}

void GradContext::backward(Var loss, ParamStore& store, double seed) {
  if (!tracing_) throw PreconditionError("backward() on a context with tracing disabled");
  if (loss.ctx != this) throw PreconditionError("loss belongs to a different trace");
  if (value(loss).size() != 1) {
    throw DimensionError("backward() needs a scalar loss, got shape " +
                         shape_string(value(loss).shape()));
  }
  if (store_ != nullptr && store_ != &store) {
    throw PreconditionError("backward() target store differs from the traced store");
  }
  for (auto& g : grads_) g = Tensor();
  grad_slot(loss.id)[0] = seed;
  for (std::uint32_t id = loss.id + 1; id-- > 0;) {
    if (grads_[id].empty()) continue;
    const Node& n = nodes_[id];
    if (n.backward) n.backward(*this, id);
  }
  for (std::size_t idx = 0; idx < param_nodes_.size(); ++idx) {
    const std::int64_t node = param_nodes_[idx];
    if (node < 0 || grads_[node].empty()) continue;
    Tensor& slot = store.entry(idx).grad;
    const Tensor& g = grads_[node];
    kernels::active().axpy(g.size(), 1.0, g.data(), slot.data());
  }
  store.mark_gradients();
}

// ---- ops -----------------------------------------------------------------

namespace {

[[noreturn]] void shape_mismatch(const char* op, const Tensor& a, const Tensor& b) {
  throw DimensionError(std::string(op) + ": incompatible shapes " + shape_string(a.shape()) +
                       " and " + shape_string(b.shape()));
}

void require_same_context(Var a, Var b) {
  if (a.ctx != b.ctx) throw PreconditionError("operands from different traces");
}

void require_vector(const char* op, const Tensor& t) {
  if (t.rank() != 1) {
    throw DimensionError(std::string(op) + ": expected a vector, got shape " +
                         shape_string(t.shape()));
  }
}

Var finish(GradContext& ctx, Tensor out, const char* op, GradContext::Backward back) {
  require_finite(out, op);
  return ctx.push(std::move(out), std::move(back));
}

template <typename F>
Var unary(Var a, const char* op, F&& f, GradContext::Backward back) {
  const Tensor& av = a.value();
  Tensor out = Tensor::zeros_like(av);
  for (std::size_t i = 0; i < av.size(); ++i) out[i] = f(av[i]);
  return finish(*a.ctx, std::move(out), op, std::move(back));
}

void check_matvec(const char* op, const Tensor& w, const Tensor& x) {
  if (w.rank() != 2 || x.rank() != 1 || w.cols() != x.size()) shape_mismatch(op, w, x);
}

}  // namespace

Var matvec(Var w, Var x) {
  require_same_context(w, x);
  const Tensor& wv = w.value();
  const Tensor& xv = x.value();
  check_matvec("matvec", wv, xv);
  Tensor out({wv.rows()});
  kernels::active().gemv(wv.rows(), wv.cols(), wv.data(), xv.data(), out.data());
  const std::uint32_t wi = w.id, xi = x.id;
  return finish(*w.ctx, std::move(out), "matvec", [wi, xi](GradContext& c, std::uint32_t self) {
    const Tensor& g = c.grad(Var{&c, self});
    const Tensor& W = c.value(wi);
    const Tensor& X = c.value(xi);
    const auto& k = kernels::active();
    k.ger_acc(W.rows(), W.cols(), g.data(), X.data(), c.grad_slot(wi).data());
    k.gemv_t_acc(W.rows(), W.cols(), W.data(), g.data(), c.grad_slot(xi).data());
  });
}

Var linear(Var w, Var x, Var b) {
  require_same_context(w, x);
  require_same_context(w, b);
  const Tensor& wv = w.value();
  const Tensor& xv = x.value();
  const Tensor& bv = b.value();
  check_matvec("linear", wv, xv);
  if (bv.rank() != 1 || bv.size() != wv.rows()) shape_mismatch("linear", wv, bv);
  Tensor out = bv;
  kernels::active().gemv_acc(wv.rows(), wv.cols(), wv.data(), xv.data(), out.data());
  const std::uint32_t wi = w.id, xi = x.id, bi = b.id;
  return finish(*w.ctx, std::move(out), "linear",
                [wi, xi, bi](GradContext& c, std::uint32_t self) {
                  const Tensor& g = c.grad(Var{&c, self});
                  const Tensor& W = c.value(wi);
                  const auto& k = kernels::active();
                  k.ger_acc(W.rows(), W.cols(), g.data(), c.value(xi).data(),
                            c.grad_slot(wi).data());
                  k.gemv_t_acc(W.rows(), W.cols(), W.data(), g.data(), c.grad_slot(xi).data());
                  k.axpy(g.size(), 1.0, g.data(), c.grad_slot(bi).data());
                });
}

Var linear2(Var w, Var x, Var u, Var h, Var b) {
  require_same_context(w, x);
  require_same_context(w, u);
  require_same_context(w, h);
  require_same_context(w, b);
  const Tensor& wv = w.value();
  const Tensor& uv = u.value();
  const Tensor& bv = b.value();
  check_matvec("linear2", wv, x.value());
  check_matvec("linear2", uv, h.value());
  if (uv.rows() != wv.rows()) shape_mismatch("linear2", wv, uv);
  if (bv.rank() != 1 || bv.size() != wv.rows()) shape_mismatch("linear2", wv, bv);
  Tensor out = bv;
  const auto& k = kernels::active();
  k.gemv_acc(wv.rows(), wv.cols(), wv.data(), x.value().data(), out.data());
  k.gemv_acc(uv.rows(), uv.cols(), uv.data(), h.value().data(), out.data());
  const std::uint32_t wi = w.id, xi = x.id, ui = u.id, hi = h.id, bi = b.id;
  return finish(*w.ctx, std::move(out), "linear2",
                [wi, xi, ui, hi, bi](GradContext& c, std::uint32_t self) {
                  const Tensor& g = c.grad(Var{&c, self});
                  const Tensor& W = c.value(wi);
                  const Tensor& U = c.value(ui);
                  const auto& kk = kernels::active();
                  kk.ger_acc(W.rows(), W.cols(), g.data(), c.value(xi).data(),
                             c.grad_slot(wi).data());
                  kk.gemv_t_acc(W.rows(), W.cols(), W.data(), g.data(), c.grad_slot(xi).data());
                  kk.ger_acc(U.rows(), U.cols(), g.data(), c.value(hi).data(),
                             c.grad_slot(ui).data());
                  kk.gemv_t_acc(U.rows(), U.cols(), U.data(), g.data(), c.grad_slot(hi).data());
                  kk.axpy(g.size(), 1.0, g.data(), c.grad_slot(bi).data());
                });
}

Var add(Var a, Var b) {
  require_same_context(a, b);
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  if (av.shape() != bv.shape()) shape_mismatch("add", av, bv);
  Tensor out = av;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += bv[i];
  const std::uint32_t ai = a.id, bi = b.id;
  return finish(*a.ctx, std::move(out), "add", [ai, bi](GradContext& c, std::uint32_t self) {
    const Tensor& g = c.grad(Var{&c, self});
    const auto& k = kernels::active();
    k.axpy(g.size(), 1.0, g.data(), c.grad_slot(ai).data());
    k.axpy(g.size(), 1.0, g.data(), c.grad_slot(bi).data());
  });
}

Var sub(Var a, Var b) {
  require_same_context(a, b);
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  if (av.shape() != bv.shape()) shape_mismatch("sub", av, bv);
  Tensor out = av;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= bv[i];
  const std::uint32_t ai = a.id, bi = b.id;
  return finish(*a.ctx, std::move(out), "sub", [ai, bi](GradContext& c, std::uint32_t self) {
    const Tensor& g = c.grad(Var{&c, self});
    const auto& k = kernels::active();
    k.axpy(g.size(), 1.0, g.data(), c.grad_slot(ai).data());
    k.axpy(g.size(), -1.0, g.data(), c.grad_slot(bi).data());
  });
}

Var hadamard(Var a, Var b) {
  require_same_context(a, b);
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  if (av.shape() != bv.shape()) shape_mismatch("hadamard", av, bv);
  Tensor out = av;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= bv[i];
  const std::uint32_t ai = a.id, bi = b.id;
  return finish(*a.ctx, std::move(out), "hadamard", [ai, bi](GradContext& c, std::uint32_t self) {
    const Tensor& g = c.grad(Var{&c, self});
    const Tensor& A = c.value(ai);
    const Tensor& B = c.value(bi);
    Tensor& ga = c.grad_slot(ai);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * B[i];
    Tensor& gb = c.grad_slot(bi);
    for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i] * A[i];
  });
}

Var scale(Var a, double s) {
  const std::uint32_t ai = a.id;
  return unary(a, "scale", [s](double v) { return s * v; },
               [ai, s](GradContext& c, std::uint32_t self) {
                 const Tensor& g = c.grad(Var{&c, self});
                 kernels::active().axpy(g.size(), s, g.data(), c.grad_slot(ai).data());
               });
}

Var concat(Var a, Var b) {
  require_same_context(a, b);
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  if (av.rank() != 1 || bv.rank() != 1) shape_mismatch("concat", av, bv);
  std::vector<double> vals(av.values().begin(), av.values().end());
  vals.insert(vals.end(), bv.values().begin(), bv.values().end());
  const std::size_t na = av.size();
  const std::size_t n = vals.size();
  Tensor out({n}, std::move(vals));
  const std::uint32_t ai = a.id, bi = b.id;
  return finish(*a.ctx, std::move(out), "concat", [ai, bi, na](GradContext& c, std::uint32_t self) {
    const Tensor& g = c.grad(Var{&c, self});
    Tensor& ga = c.grad_slot(ai);
    for (std::size_t i = 0; i < na; ++i) ga[i] += g[i];
    Tensor& gb = c.grad_slot(bi);
    for (std::size_t i = na; i < g.size(); ++i) gb[i - na] += g[i];
  });
}

Var slice(Var a, std::size_t offset, std::size_t length) {
  const Tensor& av = a.value();
  require_vector("slice", av);
  if (offset + length > av.size()) {
    throw DimensionError("slice [" + std::to_string(offset) + ", " +
                         std::to_string(offset + length) + ") out of shape " +
                         shape_string(av.shape()));
  }
  Tensor out({length});
  for (std::size_t i = 0; i < length; ++i) out[i] = av[offset + i];
  const std::uint32_t ai = a.id;
  return finish(*a.ctx, std::move(out), "slice", [ai, offset](GradContext& c, std::uint32_t self) {
    const Tensor& g = c.grad(Var{&c, self});
    Tensor& ga = c.grad_slot(ai);
    for (std::size_t i = 0; i < g.size(); ++i) ga[offset + i] += g[i];
  });
}

Var tanh(Var a) {
  const std::uint32_t ai = a.id;
  // Clamped one ulp inside ±1 so outputs stay in the open interval.
  static constexpr double kBound = 1.0 - 0x1p-53;
  return unary(a, "tanh", [](double v) { return std::clamp(std::tanh(v), -kBound, kBound); },
               [ai](GradContext& c, std::uint32_t self) {
                 const Tensor& g = c.grad(Var{&c, self});
                 const Tensor& y = c.value(self);
                 Tensor& ga = c.grad_slot(ai);
                 for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * (1.0 - y[i] * y[i]);
               });
}

Var sigmoid(Var a) {
  const std::uint32_t ai = a.id;
  return unary(a, "sigmoid",
               [](double v) {
                 // Branch keeps exp() from overflowing for large |v|.
                 if (v >= 0) return 1.0 / (1.0 + std::exp(-v));
                 const double e = std::exp(v);
                 return e / (1.0 + e);
               },
               [ai](GradContext& c, std::uint32_t self) {
                 const Tensor& g = c.grad(Var{&c, self});
                 const Tensor& y = c.value(self);
                 Tensor& ga = c.grad_slot(ai);
                 for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * y[i] * (1.0 - y[i]);
               });
}

Var exp(Var a) {
  const std::uint32_t ai = a.id;
  return unary(a, "exp", [](double v) { return std::exp(v); },
               [ai](GradContext& c, std::uint32_t self) {
                 const Tensor& g = c.grad(Var{&c, self});
                 const Tensor& y = c.value(self);
                 Tensor& ga = c.grad_slot(ai);
                 for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * y[i];
               });
}

Var sum(Var a) {
  const Tensor& av = a.value();
  double acc = 0.0;
  for (double v : av.values()) acc += v;
  const std::uint32_t ai = a.id;
  return finish(*a.ctx, Tensor::vector({acc}), "sum", [ai](GradContext& c, std::uint32_t self) {
    const double g = c.grad(Var{&c, self})[0];
    Tensor& ga = c.grad_slot(ai);
    for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += g;
  });
}

Var mse(std::span<const Var> a, std::span<const Var> b) {
  if (a.size() != b.size() || a.empty()) {
    throw DimensionError("mse: sequence lengths " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  }
  GradContext& ctx = *a.front().ctx;
  std::size_t count = 0;
  double acc = 0.0;
  for (std::size_t s = 0; s < a.size(); ++s) {
    require_same_context(a[s], b[s]);
    if (a[s].ctx != &ctx) throw PreconditionError("operands from different traces");
    const Tensor& av = a[s].value();
    const Tensor& bv = b[s].value();
    if (av.shape() != bv.shape()) shape_mismatch("mse", av, bv);
    for (std::size_t i = 0; i < av.size(); ++i) {
      const double d = av[i] - bv[i];
      acc += d * d;
    }
    count += av.size();
  }
  const double n = static_cast<double>(count);
  std::vector<std::uint32_t> ai, bi;
  ai.reserve(a.size());
  bi.reserve(b.size());
  for (std::size_t s = 0; s < a.size(); ++s) {
    ai.push_back(a[s].id);
    bi.push_back(b[s].id);
  }
  return finish(ctx, Tensor::vector({acc / n}), "mse",
                [ai = std::move(ai), bi = std::move(bi), n](GradContext& c, std::uint32_t self) {
                  const double g = c.grad(Var{&c, self})[0] * 2.0 / n;
                  for (std::size_t s = 0; s < ai.size(); ++s) {
                    const Tensor& A = c.value(ai[s]);
                    const Tensor& B = c.value(bi[s]);
                    Tensor& ga = c.grad_slot(ai[s]);
                    for (std::size_t i = 0; i < A.size(); ++i) ga[i] += g * (A[i] - B[i]);
                    Tensor& gb = c.grad_slot(bi[s]);
                    for (std::size_t i = 0; i < A.size(); ++i) gb[i] -= g * (A[i] - B[i]);
                  }
                });
}

Var mse(Var a, Var b) {
  const Var as[1] = {a};
  const Var bs[1] = {b};
  return mse(std::span<const Var>(as), std::span<const Var>(bs));
}

namespace {

void check_kl_inputs(const Tensor& mu, const Tensor& sigma) {
  if (mu.shape() != sigma.shape()) shape_mismatch("gaussian_kl", mu, sigma);
  for (double s : sigma.values()) {
    if (!(s > 0.0)) throw DomainError("gaussian_kl: sigma must be positive, got " + std::to_string(s));
  }
}

double kl_value(const Tensor& mu, const Tensor& sigma) {
  double acc = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double s2 = sigma[i] * sigma[i];
    acc += mu[i] * mu[i] + s2 - 1.0 - std::log(s2);
  }
  return 0.5 * acc;
}

}  // namespace

Var gaussian_kl(Var mu, Var sigma) {
  require_same_context(mu, sigma);
  check_kl_inputs(mu.value(), sigma.value());
  const double v = kl_value(mu.value(), sigma.value());
  const std::uint32_t mi = mu.id, si = sigma.id;
  return finish(*mu.ctx, Tensor::vector({v}), "gaussian_kl",
                [mi, si](GradContext& c, std::uint32_t self) {
                  const double g = c.grad(Var{&c, self})[0];
                  const Tensor& M = c.value(mi);
                  const Tensor& S = c.value(si);
                  Tensor& gm = c.grad_slot(mi);
                  for (std::size_t i = 0; i < M.size(); ++i) gm[i] += g * M[i];
                  Tensor& gs = c.grad_slot(si);
                  for (std::size_t i = 0; i < S.size(); ++i) gs[i] += g * (S[i] - 1.0 / S[i]);
                });
}

Var reparameterize(Var mu, Var sigma, const Tensor& noise) {
  require_same_context(mu, sigma);
  const Tensor& mv = mu.value();
  const Tensor& sv = sigma.value();
  if (mv.shape() != sv.shape()) shape_mismatch("reparameterize", mv, sv);
  if (noise.shape() != mv.shape()) shape_mismatch("reparameterize", mv, noise);
  for (double s : sv.values()) {
    if (!(s > 0.0)) throw DomainError("reparameterize: sigma must be positive");
  }
  Tensor out = mv;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += sv[i] * noise[i];
  const std::uint32_t mi = mu.id, si = sigma.id;
  return finish(*mu.ctx, std::move(out), "reparameterize",
                [mi, si, noise](GradContext& c, std::uint32_t self) {
                  const Tensor& g = c.grad(Var{&c, self});
                  kernels::active().axpy(g.size(), 1.0, g.data(), c.grad_slot(mi).data());
                  Tensor& gs = c.grad_slot(si);
                  for (std::size_t i = 0; i < g.size(); ++i) gs[i] += g[i] * noise[i];
                });
}

double mse(const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape()) shape_mismatch("mse", a, b);
  if (a.empty()) throw DimensionError("mse: empty operands");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc / static_cast<double>(a.size());
}

double gaussian_kl(const Tensor& mu, const Tensor& sigma) {
  check_kl_inputs(mu, sigma);
  return kl_value(mu, sigma);
}

}  // namespace encforge::numerics
