#include "encforge/model/model.hpp"

#include <string>

#include "encforge/error.hpp"
#include "encforge/recurrent/gru.hpp"

namespace encforge::model {

using recurrent::GruParams;

const char* to_string(Variant v) { return v == Variant::Mtg ? "mtg" : "baseline1"; }

Variant parse_variant(const std::string& name) {
  if (name == "mtg") return Variant::Mtg;
  if (name == "baseline1") return Variant::Baseline1;
  throw ConfigError("unknown model variant '" + name + "' (expected mtg or baseline1)");
}

ModelParams init_params(const ModelConfig& config, std::uint64_t seed) {
  if (config.hidden < 1 || config.latent < 1) {
    throw ConfigError("hidden and latent widths must be >= 1");
  }
  if (config.length < 1) throw ConfigError("sequence length must be >= 1");
  numerics::Rng rng(seed);
  ModelParams p;
  p.config = config;
  auto& s = p.store;
  const std::size_t H = config.hidden;
  const std::size_t K = config.latent;
  auto matrix = [&](const std::string& name, std::size_t rows, std::size_t cols) {
    s.add(name, numerics::glorot_uniform(rows, cols, rng));
  };
  auto zeros = [&](const std::string& name, std::size_t n) { s.add(name, Tensor({n})); };

  if (config.variant == Variant::Mtg) {
    recurrent::add_gru_params(s, "enc_fwd", {kInputWidth, H}, rng);
    recurrent::add_gru_params(s, "enc_bwd", {kInputWidth, H}, rng);
    matrix("head.W_mu", K, 2 * H);
    zeros("head.b_mu", K);
    matrix("head.W_sigma", K, 2 * H);
    zeros("head.b_sigma", K);
    for (const char* branch : {"dec1", "dec2"}) {
      const std::string b = branch;
      matrix(b + ".init.W", H, K);
      zeros(b + ".init.b", H);
      recurrent::add_gru_params(s, b, {2, H}, rng);
      matrix(b + ".out.W", 2, H);
      zeros(b + ".out.b", 2);
      zeros(b + ".start", 2);
    }
  } else {
    recurrent::add_gru_params(s, "enc", {kInputWidth, H}, rng);
    matrix("head.W_mu", K, H);
    zeros("head.b_mu", K);
    matrix("head.W_sigma", K, H);
    zeros("head.b_sigma", K);
    matrix("dec.init.W", H, K);
    zeros("dec.init.b", H);
    recurrent::add_gru_params(s, "dec", {kInputWidth, H}, rng);
    matrix("dec.out.W", kInputWidth, H);
    zeros("dec.out.b", kInputWidth);
    zeros("dec.start", kInputWidth);
  }
  return p;
}

namespace {

std::vector<Var> input_sequence(GradContext& ctx, const Encounter& enc) {
  std::vector<Var> seq;
  seq.reserve(enc.length());
  for (std::size_t t = 0; t < enc.length(); ++t) {
    seq.push_back(ctx.constant(
        Tensor::vector({enc.s1[t].x, enc.s1[t].y, enc.s2[t].x, enc.s2[t].y})));
  }
  return seq;
}

Var point_var(GradContext& ctx, const data::Point& p) { return ctx.constant(Tensor::vector({p.x, p.y})); }

void require_variant(const ModelParams& p, Variant v) {
  if (p.config.variant != v) {
    throw PreconditionError(std::string("model variant is ") + to_string(p.config.variant) +
                            ", expected " + to_string(v));
  }
}

}  // namespace

EncoderHeads encode_graph(GradContext& ctx, const ModelParams& p, const Encounter& enc) {
  enc.validate();
  enc.require_unit_box();
  const auto& s = p.store;
  const std::vector<Var> seq = input_sequence(ctx, enc);
  Var h_enc;
  if (p.config.variant == Variant::Mtg) {
    const GruParams fwd = GruParams::bind(ctx, s, "enc_fwd");
    const GruParams bwd = GruParams::bind(ctx, s, "enc_bwd");
    h_enc = recurrent::run_bigru(seq, fwd, bwd);
  } else {
    const GruParams g = GruParams::bind(ctx, s, "enc");
    h_enc = recurrent::run_gru(seq, ctx.constant(Tensor({p.config.hidden})), g).final;
  }
  Var mu = linear(ctx.param(s, "head.W_mu"), h_enc, ctx.param(s, "head.b_mu"));
  Var log_var = linear(ctx.param(s, "head.W_sigma"), h_enc, ctx.param(s, "head.b_sigma"));
  Var sigma = numerics::exp(scale(log_var, 0.5));
  return {mu, sigma};
}

DecodedSequences decode_graph(GradContext& ctx, const ModelParams& p, Var z, std::size_t length,
                              const Encounter* teacher) {
  if (length < 1) throw PreconditionError("decode: sequence length must be >= 1");
  if (z.size() != p.config.latent) {
    throw DimensionError("decode: z has " + std::to_string(z.size()) + " codes, model expects " +
                         std::to_string(p.config.latent));
  }
  if (teacher != nullptr) {
    teacher->validate();
    if (teacher->length() != length) {
      throw DimensionError("decode: teacher length " + std::to_string(teacher->length()) +
                           " differs from requested length " + std::to_string(length));
    }
  }
  const auto& s = p.store;
  DecodedSequences out;
  out.s1.reserve(length);
  out.s2.reserve(length);

  if (p.config.variant == Variant::Mtg) {
    const GruParams g1 = GruParams::bind(ctx, s, "dec1");
    const GruParams g2 = GruParams::bind(ctx, s, "dec2");
    const Var out_w1 = ctx.param(s, "dec1.out.W"), out_b1 = ctx.param(s, "dec1.out.b");
    const Var out_w2 = ctx.param(s, "dec2.out.W"), out_b2 = ctx.param(s, "dec2.out.b");
    Var h1 = linear(ctx.param(s, "dec1.init.W"), z, ctx.param(s, "dec1.init.b"));
    Var h2 = linear(ctx.param(s, "dec2.init.W"), z, ctx.param(s, "dec2.init.b"));
    Var in1 = ctx.param(s, "dec1.start");
    Var in2 = ctx.param(s, "dec2.start");
    for (std::size_t t = 0; t < length; ++t) {
      // Each branch steps from the other branch's previous hidden state.
      Var next1 = recurrent::gru_cell(in1, h2, g1);
      Var next2 = recurrent::gru_cell(in2, h1, g2);
      h1 = next1;
      h2 = next2;
      Var p1 = numerics::tanh(linear(out_w1, h1, out_b1));
      Var p2 = numerics::tanh(linear(out_w2, h2, out_b2));
      out.s1.push_back(p1);
      out.s2.push_back(p2);
      if (teacher != nullptr) {
        in1 = point_var(ctx, teacher->s1[t]);
        in2 = point_var(ctx, teacher->s2[t]);
      } else {
        in1 = p1;
        in2 = p2;
      }
    }
  } else {
    const GruParams g = GruParams::bind(ctx, s, "dec");
    const Var out_w = ctx.param(s, "dec.out.W"), out_b = ctx.param(s, "dec.out.b");
    Var h = linear(ctx.param(s, "dec.init.W"), z, ctx.param(s, "dec.init.b"));
    Var in = ctx.param(s, "dec.start");
    for (std::size_t t = 0; t < length; ++t) {
      h = recurrent::gru_cell(in, h, g);
      Var joint = numerics::tanh(linear(out_w, h, out_b));
      out.s1.push_back(slice(joint, 0, 2));
      out.s2.push_back(slice(joint, 2, 2));
      if (teacher != nullptr) {
        const auto& a = teacher->s1[t];
        const auto& b = teacher->s2[t];
        in = ctx.constant(Tensor::vector({a.x, a.y, b.x, b.y}));
      } else {
        in = joint;
      }
    }
  }
  return out;
}

LossVars loss_graph(GradContext& ctx, const Encounter& target, const DecodedSequences& recon,
                    Var mu, Var sigma, double beta) {
  target.validate();
  if (recon.s1.size() != target.length() || recon.s2.size() != target.length()) {
    throw DimensionError("loss: reconstruction length " + std::to_string(recon.s1.size()) +
                         " differs from target length " + std::to_string(target.length()));
  }
  std::vector<Var> t1, t2;
  t1.reserve(target.length());
  t2.reserve(target.length());
  for (std::size_t t = 0; t < target.length(); ++t) {
    t1.push_back(point_var(ctx, target.s1[t]));
    t2.push_back(point_var(ctx, target.s2[t]));
  }
  Var recon_term = add(numerics::mse(recon.s1, t1), numerics::mse(recon.s2, t2));
  Var kl = numerics::gaussian_kl(mu, sigma);
  Var total = add(recon_term, scale(kl, beta));
  return {total, recon_term, kl};
}

LossVars example_loss(GradContext& ctx, const ModelParams& p, const Encounter& enc, double beta,
                      const Tensor* noise, bool teacher_forcing) {
  const EncoderHeads heads = encode_graph(ctx, p, enc);
  Var z = noise != nullptr ? numerics::reparameterize(heads.mu, heads.sigma, *noise) : heads.mu;
  const DecodedSequences recon =
      decode_graph(ctx, p, z, enc.length(), teacher_forcing ? &enc : nullptr);
  return loss_graph(ctx, enc, recon, heads.mu, heads.sigma, beta);
}

Tensor reparameterize(const Tensor& mu, const Tensor& sigma, const Tensor& noise) {
  GradContext ctx(false);
  return numerics::reparameterize(ctx.constant(mu), ctx.constant(sigma), noise).value();
}

LatentCode encode(const ModelParams& p, const Encounter& enc, const Tensor* noise) {
  GradContext ctx(false);
  const EncoderHeads heads = encode_graph(ctx, p, enc);
  LatentCode code;
  code.mu = heads.mu.value();
  code.sigma = heads.sigma.value();
  code.z = noise != nullptr ? reparameterize(code.mu, code.sigma, *noise) : code.mu;
  return code;
}

LatentCode encode(const ModelParams& p, const Encounter& enc, numerics::Rng& rng) {
  const Tensor noise = numerics::standard_normal(p.config.latent, rng);
  return encode(p, enc, &noise);
}

Encounter decode(const ModelParams& p, std::span<const double> z, std::size_t length) {
  GradContext ctx(false);
  const DecodedSequences seqs = decode_graph(ctx, p, ctx.constant(Tensor::vector(z)), length);
  Encounter out;
  out.id = "decoded";
  out.normalized = true;
  out.s1.reserve(length);
  out.s2.reserve(length);
  for (std::size_t t = 0; t < length; ++t) {
    const Tensor& a = seqs.s1[t].value();
    const Tensor& b = seqs.s2[t].value();
    out.s1.push_back({a[0], a[1]});
    out.s2.push_back({b[0], b[1]});
  }
  return out;
}

LatentCode encode_mtg(const ModelParams& p, const Encounter& enc, const Tensor* noise) {
  require_variant(p, Variant::Mtg);
  return encode(p, enc, noise);
}

Encounter decode_mtg(const ModelParams& p, std::span<const double> z, std::size_t length) {
  require_variant(p, Variant::Mtg);
  return decode(p, z, length);
}

LatentCode encode_baseline(const ModelParams& p, const Encounter& enc, const Tensor* noise) {
  require_variant(p, Variant::Baseline1);
  return encode(p, enc, noise);
}

Encounter decode_baseline(const ModelParams& p, std::span<const double> z, std::size_t length) {
  require_variant(p, Variant::Baseline1);
  return decode(p, z, length);
}

LossValues loss(const Encounter& target, const Encounter& recon, const Tensor& mu,
                const Tensor& sigma, double beta) {
  target.validate();
  recon.validate();
  if (target.length() != recon.length()) {
    throw DimensionError("loss: target length " + std::to_string(target.length()) +
                         " vs reconstruction length " + std::to_string(recon.length()));
  }
  auto flatten = [](const data::Trajectory& s) {
    std::vector<double> v;
    v.reserve(2 * s.size());
    for (const auto& pt : s) {
      v.push_back(pt.x);
      v.push_back(pt.y);
    }
    const std::size_t n = v.size();
    return Tensor({n}, std::move(v));
  };
  LossValues out;
  out.recon = numerics::mse(flatten(target.s1), flatten(recon.s1)) +
              numerics::mse(flatten(target.s2), flatten(recon.s2));
  out.kl = numerics::gaussian_kl(mu, sigma);
  out.total = out.recon + beta * out.kl;
  return out;
}

}  // namespace encforge::model
