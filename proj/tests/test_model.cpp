#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "encforge/error.hpp"
#include "encforge/numerics/grad_check.hpp"
#include "encforge/model/model.hpp"
#include "test_util.hpp"

using namespace encforge;
using namespace encforge::model;
using encforge::testing::wavy_encounter;

namespace {

ModelConfig small(Variant v) { return ModelConfig{v, 6, 3, 8}; }

std::vector<double> random_z(std::size_t K, std::mt19937_64& rng, double sd = 1.0) {
  std::normal_distribution<double> n(0.0, sd);
  std::vector<double> z(K);
  for (auto& v : z) v = n(rng);
  return z;
}

void expect_strictly_inside(const data::Encounter& e) {
  for (const auto* s : {&e.s1, &e.s2})
    for (const auto& p : *s) {
      EXPECT_LT(std::abs(p.x), 1.0);
      EXPECT_LT(std::abs(p.y), 1.0);
    }
}

}  // namespace

TEST(Model, VariantNames) {
  EXPECT_EQ(parse_variant("mtg"), Variant::Mtg);
  EXPECT_EQ(parse_variant("baseline1"), Variant::Baseline1);
  EXPECT_THROW(parse_variant("infogan"), ConfigError);
  EXPECT_STREQ(to_string(Variant::Baseline1), "baseline1");
}

TEST(Model, MtgParameterShapes) {
  const ModelParams p = init_params({Variant::Mtg, 5, 3, 8}, 1);
  const auto& s = p.store;
  EXPECT_EQ(s.value("enc_fwd.W_z").shape(), (numerics::Shape{5, 4}));
  EXPECT_EQ(s.value("enc_bwd.U_h").shape(), (numerics::Shape{5, 5}));
  EXPECT_EQ(s.value("head.W_mu").shape(), (numerics::Shape{3, 10}));
  EXPECT_EQ(s.value("head.W_sigma").shape(), (numerics::Shape{3, 10}));
  for (const char* b : {"dec1", "dec2"}) {
    const std::string br = b;
    EXPECT_EQ(s.value(br + ".init.W").shape(), (numerics::Shape{5, 3}));
    EXPECT_EQ(s.value(br + ".W_r").shape(), (numerics::Shape{5, 2}));
    EXPECT_EQ(s.value(br + ".out.W").shape(), (numerics::Shape{2, 5}));
    EXPECT_EQ(s.value(br + ".start"), numerics::Tensor({2}));
  }
  EXPECT_FALSE(s.contains("dec.start"));
}

TEST(Model, BaselineParameterShapes) {
  const ModelParams p = init_params({Variant::Baseline1, 5, 3, 8}, 1);
  const auto& s = p.store;
  EXPECT_EQ(s.value("enc.W_z").shape(), (numerics::Shape{5, 4}));
  EXPECT_EQ(s.value("head.W_mu").shape(), (numerics::Shape{3, 5}));
  EXPECT_EQ(s.value("dec.W_z").shape(), (numerics::Shape{5, 4}));
  EXPECT_EQ(s.value("dec.out.W").shape(), (numerics::Shape{4, 5}));
  EXPECT_EQ(s.value("dec.start"), numerics::Tensor({4}));
  EXPECT_FALSE(s.contains("enc_bwd.W_z"));
}

TEST(Model, InitIsSeeded) {
  const auto a = init_params(small(Variant::Mtg), 9);
  const auto b = init_params(small(Variant::Mtg), 9);
  const auto c = init_params(small(Variant::Mtg), 10);
  EXPECT_TRUE(a.store.same_values(b.store));
  EXPECT_FALSE(a.store.same_values(c.store));
}

TEST(Model, DecodeRangeShapeAndDeterminism) {
  std::mt19937_64 rng(2);
  for (Variant v : {Variant::Mtg, Variant::Baseline1}) {
    const auto p = init_params(small(v), 3);
    for (int trial = 0; trial < 5; ++trial) {
      const auto z = random_z(3, rng, 3.0);
      const auto e = decode(p, z, 12);
      ASSERT_EQ(e.s1.size(), 12u);
      ASSERT_EQ(e.s2.size(), 12u);
      EXPECT_TRUE(e.normalized);
      expect_strictly_inside(e);
      const auto again = decode(p, z, 12);
      EXPECT_EQ(e.s1, again.s1);
      EXPECT_EQ(e.s2, again.s2);
    }
  }
}

TEST(Model, SaturatedHeadStaysInsideOpenInterval) {
  auto p = init_params(small(Variant::Mtg), 4);
  p.store.value("dec1.out.b").fill(500.0);
  p.store.value("dec2.out.b").fill(-500.0);
  const auto e = decode(p, std::vector<double>(3, 0.0), 5);
  expect_strictly_inside(e);
  EXPECT_GT(e.s1[0].x, 0.999);
}

TEST(Model, DecodeErrors) {
  const auto p = init_params(small(Variant::Mtg), 5);
  EXPECT_THROW(decode(p, std::vector<double>(3, 0.0), 0), PreconditionError);
  EXPECT_THROW(decode(p, std::vector<double>(4, 0.0), 5), DimensionError);
  EXPECT_THROW(decode_baseline(p, std::vector<double>(3, 0.0), 5), PreconditionError);
  EXPECT_NO_THROW(decode_mtg(p, std::vector<double>(3, 0.0), 5));
}

TEST(Model, CrossCoupledDecoderBranches) {
  // Perturbing only branch 2's initial state changes branch 1's first point
  // (branch 1 steps from h2) while branch 2's first point is unaffected.
  const auto p = init_params(small(Variant::Mtg), 6);
  auto q = p;
  q.store.value("dec2.init.b").fill(0.3);
  const std::vector<double> z = {0.2, -0.4, 0.1};
  const auto a = decode(p, z, 4);
  const auto b = decode(q, z, 4);
  EXPECT_NE(a.s1[0], b.s1[0]);
  EXPECT_EQ(a.s2[0], b.s2[0]);
  EXPECT_NE(a.s2[1], b.s2[1]);
}

TEST(Model, EncodeContract) {
  for (Variant v : {Variant::Mtg, Variant::Baseline1}) {
    auto p = init_params(small(v), 7);
    const auto enc = wavy_encounter(8);
    const LatentCode c = encode(p, enc);
    EXPECT_EQ(c.z, c.mu);
    for (double s : c.sigma.values()) EXPECT_GT(s, 0.0);

    numerics::Rng r1(4), r2(4);
    EXPECT_EQ(encode(p, enc, r1).z, encode(p, enc, r2).z);

    // σ = exp(½ (W_σ h + b_σ)): shifting b_σ by 2 scales σ by e.
    p.store.value("head.b_sigma").fill(2.0);
    const LatentCode shifted = encode(p, enc);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(shifted.sigma[k], c.sigma[k] * std::exp(1.0), 1e-12);
  }
}

TEST(Model, EncodeRejectsUnnormalizedInput) {
  const auto p = init_params(small(Variant::Mtg), 8);
  auto enc = wavy_encounter(8);
  enc.s2[3].y = 1.5;
  EXPECT_THROW(encode(p, enc), PreconditionError);
  EXPECT_THROW(encode_baseline(p, wavy_encounter(8)), PreconditionError);
}

TEST(Model, Reparameterize) {
  using numerics::Tensor;
  EXPECT_EQ(reparameterize(Tensor::vector({0.2}), Tensor::vector({0.3}), Tensor::vector({0.0}))[0], 0.2);
  EXPECT_NEAR(reparameterize(Tensor::vector({0.2}), Tensor::vector({0.3}), Tensor::vector({1.0}))[0],
              0.5, 1e-15);
  EXPECT_THROW(reparameterize(Tensor::vector({0.2}), Tensor::vector({0.0}), Tensor::vector({1.0})),
               DomainError);

  // Monte-Carlo mean within 3 standard errors.
  numerics::Rng rng(12);
  const double mu = -0.7, sigma = 1.3;
  const std::size_t n = 100000;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Tensor eps = numerics::standard_normal(1, rng);
    sum += reparameterize(Tensor::vector({mu}), Tensor::vector({sigma}), eps)[0];
  }
  EXPECT_NEAR(sum / n, mu, 3.0 * sigma / std::sqrt(static_cast<double>(n)));
}

TEST(Model, LossValueContracts) {
  using numerics::Tensor;
  const auto enc = wavy_encounter(6);
  const Tensor mu0 = Tensor::vector({0.0, 0.0});
  const Tensor one = Tensor::vector({1.0, 1.0});
  EXPECT_EQ(loss(enc, enc, mu0, one, 1.0).total, 0.0);

  auto other = wavy_encounter(6, 0.5);
  const Tensor mu = Tensor::vector({0.3, -0.2});
  const Tensor sg = Tensor::vector({0.8, 1.4});
  const LossValues b0 = loss(enc, other, mu, sg, 0.0);
  const LossValues b1 = loss(enc, other, mu, sg, 1.0);
  const LossValues b2 = loss(enc, other, mu, sg, 2.0);
  EXPECT_EQ(b0.total, b0.recon);
  EXPECT_NEAR(b2.total - b1.total, b1.kl, 1e-15);
  EXPECT_GT(b1.recon, 0.0);

  // Reconstruction term against a plain-loop oracle.
  double r1 = 0.0, r2 = 0.0;
  for (std::size_t t = 0; t < 6; ++t) {
    r1 += std::pow(enc.s1[t].x - other.s1[t].x, 2) + std::pow(enc.s1[t].y - other.s1[t].y, 2);
    r2 += std::pow(enc.s2[t].x - other.s2[t].x, 2) + std::pow(enc.s2[t].y - other.s2[t].y, 2);
  }
  EXPECT_NEAR(b1.recon, r1 / 12.0 + r2 / 12.0, 1e-15);

  EXPECT_THROW(loss(enc, wavy_encounter(5), mu, sg, 1.0), DimensionError);
}

TEST(Model, FullGradientCheck) {
  for (Variant v : {Variant::Mtg, Variant::Baseline1}) {
    for (bool teacher : {true, false}) {
      auto p = init_params({v, 8, 4, 10}, 21);
      // Nonzero biases and start tokens so their gradients are exercised.
      std::mt19937_64 rng(22);
      std::uniform_real_distribution<double> u(-0.3, 0.3);
      for (auto& e : p.store)
        if (e.value.rank() == 1)
          for (auto& x : e.value.values()) x = u(rng);
      const auto enc = wavy_encounter(10);
      const numerics::Tensor noise = numerics::Tensor::vector({0.4, -1.1, 0.7, 0.2});
      numerics::GradCheckOptions opts;
      opts.tol = 1e-4;
      // Step near cbrt(machine epsilon): truncation and roundoff balance for an O(1) loss.
      opts.eps = 1e-5;
      const auto report = numerics::grad_check(
          [&](numerics::GradContext& ctx, const numerics::ParamStore& s) {
            (void)s;  // same store as p.store, perturbed in place
            return example_loss(ctx, p, enc, 1.0, &noise, teacher).total;
          },
          p.store, opts);
      EXPECT_TRUE(report.passed) << to_string(v) << " teacher=" << teacher << " worst "
                                 << report.worst_param << " " << report.max_rel_error;
      EXPECT_EQ(report.checked, p.store.element_count());
    }
  }
}
