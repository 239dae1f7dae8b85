#include <gtest/gtest.h>

#include <cmath>

#include "encforge/error.hpp"
#include "encforge/model/train.hpp"
#include "test_util.hpp"

using namespace encforge;
using namespace encforge::model;
using encforge::testing::wavy_encounter;

namespace {

std::vector<data::Encounter> tiny_dataset(std::size_t T = 8) {
  std::vector<data::Encounter> ds;
  for (int i = 0; i < 4; ++i) ds.push_back(wavy_encounter(T, 0.7 * i));
  return ds;
}

TrainConfig tiny_config(Variant v = Variant::Mtg) {
  TrainConfig c;
  c.variant = v;
  c.hidden = 6;
  c.latent = 3;
  c.epochs = 40;
  c.batch_size = 3;
  c.learning_rate = 5e-3;
  c.seed = 17;
  return c;
}

}  // namespace

TEST(Train, HistoryAndDecrease) {
  for (Variant v : {Variant::Mtg, Variant::Baseline1}) {
    std::size_t calls = 0;
    const auto r = train(tiny_dataset(), tiny_config(v), [&](const EpochStats& s) {
      ++calls;
      EXPECT_EQ(s.epoch, calls);
    });
    ASSERT_EQ(r.history.size(), 40u);
    EXPECT_EQ(calls, 40u);
    for (const auto& h : r.history) {
      EXPECT_TRUE(std::isfinite(h.total));
      EXPECT_GE(h.recon, 0.0);
      EXPECT_GE(h.kl, 0.0);
      EXPECT_NEAR(h.total, h.recon + h.kl, 1e-12);
    }
    EXPECT_LT(r.history.back().total, r.history.front().total);
    EXPECT_EQ(r.params.config.length, 8u);
    EXPECT_EQ(r.params.config.variant, v);
  }
}

TEST(Train, DeterministicUnderSeed) {
  const auto a = train(tiny_dataset(), tiny_config());
  const auto b = train(tiny_dataset(), tiny_config());
  EXPECT_TRUE(a.params.store.same_values(b.params.store));
  auto other = tiny_config();
  other.seed = 18;
  const auto c = train(tiny_dataset(), other);
  EXPECT_FALSE(a.params.store.same_values(c.params.store));
}

TEST(Train, ZeroEpochsReturnsInitialization) {
  auto cfg = tiny_config();
  cfg.epochs = 0;
  const auto r = train(tiny_dataset(), cfg);
  EXPECT_TRUE(r.history.empty());
}

TEST(Train, Preconditions) {
  EXPECT_THROW(train({}, tiny_config()), PreconditionError);

  auto mixed = tiny_dataset();
  mixed.push_back(wavy_encounter(9));
  EXPECT_THROW(train(mixed, tiny_config()), PreconditionError);

  auto raw = tiny_dataset();
  raw[1].s1[2].x = 4.0;
  EXPECT_THROW(train(raw, tiny_config()), PreconditionError);

  auto cfg = tiny_config();
  cfg.batch_size = 0;
  EXPECT_THROW(train(tiny_dataset(), cfg), ConfigError);
  cfg = tiny_config();
  cfg.beta = -1.0;
  EXPECT_THROW(train(tiny_dataset(), cfg), ConfigError);
}

TEST(Train, EvaluateUsesEncoderMean) {
  const auto r = train(tiny_dataset(), tiny_config());
  const LossValues a = evaluate(r.params, tiny_dataset(), 1.0, true);
  const LossValues b = evaluate(r.params, tiny_dataset(), 1.0, true);
  EXPECT_EQ(a.total, b.total);
  EXPECT_NEAR(a.total, a.recon + a.kl, 1e-12);
  const LossValues free = evaluate(r.params, tiny_dataset(), 0.0, false);
  EXPECT_EQ(free.total, free.recon);
}
