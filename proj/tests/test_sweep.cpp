#include <gtest/gtest.h>

#include <cmath>

#include "encforge/error.hpp"
#include "encforge/model/sweep.hpp"

using namespace encforge;
using namespace encforge::model;

namespace {

ModelParams small_model(Variant v = Variant::Mtg) { return init_params(ModelConfig{v, 6, 3, 12}, 11); }

}  // namespace

TEST(SweepValues, DefaultsGiveTwentyOneValues) {
  const auto v = sweep_values(-1.0, 1.0, 0.1);
  ASSERT_EQ(v.size(), 21u);
  EXPECT_EQ(v.front(), -1.0);
  EXPECT_EQ(v.back(), 1.0);
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(v[i], -1.0 + 0.1 * i, 1e-12);
}

TEST(SweepValues, StepCoveringRangeGivesEndpoints) {
  EXPECT_EQ(sweep_values(-1.0, 1.0, 2.0), (std::vector<double>{-1.0, 1.0}));
  EXPECT_EQ(sweep_values(-1.0, 1.0, 5.0), (std::vector<double>{-1.0, 1.0}));
}

TEST(SweepValues, HiAlwaysLast) {
  const auto v = sweep_values(0.0, 1.0, 0.3);
  ASSERT_EQ(v.size(), 5u);
  EXPECT_NEAR(v[3], 0.9, 1e-12);
  EXPECT_EQ(v.back(), 1.0);
}

TEST(SweepValues, DegenerateRange) { EXPECT_EQ(sweep_values(0.5, 0.5, 0.1), (std::vector<double>{0.5})); }

TEST(SweepValues, RejectsBadStepAndRange) {
  EXPECT_THROW(sweep_values(-1, 1, 0.0), PreconditionError);
  EXPECT_THROW(sweep_values(-1, 1, -0.1), PreconditionError);
  EXPECT_THROW(sweep_values(-1, 1, std::nan("")), PreconditionError);
  EXPECT_THROW(sweep_values(1, -1, 0.1), PreconditionError);
}

TEST(LatentSweep, FramesMatchDirectDecode) {
  const auto p = small_model();
  const auto frames = latent_sweep(p, 1);
  ASSERT_EQ(frames.size(), 21u);
  for (const auto& f : frames) {
    std::vector<double> z(3, 0.0);
    z[1] = f.value;
    const auto direct = decode(p, z, 12);
    ASSERT_EQ(f.encounter.length(), 12u);
    for (std::size_t t = 0; t < 12; ++t) {
      EXPECT_EQ(f.encounter.s1[t].x, direct.s1[t].x);
      EXPECT_EQ(f.encounter.s2[t].y, direct.s2[t].y);
    }
  }
}

TEST(LatentSweep, OutputsStayInsideUnitBox) {
  for (auto v : {Variant::Mtg, Variant::Baseline1}) {
    const auto p = small_model(v);
    SweepOptions o;
    o.lo = -50.0;
    o.hi = 50.0;
    o.step = 10.0;
    for (const auto& f : latent_sweep(p, 0, o))
      for (const auto* s : {&f.encounter.s1, &f.encounter.s2})
        for (const auto& q : *s) {
          EXPECT_LT(std::abs(q.x), 1.0);
          EXPECT_LT(std::abs(q.y), 1.0);
        }
  }
}

TEST(LatentSweep, RespectsBaseZAndLength) {
  const auto p = small_model();
  SweepOptions o;
  o.base_z = Tensor({3}, {0.3, -0.7, 1.2});
  o.length = 5;
  o.lo = 0.0;
  o.hi = 0.0;
  const auto frames = latent_sweep(p, 2, o);
  ASSERT_EQ(frames.size(), 1u);
  const auto direct = decode(p, std::vector<double>{0.3, -0.7, 0.0}, 5);
  ASSERT_EQ(frames[0].encounter.length(), 5u);
  for (std::size_t t = 0; t < 5; ++t) EXPECT_EQ(frames[0].encounter.s1[t].x, direct.s1[t].x);
}

TEST(LatentSweep, Errors) {
  const auto p = small_model();
  EXPECT_THROW(latent_sweep(p, 3), IndexError);
  SweepOptions o;
  o.step = 0.0;
  EXPECT_THROW(latent_sweep(p, 0, o), PreconditionError);
  SweepOptions wrong;
  wrong.base_z = Tensor({2});
  EXPECT_THROW(latent_sweep(p, 0, wrong), DimensionError);
}
