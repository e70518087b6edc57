#include <gtest/gtest.h>

#include <random>

#include "gslocc/cubic.hpp"
#include "gslocc/protocols.hpp"
#include "oracles.hpp"

using namespace gslocc;

TEST(Cubic, DistinctRoots) {
  // (x - 1)(x - 2)(x + 3)
  const auto r = solve_cubic(1.0, 0.0, -7.0, 6.0);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(r[0], -3.0, 1e-12);
  EXPECT_NEAR(r[1], 1.0, 1e-12);
  EXPECT_NEAR(r[2], 2.0, 1e-12);
}

TEST(Cubic, SingleRealRoot) {
  const auto r = solve_cubic(1.0, 0.0, 1.0, -2.0);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0], 1.0, 1e-12);
}

TEST(Cubic, DegeneratesToQuadraticAndLinear) {
  auto r = solve_cubic(0.0, 1.0, -3.0, 2.0);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0], 1.0, 1e-12);
  EXPECT_NEAR(r[1], 2.0, 1e-12);
  r = solve_cubic(0.0, 0.0, 2.0, -1.0);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0], 0.5, 1e-15);
}

TEST(Cubic, RandomRootsRecovered) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int trial = 0; trial < 500; ++trial) {
    double roots[3] = {u(rng), u(rng), u(rng)};
    std::sort(roots, roots + 3);
    if (roots[1] - roots[0] < 1e-2 || roots[2] - roots[1] < 1e-2) continue;
    const double s1 = roots[0] + roots[1] + roots[2];
    const double s2 = roots[0] * roots[1] + roots[0] * roots[2] + roots[1] * roots[2];
    const double s3 = roots[0] * roots[1] * roots[2];
    const auto r = solve_cubic(2.0, -2.0 * s1, 2.0 * s2, -2.0 * s3);
    ASSERT_EQ(r.size(), 3u);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(r[i], roots[i], 1e-8 * (1.0 + std::abs(roots[i])));
  }
}

TEST(Targets, Validate) {
  EXPECT_THROW((TargetRatios{0.0, 1.0}.validate()), std::invalid_argument);
  EXPECT_THROW((TargetRatios{1.0, -2.0}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((TargetRatios{1.0, 2.0}.validate()));
}

TEST(Noise, WorkedPoint) {
  const PlanOutcome out = plan_noise({3, 4.0, 4.0, 1.0, 1.0}, {2.0, 1.0});
  ASSERT_TRUE(std::holds_alternative<NoisePlan>(out));
  const NoisePlan p = std::get<NoisePlan>(out);
  EXPECT_NEAR(p.a_sq, 3.0, 1e-12);
  EXPECT_NEAR(p.v_noise, 2.0, 1e-12);
  const SymmetricState t = apply_protocol({3, 4.0, 4.0, 1.0, 1.0}, p);
  EXPECT_NEAR(t.n / t.m, 2.0, 1e-12);
  EXPECT_NEAR(t.d / t.c, 1.0, 1e-12);
}

TEST(Noise, NegativeNoiseRejected) {
  const PlanOutcome out = plan_noise({3, 4.0, 4.0, 1.0, 1.0}, {1.0, 2.0});
  ASSERT_TRUE(std::holds_alternative<NotTransformable>(out));
  EXPECT_EQ(std::get<NotTransformable>(out).reason, NotTransformableReason::negative_noise);
  EXPECT_EQ(to_string(NotTransformableReason::negative_noise), "negative-noise");
}

TEST(Noise, DegenerateInput) {
  const PlanOutcome out = plan_noise({3, 4.0, 4.0, 0.0, 1.0}, {1.0, 1.0});
  ASSERT_TRUE(std::holds_alternative<NotTransformable>(out));
  EXPECT_EQ(std::get<NotTransformable>(out).reason, NotTransformableReason::degenerate_input);
}

TEST(Noise, MatchesOracleAndHitsTargets) {
  const auto states = sample_physical(4.0, 4.0, 3, 300, 4);
  for (const SymmetricState& s : states) {
    for (Quadrature q : {Quadrature::x, Quadrature::p}) {
      const PlanOutcome out = plan_noise(s, {2.0, 1.0}, q);
      if (const auto* p = std::get_if<NoisePlan>(&out)) {
        const SymmetricState t = apply_protocol(s, *p);
        EXPECT_NEAR(t.n / t.m, 2.0, 1e-9);
        EXPECT_NEAR(t.d / t.c, 1.0, 1e-9);
        EXPECT_GE(p->v_noise, 0.0);
        if (q == Quadrature::x) {
          const oracle::NoiseRef ref = oracle::noise_plan(s.m, s.n, s.c, s.d, 2.0, 1.0);
          EXPECT_NEAR(p->a_sq, ref.a_sq, 1e-9 * (1.0 + std::abs(ref.a_sq)));
          EXPECT_NEAR(p->v_noise, std::max(ref.v_noise, 0.0), 1e-9 * (1.0 + std::abs(ref.v_noise)));
        }
      }
    }
  }
}

TEST(Qnd, ConformingStateNeedsNothing) {
  // n/m = 1 and d/c = 1 already.
  const PlanOutcome out = plan_qnd({3, 4.0, 4.0, 1.0, 1.0}, {1.0, 1.0});
  ASSERT_TRUE(std::holds_alternative<QndPlan>(out));
  EXPECT_NEAR(std::get<QndPlan>(out).g_sq, 0.0, 1e-12);
  EXPECT_NEAR(std::get<QndPlan>(out).a_sq, 1.0, 1e-12);
}

TEST(Qnd, WorkedPoint) {
  const SymmetricState s{3, 4.0, 4.0, 1.0, 1.0};
  const PlanOutcome out = plan_qnd(s, {1.0, 2.0});
  ASSERT_TRUE(std::holds_alternative<QndPlan>(out));
  const QndPlan p = std::get<QndPlan>(out);
  EXPECT_NEAR(p.g_sq, oracle::qnd_u(3, 4.0, 4.0, 1.0, 1.0, 1.0, 2.0), 1e-12);
  EXPECT_NEAR(p.g_sq, 0.25, 1e-12);
  const SymmetricState t = apply_protocol(s, p);
  EXPECT_NEAR(t.n / t.m, 1.0, 1e-12);
  EXPECT_NEAR(t.d / t.c, 2.0, 1e-12);
}

TEST(Qnd, AdmissibleRootMatchesLinearFactor) {
  for (int parties = 2; parties <= 6; ++parties) {
    const auto states = sample_physical(4.0, 4.0, parties, 200, 40 + parties);
    for (const SymmetricState& s : states) {
      const PlanOutcome out = plan_qnd(s, {1.0, 2.0});
      if (const auto* p = std::get_if<QndPlan>(&out)) {
        const double u = oracle::qnd_u(parties, s.m, s.n, s.c, s.d, 1.0, 2.0);
        EXPECT_NEAR(p->g_sq, std::max(u, 0.0), 1e-7 * (1.0 + std::abs(u)));
        const SymmetricState t = apply_protocol(s, *p);
        EXPECT_NEAR(t.n / t.m, 1.0, 1e-8);
        EXPECT_NEAR(t.d / t.c, 2.0, 1e-8);
      }
    }
  }
}

TEST(Qnd, OppositeSignCorrelationsHaveNoPositiveSqueezing) {
  const PlanOutcome out = plan_qnd({3, 4.0, 4.0, 1.0, -1.0}, {1.0, 2.0});
  ASSERT_TRUE(std::holds_alternative<NotTransformable>(out));
  EXPECT_NE(std::get<NotTransformable>(out).reason, NotTransformableReason::degenerate_input);
}

TEST(Full, NoiseAndQndMatchScalarRoute) {
  const SymmetricState s{3, 4.0, 4.0, 1.0, 1.0};
  const ProtocolPlan noise = std::get<NoisePlan>(plan_noise(s, {2.0, 1.0}));
  const ProtocolPlan qnd = std::get<QndPlan>(plan_qnd(s, {1.0, 2.0}));
  for (const ProtocolPlan& plan : {noise, qnd}) {
    const Matrix full = apply_protocol_full(build_cm(s), plan).matrix();
    const Matrix scalar = build_cm(apply_protocol(s, plan)).matrix();
    EXPECT_LT((full - scalar).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Full, UnphysicalInputRejected) {
  const SymmetricState bad{3, 4.0, 4.0, 1.0, 3.0};
  EXPECT_THROW(plan_noise(bad, {1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(plan_qnd(bad, {1.0, 1.0}), std::invalid_argument);
}
