#include <gtest/gtest.h>

#include <random>

#include "envlab/error.hpp"
#include "envlab/flow.hpp"
#include "oracles.hpp"

using namespace envlab;

namespace {

FlowSystem flow(FlowKind kind, FlowParams p = {}) { return make_flow({kind, p}); }

std::vector<FlowSystem> all_flows() {
  FlowParams stack;
  stack.depth = 6;
  return {flow(FlowKind::circle_stack, stack), flow(FlowKind::annulus),
          flow(FlowKind::torus_circle),        flow(FlowKind::shift_pair),
          flow(FlowKind::full_shift),          flow(FlowKind::rotation),
          flow(FlowKind::identity)};
}

}  // namespace

TEST(Flow, StackOddIteratesHalfTurnOnRingOne) {
  const auto f = flow(FlowKind::circle_stack);
  const auto p = std::get<StackPoint>(f.apply(1, StackPoint{1, 0.0}));
  EXPECT_EQ(p.ring, 1);
  EXPECT_EQ(p.angle, 0.5);
}

TEST(Flow, AnnulusOuterCircleOnlyRotates) {
  const auto f = flow(FlowKind::annulus);
  const auto p = std::get<AnnulusPoint>(f.apply(1, AnnulusPoint::from_radius(2.0, 0.1)));
  EXPECT_EQ(p.radius(), 2.0);
  EXPECT_NEAR(p.angle, oracle::frac(0.1L + kGolden), 1e-15);
}

TEST(Flow, AnnulusRadiusSquaresPerStep) {
  const auto f = flow(FlowKind::annulus);
  const auto p = std::get<AnnulusPoint>(f.apply(3, AnnulusPoint::from_radius(1.5, 0.0)));
  EXPECT_NEAR(p.radius(), 1.00390625, 1e-12);
  // Radius oracle: iterate r -> 1 + (r - 1)^2 by hand.
  double r = 1.3;
  for (int n = 1; n <= 5; ++n) {
    r = 1.0 + (r - 1.0) * (r - 1.0);
    const auto q = std::get<AnnulusPoint>(f.apply(n, AnnulusPoint::from_radius(1.3, 0.0)));
    EXPECT_NEAR(q.radius(), r, 1e-12) << n;
  }
}

TEST(Flow, TorusSkewProduct) {
  const auto f = flow(FlowKind::torus_circle);
  const auto p =
      std::get<TorusOrCirclePoint>(f.apply(1, TorusOrCirclePoint{Part::torus, 0.2, 0.7}));
  EXPECT_NEAR(p.angle1, oracle::frac(0.2L + kSilver), 1e-15);
  EXPECT_NEAR(p.angle2, oracle::frac(0.9L), 1e-15);
  const auto c =
      std::get<TorusOrCirclePoint>(f.apply(1, TorusOrCirclePoint{Part::circle, 0.2, 0.0}));
  EXPECT_EQ(c.part, Part::circle);
  EXPECT_NEAR(c.angle1, oracle::frac(0.2L + kGolden), 1e-15);
}

TEST(Flow, IdentityOrbitIsConstant) {
  const auto f = flow(FlowKind::identity);
  for (const auto& s : orbit(f, CirclePoint{0.3}, 20, Direction::both)) {
    EXPECT_EQ(std::get<CirclePoint>(s.point).angle, 0.3);
  }
}

TEST(Flow, RotationOrbitMatchesRepeatedAddition) {
  const auto f = flow(FlowKind::rotation);
  const auto orb = orbit(f, CirclePoint{0.0}, 1000, Direction::forward);
  ASSERT_EQ(orb.size(), 1001u);
  for (const auto& s : orb) {
    EXPECT_NEAR(oracle::arc(std::get<CirclePoint>(s.point).angle,
                            oracle::rotate(0.0, s.t, kGolden)),
                0.0, 1e-12);
  }
}

TEST(Flow, ShiftMovesTheSingleOne) {
  const auto f = flow(FlowKind::shift_pair);
  const Point x = SeqPoint::with_block(0, "1");
  for (std::int64_t t = -5; t <= 5; ++t) {
    const auto s = std::get<SeqPoint>(f.apply(t, x));
    for (std::int64_t i = -12; i <= 12; ++i) EXPECT_EQ(s.symbol(i), i == -t ? 1 : 0);
  }
}

TEST(Flow, OrbitDirectionsAndLengths) {
  const auto f = flow(FlowKind::rotation);
  EXPECT_EQ(orbit(f, CirclePoint{0.0}, 10, Direction::both).size(), 21u);
  const auto back = orbit(f, CirclePoint{0.0}, 10, Direction::backward);
  EXPECT_EQ(back.front().t, -10);
  EXPECT_EQ(back.back().t, 0);
}

TEST(Flow, ActionLawAndInvertibility) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> pick(-50, 50);
  for (const auto& f : all_flows()) {
    for (int n = 0; n < 1000; ++n) {
      const Point x = f.space().random_point(rng);
      const auto s = pick(rng);
      const auto t = pick(rng);
      ASSERT_LE(f.distance(f.apply(s + t, x), f.apply(s, f.apply(t, x))), 1e-9) << f.name();
      ASSERT_LE(f.distance(f.apply(-t, f.apply(t, x)), x), 1e-9) << f.name();
    }
  }
}

TEST(Flow, RotationAndRingsAreIsometries) {
  std::mt19937_64 rng(12);
  const auto rot = flow(FlowKind::rotation);
  FlowParams p;
  p.depth = 6;
  const auto stack = flow(FlowKind::circle_stack, p);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int n = 0; n < 500; ++n) {
    const Point x = rot.space().random_point(rng);
    const Point y = rot.space().random_point(rng);
    const std::int64_t t = n * 37 - 9000;
    EXPECT_NEAR(rot.distance(rot.apply(t, x), rot.apply(t, y)), rot.distance(x, y), 1e-12);
    const int ring = n % 7;
    const Point a = StackPoint{ring, unit(rng)};
    const Point b = StackPoint{ring, unit(rng)};
    EXPECT_NEAR(stack.distance(stack.apply(t, a), stack.apply(t, b)), stack.distance(a, b),
                1e-12);
  }
}

TEST(Flow, AnnulusRadiiMoveMonotonically) {
  const auto f = flow(FlowKind::annulus);
  for (double r0 : {1.1, 1.5, 1.9}) {
    double prev = r0;
    for (int n = 1; n <= 8; ++n) {
      const double r = std::get<AnnulusPoint>(f.apply(n, AnnulusPoint::from_radius(r0, 0))).radius();
      EXPECT_LE(r, prev);
      prev = r;
    }
    prev = r0;
    for (int n = 1; n <= 8; ++n) {
      const double r = std::get<AnnulusPoint>(f.apply(-n, AnnulusPoint::from_radius(r0, 0))).radius();
      EXPECT_GE(r, prev);
      prev = r;
    }
  }
}

TEST(Flow, InvalidParametersAreConfigErrors) {
  FlowParams p;
  p.alpha = 1.5;
  EXPECT_THROW(flow(FlowKind::rotation, p), ConfigError);
  p = {};
  p.alpha = 0.5;  // rational
  EXPECT_THROW(flow(FlowKind::rotation, p), ConfigError);
  p = {};
  p.depth = 0;
  EXPECT_THROW(flow(FlowKind::circle_stack, p), ConfigError);
  p = {};
  p.block = "";
  EXPECT_THROW(flow(FlowKind::shift_pair, p), ConfigError);
  p = {};
  p.block = "101";
  p.window = 2;
  EXPECT_THROW(flow(FlowKind::shift_pair, p), ConfigError);
  EXPECT_THROW(flow_kind_from_string("hyperbolic"), ConfigError);
}

TEST(Flow, HorizonCapIsEnforced) {
  FlowParams p;
  p.horizon_cap = 100;
  const auto f = flow(FlowKind::rotation, p);
  EXPECT_NO_THROW(f.apply(100, CirclePoint{0.0}));
  EXPECT_THROW(f.apply(101, CirclePoint{0.0}), ConfigError);
}

TEST(Flow, ForeignPointsAreRejected) {
  EXPECT_THROW(flow(FlowKind::rotation).apply(1, TorusPoint{0, 0}), KindError);
}

TEST(TurnFraction, AgreesWithLongDoubleForModerateN) {
  for (std::int64_t n : {0LL, 1LL, -1LL, 7LL, -7LL, 1000LL, 123456LL, -987654LL}) {
    const long double x = static_cast<long double>(n) * static_cast<long double>(kGolden);
    EXPECT_NEAR(oracle::arc(turn_fraction(n, kGolden), oracle::frac(x)), 0.0, 1e-12) << n;
  }
}

TEST(TurnFraction, StaysAccurateForHugeN) {
  // frac(n a) + frac(m a) = frac((n + m) a) mod 1 at any size.
  const std::int64_t n = 1LL << 50;
  const std::int64_t m = 3;
  const double lhs = oracle::frac(static_cast<long double>(turn_fraction(n, kGolden)) +
                                  turn_fraction(m, kGolden));
  EXPECT_NEAR(oracle::arc(lhs, turn_fraction(n + m, kGolden)), 0.0, 1e-9);
  const double r = turn_fraction(n, kGolden);
  EXPECT_GE(r, 0.0);
  EXPECT_LT(r, 1.0);
}
