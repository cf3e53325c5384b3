#include <gtest/gtest.h>

#include <map>
#include <random>

#include "envlab/error.hpp"
#include "envlab/metric.hpp"
#include "envlab/sampled_map.hpp"
#include "oracles.hpp"

using namespace envlab;

namespace {

std::vector<MetricSpace> all_spaces() {
  return {MetricSpace::circle(),          MetricSpace::annulus(),
          MetricSpace::torus(),           MetricSpace::circle_stack(6),
          MetricSpace::torus_or_circle(), MetricSpace::shift_pair("1", 8),
          MetricSpace::full_shift(8)};
}

}  // namespace

TEST(Metric, CircleWrapsAround) {
  const auto s = MetricSpace::circle();
  EXPECT_NEAR(s.distance(CirclePoint{0.1}, CirclePoint{0.9}), 0.2, 1e-15);
}

TEST(Metric, SelfDistanceIsZeroEverywhere) {
  std::mt19937_64 rng(1);
  for (const auto& s : all_spaces()) {
    for (int i = 0; i < 50; ++i) {
      const Point x = s.random_point(rng);
      EXPECT_EQ(s.distance(x, x), 0.0) << s.describe();
    }
  }
}

TEST(Metric, ConstantSequencesAreAtDistanceOne) {
  const auto s = MetricSpace::full_shift(8);
  EXPECT_EQ(s.distance(SeqPoint::constant(0), SeqPoint::constant(1)), 1.0);
}

TEST(Metric, SequenceMetricMatchesWindowFormula) {
  const auto s = MetricSpace::full_shift(8);
  std::mt19937_64 rng(2);
  for (int n = 0; n < 200; ++n) {
    const auto a = std::get<SeqPoint>(s.random_point(rng));
    const auto b = std::get<SeqPoint>(s.random_point(rng));
    double expect = 0.0;
    for (int i = -8; i <= 8; ++i) {
      if (a.symbol(i) != b.symbol(i)) expect = std::max(expect, std::ldexp(1.0, -std::abs(i)));
    }
    EXPECT_EQ(s.distance(a, b), expect);
  }
}

TEST(Metric, StackAndTorusMatchOracle) {
  std::mt19937_64 rng(3);
  const auto stack = MetricSpace::circle_stack(6);
  const auto torus = MetricSpace::torus();
  for (int n = 0; n < 500; ++n) {
    const auto p = std::get<StackPoint>(stack.random_point(rng));
    const auto q = std::get<StackPoint>(stack.random_point(rng));
    const double rp = p.outer() ? 2.0 : oracle::ring_radius(p.ring);
    const double rq = q.outer() ? 2.0 : oracle::ring_radius(q.ring);
    EXPECT_NEAR(stack.distance(p, q), std::fabs(rp - rq) + oracle::arc(p.angle, q.angle), 1e-12);
    const auto a = std::get<TorusPoint>(torus.random_point(rng));
    const auto b = std::get<TorusPoint>(torus.random_point(rng));
    EXPECT_NEAR(torus.distance(a, b),
                oracle::arc(a.angle1, b.angle1) + oracle::arc(a.angle2, b.angle2), 1e-12);
  }
}

TEST(Metric, TorusOrCircleSeparatesParts) {
  const auto s = MetricSpace::torus_or_circle();
  EXPECT_EQ(s.distance(TorusOrCirclePoint{Part::torus, 0.0, 0.0},
                       TorusOrCirclePoint{Part::circle, 0.0, 0.0}),
            2.0);
}

TEST(Metric, AnnulusRadiusRoundTrips) {
  for (double r : {1.0, 1.2, 1.5, 1.75, 1.999, 2.0}) {
    EXPECT_NEAR(AnnulusPoint::from_radius(r, 0.0).radius(), r, 1e-12) << r;
  }
  const auto s = MetricSpace::annulus();
  EXPECT_NEAR(s.distance(AnnulusPoint::from_radius(1.2, 0.1), AnnulusPoint::from_radius(1.7, 0.95)),
              0.5 + 0.15, 1e-12);
}

TEST(Metric, MembershipIsChecked) {
  const auto s = MetricSpace::circle();
  EXPECT_THROW((void)s.distance(CirclePoint{0.1}, TorusPoint{0.0, 0.0}), KindError);
  EXPECT_FALSE(MetricSpace::circle_stack(3).contains(StackPoint{5, 0.0}));
  EXPECT_TRUE(MetricSpace::circle_stack(3).contains(StackPoint{StackPoint::kOuterRing, 0.0}));
}

TEST(Metric, AxiomsOnRandomTriples) {
  std::mt19937_64 rng(4);
  for (const auto& s : all_spaces()) {
    for (int n = 0; n < 1000; ++n) {
      const Point x = s.random_point(rng);
      const Point y = s.random_point(rng);
      const Point z = s.random_point(rng);
      const double xy = s.distance(x, y);
      ASSERT_EQ(xy, s.distance(y, x)) << s.describe();
      ASSERT_GE(xy, 0.0);
      ASSERT_LE(s.distance(x, z), xy + s.distance(y, z) + 1e-12) << s.describe();
      ASSERT_LE(xy, s.diameter() + 1e-12);
    }
  }
}

TEST(Metric, CircleBoundAndAngleRange) {
  std::mt19937_64 rng(5);
  const auto s = MetricSpace::circle();
  for (int n = 0; n < 1000; ++n) {
    const auto a = std::get<CirclePoint>(s.random_point(rng));
    const auto b = std::get<CirclePoint>(s.random_point(rng));
    ASSERT_GE(a.angle, 0.0);
    ASSERT_LT(a.angle, 1.0);
    ASSERT_LE(s.distance(a, b), 0.5);
  }
}

TEST(Grid, CircleResolutionFour) {
  const auto g = MetricSpace::circle().sample_grid(4);
  ASSERT_EQ(g.points.size(), 4u);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(std::get<CirclePoint>(g.points[i]).angle, 0.25 * i);
  EXPECT_EQ(g.delta, 0.125);
}

TEST(Grid, StackDepthTwoResolutionFour) {
  const auto g = MetricSpace::circle_stack(2).sample_grid(4);
  ASSERT_EQ(g.points.size(), 16u);
  std::map<double, int> per_radius;
  for (const auto& p : g.points) ++per_radius[std::get<StackPoint>(p).radius()];
  EXPECT_EQ(per_radius, (std::map<double, int>{{1.0, 4}, {1.5, 4}, {1.75, 4}, {2.0, 4}}));
}

TEST(Grid, AnnulusDeltaIsCoveringRadius) {
  const auto s = MetricSpace::annulus();
  for (int n : {4, 8, 16}) {
    const auto g = s.sample_grid(n);
    ASSERT_EQ(g.points.size(), static_cast<std::size_t>(n * n));
    // Brute force over a probe grid five times finer.
    double worst = 0.0;
    const int m = 5 * n;
    for (int i = 0; i <= m; ++i) {
      for (int j = 0; j < m; ++j) {
        const Point probe = AnnulusPoint::from_radius(1.0 + double(i) / m, double(j) / m);
        double best = 1e9;
        for (const auto& q : g.points) best = std::min(best, s.distance(probe, q));
        worst = std::max(worst, best);
      }
    }
    EXPECT_LE(worst, g.delta + 1e-12) << n;
  }
}

TEST(Grid, NeighborsStayInsideTheBall) {
  std::mt19937_64 rng(6);
  for (const auto& s : all_spaces()) {
    for (int n = 0; n < 20; ++n) {
      const Point x = s.random_point(rng);
      for (double delta : {0.1, 0.01}) {
        for (const auto& y : s.neighbors(x, delta)) {
          const double d = s.distance(x, y);
          EXPECT_GT(d, 0.0) << s.describe();
          EXPECT_LT(d, delta) << s.describe();
        }
      }
    }
  }
}

TEST(FunctionMetric, ZeroOnEqualMaps) {
  const auto s = MetricSpace::circle();
  const GridPtr g = make_grid(s.sample_grid(8).points);
  const SampledMap p(g, *g, Provenance::iterate(0));
  EXPECT_EQ(FunctionMetric::uniform(s, g).distance(p, p), 0.0);
}

TEST(FunctionMetric, StackedWeightsHalfTurnOnRingTwo) {
  const auto s = MetricSpace::circle_stack(2);
  const GridPtr g = make_grid(s.sample_grid(4).points);
  std::vector<Point> images = *g;
  for (auto& p : images) {
    auto& q = std::get<StackPoint>(p);
    if (q.ring == 2) q.angle = oracle::frac(q.angle + 0.5);
  }
  const SampledMap id(g, *g, Provenance::iterate(0));
  const SampledMap half(g, images, Provenance::symbolic("half"));
  const auto fm = FunctionMetric::stacked(s, g);
  EXPECT_NEAR(fm.distance(id, half), 0.125, 1e-15);
  EXPECT_EQ(fm.distance(id, half), fm.distance(half, id));
}

TEST(FunctionMetric, AxiomsOnRandomMaps) {
  std::mt19937_64 rng(7);
  const auto s = MetricSpace::torus();
  const GridPtr g = make_grid(s.sample_grid(4).points);
  const auto fm = FunctionMetric::uniform(s, g);
  auto random_map = [&] {
    std::vector<Point> im;
    for (std::size_t i = 0; i < g->size(); ++i) im.push_back(s.random_point(rng));
    return SampledMap(g, im, Provenance::symbolic("r"));
  };
  for (int n = 0; n < 1000; ++n) {
    const auto p = random_map();
    const auto q = random_map();
    const auto r = random_map();
    ASSERT_EQ(fm.distance(p, q), fm.distance(q, p));
    ASSERT_LE(fm.distance(p, r), fm.distance(p, q) + fm.distance(q, r) + 1e-12);
    ASSERT_EQ(fm.distance(p, p), 0.0);
  }
}

TEST(FunctionMetric, CappedDistanceIsExactBelowCap) {
  std::mt19937_64 rng(8);
  const auto s = MetricSpace::circle();
  const GridPtr g = make_grid(s.sample_grid(16).points);
  const auto fm = FunctionMetric::uniform(s, g);
  std::vector<Point> a, b;
  for (std::size_t i = 0; i < g->size(); ++i) {
    a.push_back(s.random_point(rng));
    b.push_back(s.random_point(rng));
  }
  const SampledMap p(g, a, Provenance::symbolic("a"));
  const SampledMap q(g, b, Provenance::symbolic("b"));
  const double d = fm.distance(p, q);
  EXPECT_EQ(fm.distance_capped(p, q, d + 1.0), d);
  EXPECT_GE(fm.distance_capped(p, q, d / 2), d / 2);
}

TEST(FunctionMetric, RejectsForeignGrid) {
  const auto s = MetricSpace::circle();
  const GridPtr g1 = make_grid(s.sample_grid(4).points);
  const GridPtr g2 = make_grid(s.sample_grid(8).points);
  const SampledMap p(g2, *g2, Provenance::iterate(0));
  EXPECT_THROW((void)FunctionMetric::uniform(s, g1).distance(p, p), GridMismatch);
}
