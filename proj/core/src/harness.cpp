#include "envlab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <utility>

#include "envlab/detectors.hpp"
#include "envlab/envelope_numeric.hpp"
#include "envlab/envelope_symbolic.hpp"
#include "envlab/error.hpp"
#include "envlab/flow.hpp"

namespace envlab {

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::inconclusive: return "inconclusive";
  }
  return "unknown";
}

std::string_view to_string(Clause::Role r) {
  return r == Clause::Role::hypothesis ? "hypothesis" : "conclusion";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Flows used by the checks

FlowSystem flow_of(FlowKind kind) {
  FlowDescriptor d;
  d.kind = kind;
  return make_flow(d);
}

FlowSystem stack_flow(int depth) {
  FlowDescriptor d;
  d.kind = FlowKind::circle_stack;
  d.params.depth = depth;
  return make_flow(d);
}

FlowSystem shift_flow(FlowKind kind) {
  FlowDescriptor d;
  d.kind = kind;
  d.params.block = "1";
  d.params.window = 8;
  return make_flow(d);
}

GridPtr grid_of(const MetricSpace& space, int resolution) {
  return make_grid(space.sample_grid(resolution).points);
}

std::vector<Point> torus_points(const FlowSystem& tc, int n) {
  std::vector<Point> out;
  for (const auto& p : tc.space().sample_grid(n).points) {
    if (std::get<TorusOrCirclePoint>(p).part == Part::torus) out.push_back(p);
  }
  return out;
}

Clause hyp(Verdict v, Outcome expected = Outcome::holds) {
  return {Clause::Role::hypothesis, std::move(v), expected};
}

Clause con(Verdict v, Outcome expected = Outcome::holds) {
  return {Clause::Role::conclusion, std::move(v), expected};
}

Verdict named(Verdict v, std::string property) {
  v.property = std::move(property);
  return v;
}

/// holds <-> fails; used when a detector certifies the negation.
Verdict negated(Verdict v, std::string property) {
  if (v.outcome == Outcome::holds) {
    v.outcome = Outcome::fails;
  } else if (v.outcome == Outcome::fails) {
    v.outcome = Outcome::holds;
  }
  v.property = std::move(property);
  return v;
}

Verdict all_of(std::string property, const std::vector<Verdict>& parts,
               const std::string& what) {
  for (const auto& p : parts) {
    if (p.outcome == Outcome::inconclusive) {
      return Verdict::inconclusive(std::move(property), p.note);
    }
    if (p.outcome == Outcome::fails) {
      Verdict out = p;
      out.property = std::move(property);
      out.note = "fails at " + p.property + (p.note.empty() ? "" : "; " + p.note);
      return out;
    }
  }
  std::vector<Witness> ws;
  if (!parts.empty() && !parts.front().witnesses.empty()) {
    ws.push_back(parts.front().witnesses.front());
  }
  return Verdict::holds(std::move(property), ws,
                        "holds at all " + std::to_string(parts.size()) + " " +
                            what);
}

// ---------------------------------------------------------------------------
// Detector wrappers

template <DynamicalSystem S, class LowerBound>
Verdict distal_on_pairs(
    const S& sys,
    const std::vector<std::pair<typename S::point_type, typename S::point_type>>&
        pairs,
    std::int64_t horizon, LowerBound lower_bound, int workers,
    std::string property) {
  double worst_ratio = kInf;
  Witness worst;
  for (const auto& [x, y] : pairs) {
    const double bound = lower_bound(x, y);
    if (!(bound > 0)) continue;
    const ReturnSet rs = proximality(sys, x, y, 1e-12, horizon, workers);
    const double ratio = rs.min_value / bound;
    Witness w{{sys.describe(x), sys.describe(y)}, rs.argmin, rs.min_value,
              0.99 * bound, "orbit distance against 0.99 x lower bound"};
    if (ratio < 0.99) {
      return Verdict::fails(std::move(property), {w},
                            "pair comes closer than its lower bound")
          .with("horizon", double(horizon));
    }
    if (ratio < worst_ratio) {
      worst_ratio = ratio;
      worst = w;
    }
  }
  return Verdict::holds(std::move(property), {worst},
                        std::to_string(pairs.size()) +
                            " pairs keep min_{|t|<=H} d(tx, ty) >= 0.99 x "
                            "lower bound")
      .with("horizon", double(horizon))
      .with("worst_ratio", worst_ratio);
}

template <DynamicalSystem S>
Verdict proximal_pair(const S& sys, const typename S::point_type& x,
                      const typename S::point_type& y, double epsilon,
                      std::int64_t horizon, int workers, std::string property) {
  const ReturnSet rs = proximality(sys, x, y, epsilon, horizon, workers);
  Witness w{{sys.describe(x), sys.describe(y)}, rs.argmin, rs.min_value,
            epsilon, {}};
  if (!rs.hits.empty()) {
    w.note = "closest approach";
    return Verdict::holds(std::move(property), {w})
        .with("hits", double(rs.hits.size()))
        .with("horizon", double(horizon));
  }
  w.note = "closest approach over the whole window";
  return Verdict::fails(std::move(property), {w},
                        "exhaustive scan of |t| <= " + std::to_string(horizon) +
                            " never enters the epsilon-entourage")
      .with("min_distance", rs.min_value)
      .with("horizon", double(horizon));
}

template <DynamicalSystem S>
Verdict equicontinuous_at(const S& sys,
                          const std::vector<typename S::point_type>& points,
                          double epsilon, std::int64_t horizon,
                          const std::vector<double>& delta_grid,
                          std::string property) {
  std::vector<Verdict> parts;
  for (const auto& x : points) {
    parts.push_back(equicontinuity_at(sys, x, epsilon, horizon, delta_grid).verdict);
    if (parts.back().outcome != Outcome::holds) break;
  }
  return all_of(std::move(property), parts, "probe points")
      .with("epsilon", epsilon)
      .with("horizon", double(horizon));
}

Verdict rigidity_verdict(Verdict v, std::string property) {
  return named(std::move(v), std::move(property));
}

Verdict isolation_verdict(const SemigroupApprox& approx, double epsilon,
                          std::string property) {
  const IsolationReport r = is_isolated_identity(approx, epsilon);
  Witness w{{"e", "pi^" + std::to_string(r.nearest_time)}, r.nearest_time,
            r.nearest_distance, epsilon, "nearest nonzero iterate to e"};
  Verdict v = r.isolated
                  ? Verdict::holds(std::move(property), {w},
                                   "no scanned iterate enters the ball")
                  : Verdict::fails(std::move(property), {w});
  return v.with("horizon", double(approx.horizon));
}

/// Restricts probes to the ring of the base point: the ring is a closed
/// invariant subflow of the circle stack.
struct RingSubflow {
  using point_type = Point;
  const FlowSystem* flow;

  Point act(std::int64_t t, const Point& x) const { return flow->act(t, x); }
  double distance(const Point& a, const Point& b) const {
    return flow->distance(a, b);
  }
  std::vector<Point> neighbors(const Point& x, double delta) const {
    std::vector<Point> out;
    const int ring = std::get<StackPoint>(x).ring;
    for (auto& y : flow->neighbors(x, delta)) {
      if (std::get<StackPoint>(y).ring == ring) out.push_back(std::move(y));
    }
    return out;
  }
  std::string describe(const Point& x) const { return to_string(x); }
};

double stack_lower_bound(const Point& a, const Point& b) {
  const auto& p = std::get<StackPoint>(a);
  const auto& q = std::get<StackPoint>(b);
  if (p.ring == q.ring) return circle_distance(p.angle, q.angle);
  return std::fabs(p.radius() - q.radius());
}

double torus_circle_lower_bound(const Point& a, const Point& b) {
  const auto& p = std::get<TorusOrCirclePoint>(a);
  const auto& q = std::get<TorusOrCirclePoint>(b);
  if (p.part != q.part) return 2.0;
  const double d1 = circle_distance(p.angle1, q.angle1);
  if (p.part == Part::circle || d1 > 0) return d1;
  return circle_distance(p.angle2, q.angle2);
}

}  // namespace

// ---------------------------------------------------------------------------
// Shared computations

struct TorusData {
  FlowSystem flow;
  Point y;
  Verdict torus_sensitive;
  Verdict torus_transitive;
  Verdict factor_intertwines;
  Verdict envelope_sensitive;
};

struct ShiftData {
  FlowSystem flow;
  std::unique_ptr<InducedSystem> induced;
  std::vector<SampledMap> pool;
  std::size_t collapse_index = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<ReturnSet> returns;
  double epsilon = 0.25;
  std::int64_t gap_bound = 100;
  std::int64_t horizon = 0;
};

class HarnessContext {
 public:
  explicit HarnessContext(const HarnessConfig& config) : config_(config) {}

  std::int64_t H(std::int64_t nominal) const {
    return std::max<std::int64_t>(1, std::min(nominal, config_.horizon_cap));
  }
  int workers() const { return config_.workers; }
  std::mt19937_64 rng(std::uint64_t salt) const {
    return std::mt19937_64(config_.seed * 1'000'003ULL + salt);
  }

  const TorusData& torus();
  const ShiftData& shift();
  /// Numeric E(X) of the golden rotation on a 32-point grid.
  const SemigroupApprox& rotation_envelope();

 private:
  const HarnessConfig& config_;
  std::unique_ptr<TorusData> torus_;
  std::unique_ptr<ShiftData> shift_;
  std::unique_ptr<SemigroupApprox> rotation_;
};

const SemigroupApprox& HarnessContext::rotation_envelope() {
  if (!rotation_) {
    const FlowSystem rot = flow_of(FlowKind::rotation);
    auto metric = FunctionMetric::uniform(rot.space(), grid_of(rot.space(), 32));
    rotation_ = std::make_unique<SemigroupApprox>(approximate_semigroup(
        rot, metric, H(500), 0.02, ScanDirections::both));
  }
  return *rotation_;
}

const TorusData& HarnessContext::torus() {
  if (torus_) return *torus_;
  const FlowSystem flow = flow_of(FlowKind::torus_circle);
  const Point y = TorusOrCirclePoint{Part::torus, 0.3, 0.7};
  const std::int64_t scan = H(1000);

  auto grid = torus_points(flow, 8);
  auto sens = sensitivity(flow, grid, scan, DetectorDefaults::epsilon_ladder(),
                          DetectorDefaults::sensitivity_radii(), workers());
  Verdict torus_sensitive = named(sens.verdict, "torus part sensitive");

  auto trans = transitivity(flow, y, 0.1, scan, grid, workers());
  Verdict torus_transitive = named(trans.verdict, "torus part point-transitive");

  // phi(p) = p(y) on the numeric E(X): iterates sampled at y and at a point
  // of the circle part.
  const GridPtr pgrid =
      make_grid({y, TorusOrCirclePoint{Part::circle, 0.0, 0.0}});
  const std::int64_t pool_span = H(5000);
  std::vector<SampledMap> pool;
  pool.reserve(static_cast<std::size_t>(2 * pool_span + 1));
  for (std::int64_t t = -pool_span; t <= pool_span; ++t) {
    pool.push_back(sampled_iterate(flow, t, pgrid));
  }

  double worst = 0.0;
  for (std::int64_t s = -25; s < 25; ++s) {
    const SampledMap p = sampled_iterate(flow, s, pgrid);
    for (std::int64_t t = -3; t <= 3; ++t) {
      const Point lhs = induced_act(flow, t, p).image(0);
      const Point rhs = flow.apply(t, p.image(0));
      worst = std::max(worst, flow.distance(lhs, rhs));
    }
  }
  Witness fw{{"phi(t.p)", "t.phi(p)"}, 0, worst, 1e-12,
             "largest discrepancy over 50 elements and |t| <= 3"};
  Verdict factor = worst < 1e-12
                       ? Verdict::holds("phi(p) = p(y) intertwines the actions", {fw})
                       : Verdict::fails("phi(p) = p(y) intertwines the actions", {fw});

  std::vector<SampledMap> probes;
  for (std::int64_t s = -25; s < 25; ++s) {
    if (std::llabs(s) <= pool_span) {
      probes.push_back(pool[static_cast<std::size_t>(s + pool_span)]);
    }
  }
  BasePointSystem base(flow, 0, pool);
  auto esens = sensitivity(base, probes, scan, DetectorDefaults::epsilon_ladder(),
                           {0.1, 0.03}, workers());
  Verdict envelope =
      named(esens.verdict, "E(X) sensitive for the sub-basic entourage S(y, eps)");
  envelope.with("pool_size", double(pool.size()));

  torus_ = std::make_unique<TorusData>(
      TorusData{flow, y, std::move(torus_sensitive), std::move(torus_transitive),
                std::move(factor), std::move(envelope)});
  return *torus_;
}

const ShiftData& HarnessContext::shift() {
  if (shift_) return *shift_;
  auto data = std::make_unique<ShiftData>(
      ShiftData{shift_flow(FlowKind::shift_pair), nullptr, {}, 0, {}, {}, 0.25,
                100, H(200)});
  const ShiftAlgebra algebra("1", 8);
  const GridPtr grid = grid_of(data->flow.space(), 1);
  for (std::int64_t n = -20; n <= 20; ++n) {
    data->pool.push_back(sample_symbolic(algebra, ShiftElement::power(n), grid));
  }
  data->collapse_index = data->pool.size();
  data->pool.push_back(sample_symbolic(algebra, ShiftElement::collapse(), grid));
  data->induced = std::make_unique<InducedSystem>(
      data->flow, FunctionMetric::uniform(data->flow.space(), grid), data->pool);
  for (std::size_t i = 0; i < data->pool.size(); ++i) {
    for (std::size_t j = i + 1; j < data->pool.size(); ++j) {
      data->pairs.emplace_back(i, j);
      data->returns.push_back(proximality(*data->induced, data->pool[i],
                                          data->pool[j], data->epsilon,
                                          data->horizon, workers()));
    }
  }
  shift_ = std::move(data);
  return *shift_;
}

namespace {

// ---------------------------------------------------------------------------
// Checks

std::vector<Clause> check_dis(HarnessContext& ctx) {
  std::vector<Clause> out;
  const FlowSystem stack = stack_flow(6);
  auto rng = ctx.rng(1);
  std::vector<std::pair<Point, Point>> pairs;
  while (pairs.size() < 50) {
    Point a = stack.space().random_point(rng);
    Point b = stack.space().random_point(rng);
    if (stack_lower_bound(a, b) > 0) pairs.emplace_back(a, b);
  }
  out.push_back(hyp(distal_on_pairs(stack, pairs, ctx.H(10'000),
                                    stack_lower_bound, ctx.workers(),
                                    "circle stack (k=6) distal")));

  OdometerSystem odo(6);
  std::uniform_int_distribution<std::uint64_t> pick(0, 63);
  std::vector<std::pair<OdometerElement, OdometerElement>> opairs;
  while (opairs.size() < 50) {
    OdometerElement a{pick(rng), 6};
    OdometerElement b{pick(rng), 6};
    if (!(a == b)) opairs.emplace_back(a, b);
  }
  out.push_back(con(distal_on_pairs(
      odo, opairs, ctx.H(10'000),
      [&](const OdometerElement& a, const OdometerElement& b) {
        return odo.distance(a, b);
      },
      ctx.workers(), "E(X) = odometer (k=6) distal")));

  const FlowSystem ann = flow_of(FlowKind::annulus);
  out.push_back(hyp(
      negated(proximal_pair(ann, AnnulusPoint::from_radius(1.5, 0.0),
                            AnnulusPoint::from_radius(1.2, 0.0), 0.01,
                            ctx.H(100), ctx.workers(), ""),
              "annulus distal"),
      Outcome::fails));
  const AnnulusAlgebra alg;
  const GridPtr grid = grid_of(ann.space(), 8);
  InducedSystem induced(ann, FunctionMetric::uniform(ann.space(), grid), {});
  out.push_back(con(
      negated(proximal_pair(induced,
                            sample_symbolic(alg, AnnulusElement::power(0), grid),
                            sample_symbolic(alg, AnnulusElement::h1(0.0), grid),
                            0.01, ctx.H(100), ctx.workers(), ""),
              "E(annulus) distal"),
      Outcome::fails));
  return out;
}

std::vector<Clause> check_group(HarnessContext&) {
  std::vector<Clause> out;
  const OdometerAlgebra odo(8);
  out.push_back(hyp(named(group_check(odo, std::span<const OdometerElement>{}),
                          "E(X) = odometer (k=8) is a group of homeomorphisms")));

  // Every g-hat(p) = g o p is a bijection and an isometry of d'.
  std::optional<Witness> bad;
  for (std::uint64_t g = 0; g < odo.order() && !bad; ++g) {
    std::vector<bool> hit(odo.order(), false);
    const OdometerElement ge{g, 8};
    for (std::uint64_t p = 0; p < odo.order() && !bad; ++p) {
      const OdometerElement pe{p, 8};
      const auto img = odo.compose(ge, pe);
      if (hit[img.value]) {
        bad = Witness{{to_string(ge)}, 0, 0, 0, "left translation not injective"};
      }
      hit[img.value] = true;
      const OdometerElement qe{(p * 37 + 11) % odo.order(), 8};
      const double d0 = odo.distance(pe, qe);
      const double d1 = odo.distance(img, odo.compose(ge, qe));
      if (std::fabs(d0 - d1) > 1e-12) {
        bad = Witness{{to_string(ge), to_string(pe), to_string(qe)}, 0, d1, d0,
                      "left translation changes distances"};
      }
    }
  }
  const std::string prop = "E(E(X)) is a group of homeomorphisms";
  out.push_back(con(
      bad ? Verdict::fails(prop, {*bad})
          : Verdict::holds(prop, {},
                           "all 256 left translations are bijective isometries")));

  const AnnulusAlgebra ann;
  const std::vector<AnnulusElement> probes{
      AnnulusElement::power(0), AnnulusElement::power(1),
      AnnulusElement::power(-1), AnnulusElement::h1(0.2),
      AnnulusElement::h2(0.7)};
  out.push_back(hyp(named(group_check(ann, probes), "E(annulus) is a group"),
                    Outcome::fails));
  return out;
}

std::vector<Clause> check_equi(HarnessContext& ctx) {
  std::vector<Clause> out;
  const FlowSystem rot = flow_of(FlowKind::rotation);
  const auto grid = rot.space().sample_grid(16).points;
  const std::int64_t h = ctx.H(500);
  out.push_back(hyp(equicontinuous_at(rot, grid, 0.05, h, {0.05, 0.01, 1e-3},
                                      "rotation equicontinuous")));
  out.push_back(hyp(named(transitivity(rot, CirclePoint{0.0}, 0.05, ctx.H(1000),
                                       grid, ctx.workers())
                              .verdict,
                          "rotation point-transitive")));
  const auto& env = ctx.rotation_envelope();
  InducedSystem induced(rot, env.metric, env.elements);
  std::vector<SampledMap> probes(env.elements.begin(),
                                 env.elements.begin() +
                                     std::min<std::size_t>(6, env.elements.size()));
  out.push_back(con(equicontinuous_at(induced, probes, 0.05, h,
                                      {0.05, 0.01, 1e-3},
                                      "E(X) of the rotation equicontinuous")
                        .with("elements", double(env.elements.size()))));
  return out;
}

std::vector<Clause> check_t3(HarnessContext& ctx) {
  std::vector<Clause> out;
  const int k = 8;
  const FlowSystem stack = stack_flow(k);
  auto rng = ctx.rng(3);
  std::vector<std::pair<Point, Point>> pairs;
  while (pairs.size() < 20) {
    Point a = stack.space().random_point(rng);
    Point b = stack.space().random_point(rng);
    if (stack_lower_bound(a, b) > 0) pairs.emplace_back(a, b);
  }
  out.push_back(hyp(distal_on_pairs(stack, pairs, ctx.H(2000), stack_lower_bound,
                                    ctx.workers(), "circle stack (k=8) distal")));

  const RingSubflow rings{&stack};
  std::vector<Point> probes;
  for (int ring = 0; ring <= k; ++ring) {
    probes.emplace_back(StackPoint{ring, 0.125});
  }
  probes.emplace_back(StackPoint{StackPoint::kOuterRing, 0.125});
  out.push_back(hyp(equicontinuous_at(
      rings, probes, 0.05, ctx.H(1000), {0.05, 0.01},
      "hereditary almost equicontinuity evidence: every ring subflow is "
      "equicontinuous")));

  const OdometerSystem odo(k);
  std::vector<OdometerElement> elems{{0, k}, {1, k}, {77, k}, {255, k}};
  out.push_back(con(equicontinuous_at(odo, elems, 0.05, ctx.H(1000),
                                      {0.05, 0.01}, "E(X) = odometer (k=8) "
                                                    "equicontinuous")));
  return out;
}

std::vector<Clause> check_circ(HarnessContext& ctx) {
  std::vector<Clause> out;
  const int k = 14;
  const OdometerSystem odo(k);
  out.push_back(hyp(equicontinuous_at(odo, {OdometerElement{0, k}}, 0.25,
                                      ctx.H(1000), DetectorDefaults::delta_grid(),
                                      "E(X) = odometer (k=14) equicontinuous")));
  const FlowSystem stack = stack_flow(k);
  auto r = equicontinuity_at(stack, Point{StackPoint{13, 0.0}}, 0.25,
                             ctx.H(10'000), DetectorDefaults::delta_grid());
  out.push_back(con(named(r.verdict, "circle stack (k=14) equicontinuous at "
                                     "(ring 13, 0)"),
                    Outcome::fails));
  return out;
}

std::vector<Clause> check_iso(HarnessContext& ctx) {
  std::vector<Clause> out;
  const AnnulusAlgebra alg;
  auto rng = ctx.rng(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<AnnulusElement> probes;
  for (int n = -5; n <= 5; ++n) probes.push_back(AnnulusElement::power(n));
  for (int i = 0; i < 100; ++i) {
    probes.push_back(AnnulusElement::h1(unit(rng)));
    probes.push_back(AnnulusElement::h2(unit(rng)));
  }
  std::optional<Witness> bad;
  for (std::size_t i = 0; i < probes.size() && !bad; ++i) {
    for (std::size_t j = i + 1; j < probes.size(); ++j) {
      if (!alg.same(probes[i], probes[j]) &&
          alg.same(alg.iso_G(probes[i]), alg.iso_G(probes[j]))) {
        bad = Witness{{to_string(probes[i]), to_string(probes[j])}, 0, 0, 0,
                      "G identifies distinct elements"};
        break;
      }
    }
  }
  out.push_back(hyp(bad ? Verdict::fails("G injective on the probe set", {*bad})
                        : Verdict::holds("G injective on the probe set", {},
                                         std::to_string(probes.size()) +
                                             " probes, pairwise checked")));

  std::size_t violations = 0;
  std::optional<Witness> first;
  for (std::int64_t t = -100; t <= 100; ++t) {
    for (const auto& e : probes) {
      if (!alg.check_equivariance(t, e, probes)) {
        ++violations;
        if (!first) {
          first = Witness{{to_string(e)}, t, 0, kAngleTolerance,
                          "G(t.e) != t.G(e)"};
        }
      }
    }
  }
  const std::string prop = "G(t.e) = t.G(e) for |t| <= 100";
  out.push_back(con(
      (violations == 0
           ? Verdict::holds(prop, {},
                            "exact symbolic check, elements and maps on probes")
           : Verdict::fails(prop, {*first}))
          .with("violations", double(violations))));

  // Numeric second level: the partition of scanned times into clusters is
  // the same on both levels.
  const FlowSystem rot = flow_of(FlowKind::rotation);
  auto metric = FunctionMetric::uniform(rot.space(), grid_of(rot.space(), 16));
  const std::int64_t h = ctx.H(300);
  auto first_level = approximate_semigroup(rot, metric, h, 0.05, ScanDirections::both);
  auto second = second_level_semigroup(rot, first_level, h, 0.05,
                                       ScanDirections::both);
  const std::string nprop = "numeric E(X) and E(E(X)) cluster identically";
  Witness nw{{std::to_string(first_level.size()) + " first-level clusters",
              std::to_string(second.size()) + " second-level clusters"},
             h, 0, 0.05, "rotation on a 16-point grid"};
  out.push_back(con(first_level.witness_times == second.witness_times
                        ? Verdict::holds(nprop, {nw})
                        : Verdict::fails(nprop, {nw})));
  return out;
}

std::vector<Clause> check_niso(HarnessContext& ctx) {
  std::vector<Clause> out;
  auto rng = ctx.rng(5);

  const FlowSystem rot = flow_of(FlowKind::rotation);
  std::vector<Point> pts;
  for (int i = 0; i < 5; ++i) pts.push_back(rot.space().random_point(rng));
  out.push_back(hyp(rigidity_verdict(
      weak_rigidity(rot, pts, 0.05, ctx.H(1000)).verdict, "rotation weakly rigid")));
  {
    auto metric = FunctionMetric::uniform(rot.space(), grid_of(rot.space(), 16));
    auto approx = approximate_semigroup(rot, metric, ctx.H(200), 0.05,
                                        ScanDirections::both);
    out.push_back(con(isolation_verdict(approx, 0.05, "e isolated in E(rotation)"),
                      Outcome::fails));
  }

  const FlowSystem fs = shift_flow(FlowKind::full_shift);
  const Point single = SeqPoint::with_block(0, "1");
  out.push_back(hyp(rigidity_verdict(
                        weak_rigidity(fs, {single}, 0.5, ctx.H(10'000)).verdict,
                        "full shift weakly rigid"),
                    Outcome::fails));
  {
    FunctionMetric metric(fs.space(), make_grid({single}), {1.0});
    auto approx = approximate_semigroup(fs, metric, ctx.H(100), 0.5,
                                        ScanDirections::both);
    out.push_back(con(isolation_verdict(approx, 0.5, "e isolated in E(full shift)")));
  }

  const FlowSystem stack = stack_flow(6);
  std::vector<Point> spts;
  for (int ring = 1; ring <= 6; ++ring) spts.emplace_back(StackPoint{ring, 0.1 * ring});
  out.push_back(hyp(rigidity_verdict(
      weak_rigidity(stack, spts, 0.25, ctx.H(10'000)).verdict,
      "circle stack (k=6) weakly rigid")));
  {
    auto metric = FunctionMetric::stacked(stack.space(), grid_of(stack.space(), 8));
    auto approx = approximate_semigroup(stack, metric, ctx.H(200), 0.05,
                                        ScanDirections::both);
    out.push_back(con(isolation_verdict(approx, 0.05, "e isolated in E(circle stack)"),
                      Outcome::fails));
  }
  return out;
}

Verdict full_shift_envelope_sensitive(HarnessContext& ctx) {
  const FlowSystem fs = shift_flow(FlowKind::full_shift);
  const Point single = SeqPoint::with_block(0, "1");
  FunctionMetric metric(fs.space(), make_grid({single}), {1.0});
  std::vector<SampledMap> pool;
  for (std::int64_t t = -20; t <= 20; ++t) {
    pool.push_back(sampled_iterate(fs, t, metric.grid_ptr()));
  }
  InducedSystem induced(fs, metric, pool);
  auto r = sensitivity(induced, {pool[20]}, ctx.H(100),
                       DetectorDefaults::epsilon_ladder(), {0.1, 0.01},
                       ctx.workers());
  return named(r.verdict, "E(full shift) sensitive");
}

Verdict torus_circle_weakly_rigid(HarnessContext& ctx) {
  const FlowSystem tc = flow_of(FlowKind::torus_circle);
  auto rng = ctx.rng(6);
  std::vector<Point> pts;
  for (int i = 0; i < 3; ++i) pts.push_back(tc.space().random_point(rng));
  return named(weak_rigidity(tc, pts, 0.05, ctx.H(100'000)).verdict,
               "torus-circle flow weakly rigid (3 random points)");
}

std::vector<Clause> check_wr(HarnessContext& ctx) {
  std::vector<Clause> out;
  out.push_back(hyp(ctx.torus().envelope_sensitive));
  out.push_back(con(torus_circle_weakly_rigid(ctx)));
  // Contrapositive instance.
  const FlowSystem fs = shift_flow(FlowKind::full_shift);
  out.push_back(hyp(rigidity_verdict(
                        weak_rigidity(fs, {SeqPoint::with_block(0, "1")}, 0.5,
                                      ctx.H(10'000))
                            .verdict,
                        "full shift weakly rigid"),
                    Outcome::fails));
  out.push_back(con(full_shift_envelope_sensitive(ctx), Outcome::fails));
  return out;
}

std::vector<Clause> check_fullshift(HarnessContext& ctx) {
  std::vector<Clause> out;
  const FlowSystem fs = shift_flow(FlowKind::full_shift);
  const Point single = SeqPoint::with_block(0, "1");
  out.push_back(hyp(rigidity_verdict(
                        weak_rigidity(fs, {single}, 0.5, ctx.H(10'000)).verdict,
                        "full shift weakly rigid"),
                    Outcome::fails));
  FunctionMetric metric(fs.space(), make_grid({single}), {1.0});
  auto approx =
      approximate_semigroup(fs, metric, ctx.H(100), 0.5, ScanDirections::both);
  out.push_back(con(isolation_verdict(approx, 0.5, "e isolated in E(full shift)")));
  out.push_back(con(full_shift_envelope_sensitive(ctx), Outcome::fails));
  return out;
}

std::vector<Clause> check_sensitive(HarnessContext& ctx) {
  const auto& td = ctx.torus();
  return {hyp(td.torus_sensitive), hyp(td.factor_intertwines),
          hyp(td.torus_transitive), con(td.envelope_sensitive)};
}

std::vector<Clause> check_sub(HarnessContext& ctx) {
  std::vector<Clause> out;
  const FlowSystem tc = flow_of(FlowKind::torus_circle);
  auto rng = ctx.rng(7);
  std::vector<std::pair<Point, Point>> pairs;
  while (pairs.size() < 20) {
    Point a = tc.space().random_point(rng);
    Point b = tc.space().random_point(rng);
    if (torus_circle_lower_bound(a, b) > 0) pairs.emplace_back(a, b);
  }
  out.push_back(hyp(distal_on_pairs(tc, pairs, ctx.H(2000),
                                    torus_circle_lower_bound, ctx.workers(),
                                    "torus-circle flow distal")));
  const auto& td = ctx.torus();
  out.push_back(hyp(named(td.torus_transitive,
                          "torus part minimal (orbit of y is dense)")));
  out.push_back(hyp(td.torus_sensitive));
  out.push_back(con(td.envelope_sensitive));
  return out;
}

std::vector<Clause> check_ad2(HarnessContext& ctx) {
  std::vector<Clause> out;
  const FlowSystem rot = flow_of(FlowKind::rotation);
  const auto grid = rot.space().sample_grid(16).points;
  const std::int64_t h = ctx.H(1000);
  out.push_back(hyp(named(
      transitivity(rot, CirclePoint{0.0}, 0.05, h, grid, ctx.workers()).verdict,
      "rotation point-transitive")));
  out.push_back(con(equicontinuous_at(rot, grid, 0.05, ctx.H(500),
                                      {0.05, 0.01}, "rotation almost equicontinuous")));
  out.push_back(con(named(sensitivity(rot, grid, ctx.H(200),
                                      DetectorDefaults::epsilon_ladder(),
                                      DetectorDefaults::sensitivity_radii(),
                                      ctx.workers())
                              .verdict,
                          "rotation sensitive"),
                    Outcome::fails));
  std::vector<Verdict> eq_trans;
  for (std::size_t i = 0; i < grid.size(); i += 4) {
    eq_trans.push_back(transitivity(rot, grid[i], 0.05, h, grid, ctx.workers()).verdict);
    eq_trans.push_back(
        equicontinuity_at(rot, grid[i], 0.05, ctx.H(500), {0.05}).verdict);
  }
  out.push_back(con(all_of("rotation: Eq(X) = Trans(X) on probe points", eq_trans,
                           "equicontinuity/transitivity probes")));

  const auto& td = ctx.torus();
  out.push_back(hyp(td.torus_transitive));
  out.push_back(con(td.torus_sensitive));
  auto eq = equicontinuity_at(td.flow, td.y, 0.25, h, {0.1, 0.01, 1e-3});
  out.push_back(con(named(eq.verdict, "torus part almost equicontinuous (at y)"),
                    Outcome::fails));
  return out;
}

std::vector<Clause> check_ur(HarnessContext& ctx) {
  std::vector<Clause> out;
  const FlowSystem rot = flow_of(FlowKind::rotation);
  const auto grid = rot.space().sample_grid(64).points;
  out.push_back(hyp(named(transitivity(rot, CirclePoint{0.0}, 0.05, ctx.H(1000),
                                       grid, ctx.workers())
                              .verdict,
                          "rotation point-transitive")));
  out.push_back(hyp(equicontinuous_at(rot, rot.space().sample_grid(8).points,
                                      0.05, ctx.H(500), {0.05, 0.01},
                                      "rotation almost equicontinuous")));
  out.push_back(con(named(uniform_rigidity(rot, grid, 0.05, ctx.H(1000)).verdict,
                          "rotation uniformly rigid")));
  return out;
}

std::vector<Clause> check_sense(HarnessContext& ctx) {
  std::vector<Clause> out;
  const auto& td = ctx.torus();
  out.push_back(hyp(td.torus_transitive));
  out.push_back(hyp(torus_circle_weakly_rigid(ctx)));
  auto rng = ctx.rng(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point> pts;
  for (int i = 0; i < 16; ++i) {
    pts.emplace_back(TorusOrCirclePoint{Part::torus, unit(rng), unit(rng)});
  }
  out.push_back(hyp(named(uniform_rigidity(td.flow, pts, 0.05, ctx.H(10'000)).verdict,
                          "torus part uniformly rigid (16 random points)"),
                    Outcome::fails));
  out.push_back(con(td.envelope_sensitive));
  return out;
}

std::vector<Clause> check_weakly(HarnessContext& ctx) {
  std::vector<Clause> out;
  auto rng = ctx.rng(9);

  const FlowSystem rot = flow_of(FlowKind::rotation);
  std::vector<Point> pts;
  for (int i = 0; i < 5; ++i) pts.push_back(rot.space().random_point(rng));
  out.push_back(hyp(named(weak_rigidity(rot, pts, 0.05, ctx.H(1000)).verdict,
                          "rotation weakly rigid")));
  const auto& env = ctx.rotation_envelope();
  InducedSystem induced(rot, env.metric, env.elements);
  std::vector<SampledMap> elems(env.elements.begin(),
                                env.elements.begin() +
                                    std::min<std::size_t>(3, env.elements.size()));
  out.push_back(con(named(weak_rigidity(induced, elems, 0.05, ctx.H(1000)).verdict,
                          "E(rotation) weakly rigid")));

  const FlowSystem fs = shift_flow(FlowKind::full_shift);
  const Point single = SeqPoint::with_block(0, "1");
  out.push_back(hyp(named(weak_rigidity(fs, {single}, 0.5, ctx.H(10'000)).verdict,
                          "full shift weakly rigid"),
                    Outcome::fails));
  FunctionMetric fmetric(fs.space(), make_grid({single}), {1.0});
  const SampledMap e = sampled_iterate(fs, 0, fmetric.grid_ptr());
  InducedSystem finduced(fs, fmetric, {e});
  out.push_back(con(named(weak_rigidity(finduced, {e}, 0.5, ctx.H(10'000)).verdict,
                          "E(full shift) weakly rigid"),
                    Outcome::fails));

  const FlowSystem stack = stack_flow(6);
  std::vector<Point> spts;
  for (int ring = 1; ring <= 6; ++ring) spts.emplace_back(StackPoint{ring, 0.05 * ring});
  out.push_back(hyp(named(weak_rigidity(stack, spts, 0.25, ctx.H(10'000)).verdict,
                          "circle stack (k=6) weakly rigid")));
  auto smetric = FunctionMetric::stacked(stack.space(), grid_of(stack.space(), 8));
  std::vector<SampledMap> spool;
  for (std::int64_t t : {0, 3, 17}) {
    spool.push_back(sampled_iterate(stack, t, smetric.grid_ptr()));
  }
  InducedSystem sinduced(stack, smetric, spool);
  out.push_back(con(named(weak_rigidity(sinduced, spool, 0.25, ctx.H(10'000)).verdict,
                          "E(circle stack) weakly rigid")));
  return out;
}

std::vector<Clause> check_uni(HarnessContext& ctx) {
  std::vector<Clause> out;
  const FlowSystem rot = flow_of(FlowKind::rotation);
  out.push_back(hyp(named(uniform_rigidity(rot, rot.space().sample_grid(64).points,
                                           0.05, ctx.H(1000))
                              .verdict,
                          "rotation uniformly rigid")));
  const auto& env = ctx.rotation_envelope();
  InducedSystem induced(rot, env.metric, env.elements);
  out.push_back(con(named(uniform_rigidity(induced, env.elements, 0.05, ctx.H(1000))
                              .verdict,
                          "E(rotation) uniformly rigid")));

  // Circle stack: the uniform return time of X doubles with the depth while
  // the truncated E(X) returns uniformly at a bounded time.
  std::vector<Witness> xs;
  std::vector<Witness> es;
  bool x_ok = true;
  bool e_ok = true;
  for (int k = 3; k <= 8; ++k) {
    const FlowSystem stack = stack_flow(k);
    auto rx = uniform_rigidity(stack, stack.space().sample_grid(8).points, 0.25,
                               ctx.H(1000));
    const std::int64_t expect = std::int64_t{1} << k;
    x_ok = x_ok && rx.time && *rx.time == expect;
    xs.push_back(Witness{{"k=" + std::to_string(k)}, rx.time.value_or(0),
                         rx.best_distance, 0.25, "uniform return time"});
    const OdometerSystem odo(k);
    std::vector<OdometerElement> all;
    for (std::uint64_t v = 0; v < odo.algebra().order(); ++v) all.push_back({v, k});
    auto re = uniform_rigidity(odo, all, 0.25, ctx.H(1000));
    e_ok = e_ok && re.time && std::llabs(*re.time) <= 2;
    es.push_back(Witness{{"k=" + std::to_string(k)}, re.time.value_or(0),
                         re.best_distance, 0.25, "uniform return time"});
  }
  const std::string xp = "circle stack: uniform return time is exactly 2^k, k = 3..8";
  out.push_back(hyp(x_ok ? Verdict::holds(xp, xs) : Verdict::fails(xp, xs)));
  const std::string ep = "E(circle stack): uniform return time bounded, k = 3..8";
  out.push_back(con(e_ok ? Verdict::holds(ep, es) : Verdict::fails(ep, es)));
  return out;
}

Verdict shift_legs_proximal(const ShiftData& sd) {
  std::vector<Verdict> parts;
  for (std::size_t i = 0; i < sd.returns.size(); ++i) {
    const auto& rs = sd.returns[i];
    const auto& [a, b] = sd.pairs[i];
    Witness w{{sd.pool[a].provenance().describe(), sd.pool[b].provenance().describe()},
              rs.argmin, rs.min_value, sd.epsilon, {}};
    parts.push_back(rs.hits.empty()
                        ? Verdict::fails("pair proximal", {w})
                        : Verdict::holds("pair proximal", {w}));
  }
  return all_of("E(Y) proximal: every pair of {sigma^n : |n| <= 20} u {g}", parts,
                "pairs")
      .with("epsilon", sd.epsilon)
      .with("horizon", double(sd.horizon));
}

Verdict shift_legs_syndetic(const ShiftData& sd) {
  std::vector<Verdict> parts;
  for (std::size_t i = 0; i < sd.returns.size(); ++i) {
    std::string note;
    const bool ok = syndeticity(sd.returns[i], sd.gap_bound, &note);
    Witness w{{sd.pool[sd.pairs[i].first].provenance().describe(),
               sd.pool[sd.pairs[i].second].provenance().describe()},
              0, sd.returns[i].min_value, sd.epsilon, note};
    parts.push_back(ok ? Verdict::holds("pair syndetically proximal", {w})
                       : Verdict::fails("pair syndetically proximal", {w}));
  }
  return all_of("E(Y) syndetically proximal", parts, "pairs")
      .with("gap_bound", double(sd.gap_bound));
}

std::vector<Clause> check_synd(HarnessContext& ctx) {
  std::vector<Clause> out;
  const auto& sd = ctx.shift();
  out.push_back(hyp(shift_legs_proximal(sd)));
  auto fp = unique_minimal_fixed_point(*sd.induced, sd.pool, sd.epsilon, sd.horizon);
  Verdict fpv = named(fp.verdict, "E(Y) has a fixed point as unique minimal set");
  // Large shifts push every sampled block out of the window, so the detector
  // may hand back any representative of g's metric class.
  if (fp.point &&
      sd.induced->distance(*fp.point, sd.pool[sd.collapse_index]) > 1e-9) {
    fpv = Verdict::fails(fpv.property, fpv.witnesses, "fixed point is not g");
  }
  out.push_back(con(fpv));
  out.push_back(con(shift_legs_syndetic(sd)));

  // The same three legs on Y itself all fail.
  const Point zero = SeqPoint::constant(0);
  const Point one = SeqPoint::constant(1);
  out.push_back(hyp(named(proximal_pair(sd.flow, zero, one, 0.5, ctx.H(10'000),
                                        ctx.workers(), ""),
                          "Y proximal (pair 0^inf, 1^inf)"),
                    Outcome::fails));
  auto yfp = unique_minimal_fixed_point(sd.flow, sd.flow.space().sample_grid(1).points,
                                        0.25, sd.horizon);
  out.push_back(con(named(yfp.verdict, "Y has a fixed point as unique minimal set"),
                    Outcome::fails));
  auto rs = proximality(sd.flow, zero, one, 0.5, sd.horizon, ctx.workers());
  std::string note;
  const bool synd = syndeticity(rs, sd.gap_bound, &note);
  Witness w{{to_string(zero), to_string(one)}, rs.argmin, rs.min_value, 0.5, note};
  const std::string prop = "Y syndetically proximal (pair 0^inf, 1^inf)";
  out.push_back(con(synd ? Verdict::holds(prop, {w}) : Verdict::fails(prop, {w}),
                    Outcome::fails));
  return out;
}

/// eps' for run length k: the smallest distance from which the next k - 1
/// steps can leave the eps-entourage, over every scanned pair.
double continuity_modulus(const ShiftData& sd, std::int64_t k) {
  double eps_prime = sd.epsilon;
  for (const auto& rs : sd.returns) {
    for (std::int64_t t = -rs.horizon; t + k - 1 <= rs.horizon; ++t) {
      double worst = 0.0;
      for (std::int64_t j = 0; j < k; ++j) worst = std::max(worst, rs.distance_at(t + j));
      if (worst >= sd.epsilon) eps_prime = std::min(eps_prime, rs.distance_at(t));
    }
  }
  return eps_prime;
}

std::vector<Clause> check_ts(HarnessContext& ctx) {
  std::vector<Clause> out;
  const auto& sd = ctx.shift();
  std::vector<Verdict> forward_hyp;
  std::vector<Verdict> forward;
  std::vector<Verdict> converse;
  for (std::int64_t k = 1; k <= 5; ++k) {
    const double eps_prime = continuity_modulus(sd, k);
    for (std::size_t i = 0; i < sd.returns.size(); ++i) {
      const auto& rs = sd.returns[i];
      const std::string pair = sd.pool[sd.pairs[i].first].provenance().describe() +
                               ", " +
                               sd.pool[sd.pairs[i].second].provenance().describe();
      const ReturnSet tight = make_return_set(rs.predicate, rs.horizon, eps_prime,
                                              rs.distances);
      std::string note;
      const bool synd = syndeticity(tight, sd.gap_bound, &note);
      Witness hw{{pair}, k, eps_prime, eps_prime, note};
      forward_hyp.push_back(synd ? Verdict::holds("syndetic at eps'", {hw})
                                 : Verdict::fails("syndetic at eps'", {hw}));
      const auto thick = thick_syndeticity(rs, k, sd.gap_bound + k - 1);
      Witness tw{{pair}, k, double(thick.worst_gap), sd.epsilon, thick.note};
      Verdict tv;
      tv.property = "thick at eps";
      tv.outcome = thick.outcome;
      tv.witnesses = {tw};
      tv.note = thick.note;
      forward.push_back(tv);
      std::string cnote;
      const bool back = thick.outcome != Outcome::holds ||
                        syndeticity(rs, sd.gap_bound + k - 1, &cnote);
      Witness cw{{pair}, k, 0, sd.epsilon, cnote};
      converse.push_back(back ? Verdict::holds("thick implies syndetic", {cw})
                              : Verdict::fails("thick implies syndetic", {cw}));
    }
  }
  out.push_back(hyp(all_of("pairs syndetically proximal at the continuity "
                           "modulus eps'(k), k = 1..5",
                           forward_hyp, "(pair, k) combinations")));
  out.push_back(con(all_of("return sets at eps = 0.25 thickly syndetic, run "
                           "length k = 1..5",
                           forward, "(pair, k) combinations")));
  out.push_back(con(all_of("thickly syndetic return sets are syndetic", converse,
                           "(pair, k) combinations")));
  return out;
}

std::vector<Clause> check_prox(HarnessContext& ctx) {
  std::vector<Clause> out;
  const auto& sd = ctx.shift();
  const Point zero = SeqPoint::constant(0);
  const Point one = SeqPoint::constant(1);
  out.push_back(hyp(named(proximal_pair(sd.flow, zero, one, 0.5, ctx.H(10'000),
                                        ctx.workers(), ""),
                          "Y proximal (pair 0^inf, 1^inf)"),
                    Outcome::fails));
  out.push_back(hyp(named(transitivity(sd.flow, SeqPoint::with_block(0, "1"), 0.5,
                                       sd.horizon,
                                       sd.flow.space().sample_grid(1).points,
                                       ctx.workers())
                              .verdict,
                          "Y point-transitive"),
                    Outcome::fails));
  out.push_back(con(shift_legs_proximal(sd)));
  return out;
}

std::vector<Clause> check_syndist(HarnessContext& ctx) {
  std::vector<Clause> out;
  const std::int64_t gap = 100;
  const std::int64_t h = ctx.H(2000);
  auto rng = ctx.rng(10);

  const FlowSystem stack = stack_flow(6);
  std::vector<Verdict> xs;
  while (xs.size() < 20) {
    Point a = stack.space().random_point(rng);
    Point b = stack.space().random_point(rng);
    const double lb = stack_lower_bound(a, b);
    if (!(lb > 0)) continue;
    auto rs = proximality(stack, a, b, lb / 2, h, ctx.workers());
    std::string note;
    const bool synd = syndeticity(rs, gap, &note);
    Witness w{{to_string(a), to_string(b)}, rs.argmin, rs.min_value, lb / 2, note};
    xs.push_back(synd ? Verdict::fails("pair not syndetically proximal", {w})
                      : Verdict::holds("pair not syndetically proximal", {w}));
  }
  out.push_back(hyp(all_of("circle stack (k=6) syndetically distal", xs, "pairs")));

  const OdometerSystem odo(6);
  std::uniform_int_distribution<std::uint64_t> pick(0, 63);
  std::vector<Verdict> es;
  while (es.size() < 20) {
    OdometerElement a{pick(rng), 6};
    OdometerElement b{pick(rng), 6};
    if (a == b) continue;
    const double lb = odo.distance(a, b);
    auto rs = proximality(odo, a, b, lb / 2, h, ctx.workers());
    std::string note;
    const bool synd = syndeticity(rs, gap, &note);
    Witness w{{to_string(a), to_string(b)}, rs.argmin, rs.min_value, lb / 2, note};
    es.push_back(synd ? Verdict::fails("pair not syndetically proximal", {w})
                      : Verdict::holds("pair not syndetically proximal", {w}));
  }
  out.push_back(con(all_of("E(X) = odometer (k=6) syndetically distal", es, "pairs")));
  return out;
}

std::vector<Clause> check_last(HarnessContext& ctx) {
  std::vector<Clause> out;
  const FlowSystem ann = flow_of(FlowKind::annulus);
  const AnnulusAlgebra alg;
  const GridPtr grid = grid_of(ann.space(), 8);
  InducedSystem induced(ann, FunctionMetric::uniform(ann.space(), grid), {});
  const std::vector<AnnulusElement> elems{
      AnnulusElement::power(0), AnnulusElement::power(3), AnnulusElement::h1(0.0),
      AnnulusElement::h1(0.3),  AnnulusElement::h2(0.0),  AnnulusElement::h2(0.6)};
  std::vector<SampledMap> maps;
  for (const auto& e : elems) maps.push_back(sample_symbolic(alg, e, grid));
  const std::int64_t h = ctx.H(200);
  const std::int64_t gap = 100;
  std::vector<Verdict> parts;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    for (std::size_t j = i + 1; j < maps.size(); ++j) {
      auto rs = proximality(induced, maps[i], maps[j], 0.05, h, ctx.workers());
      std::string note;
      const bool synd = syndeticity(rs, gap, &note);
      Witness w{{to_string(elems[i]), to_string(elems[j])}, rs.argmin,
                rs.min_value, 0.05, note};
      parts.push_back(synd ? Verdict::fails("pair not syndetically proximal", {w})
                           : Verdict::holds("pair not syndetically proximal", {w}));
    }
  }
  out.push_back(hyp(all_of("E(annulus) syndetically distal", parts, "pairs")));
  out.push_back(hyp(negated(proximal_pair(induced, maps[0], maps[2], 0.05, h,
                                          ctx.workers(), ""),
                            "E(annulus) distal"),
                    Outcome::fails));
  out.push_back(con(named(proximal_pair(ann, AnnulusPoint{kInf, 0.0},
                                        AnnulusPoint{-kInf, 0.0}, 0.5, h,
                                        ctx.workers(), ""),
                          "annulus proximal (pair on r = 1 and r = 2)"),
                    Outcome::fails));
  out.push_back(con(named(proximal_pair(ann, AnnulusPoint::from_radius(1.5, 0.0),
                                        AnnulusPoint::from_radius(1.2, 0.0), 0.01,
                                        h, ctx.workers(), ""),
                          "annulus has a nontrivial proximal pair")));
  return out;
}

std::vector<TheoremCheck> build_registry() {
  return {
      {"C-fullshift", "enveloping semigroup of the full shift is not sensitive",
       "implies", "full shift, single-1 point, one-point function metric", 1,
       check_fullshift},
      {"C-last", "syndetically distal E(X) forces X non-proximal with proximal pairs",
       "implies", "annulus and its symbolic E(X)", 200, check_last},
      {"C-sensE", "point-transitive weakly rigid, not uniformly rigid => E(X) sensitive",
       "implies", "torus part of the torus-circle flow", 10'000, check_sense},
      {"C-wr", "E(X) sensitive => X weakly rigid", "implies",
       "torus-circle flow; full shift as the contrapositive", 5'000, check_wr},
      {"E-circ", "E(X) equicontinuous while X is not", "counterexample",
       "circle stack k=14 against the odometer of depth 14", 10'000, check_circ},
      {"T-ad2", "point-transitive: almost equicontinuous or sensitive", "implies",
       "rotation (almost equicontinuous), torus part (sensitive)", 1'000, check_ad2},
      {"T-dis", "X distal iff E(X) distal", "iff",
       "circle stack k=6 / odometer; annulus as the non-distal side", 100, check_dis},
      {"T-equi", "X equicontinuous => E(X) equicontinuous (iff when transitive)",
       "iff", "golden rotation and its numeric E(X)", 500, check_equi},
      {"T-group", "E(X) group => E(E(X)) group", "implies",
       "odometer k=8 exhaustively; annulus as the non-group side", 1, check_group},
      {"T-iso", "E(X) isomorphic to E(E(X))", "iff",
       "annulus symbolic algebra; rotation numeric levels", 1, check_iso},
      {"T-niso", "weakly rigid iff e not isolated in E(X)", "iff",
       "rotation, full shift, circle stack k=6", 100, check_niso},
      {"T-proxE", "X proximal => E(X) proximal; converse needs transitivity",
       "counterexample", "shift pair Y with block 1 and its E(Y)", 200, check_prox},
      {"T-sensitive", "feeble-open factor lifts sensitivity", "implies",
       "phi(p) = p(y) from numeric E(X) onto the torus part", 5'000,
       check_sensitive},
      {"T-sub", "distal with a minimal sensitive subsystem => E(X) sensitive",
       "implies", "torus-circle flow", 5'000, check_sub},
      {"T-synd", "proximal iff unique minimal fixed point iff syndetically proximal",
       "iff", "induced flow on E(Y) for the shift pair; Y itself", 200, check_synd},
      {"T-syndist", "X syndetically distal => E(X) syndetically distal", "implies",
       "circle stack k=6 and the odometer", 200, check_syndist},
      {"T-t3", "metrizable distal hereditarily AE => E(X) equicontinuous",
       "implies", "circle stack k=8 and the odometer", 1, check_t3},
      {"T-ts", "syndetically proximal iff thickly syndetic return sets", "iff",
       "pairs of the induced flow on E(Y)", 200, check_ts},
      {"T-uni", "X uniformly rigid => E(X) uniformly rigid", "implies",
       "rotation; circle stack k=3..8 against the odometer", 256, check_uni},
      {"T-ur", "point-transitive almost equicontinuous => uniformly rigid",
       "implies", "golden rotation", 1'000, check_ur},
      {"T-weakly", "X weakly rigid iff E(X) weakly rigid", "iff",
       "rotation, full shift, circle stack k=6", 100, check_weakly},
  };
}

}  // namespace

const std::vector<TheoremCheck>& default_registry() {
  static const std::vector<TheoremCheck> registry = build_registry();
  return registry;
}

CheckStatus decide(const std::vector<Clause>& clauses, std::int64_t horizon_cap,
                   std::int64_t min_horizon, std::string* note) {
  bool inconclusive = false;
  const Clause* mismatch = nullptr;
  for (const auto& c : clauses) {
    if (c.verdict.outcome == Outcome::inconclusive) {
      inconclusive = true;
      if (note) *note = c.verdict.property + ": " + c.verdict.note;
    } else if (!c.matches() && !mismatch) {
      mismatch = &c;
    }
  }
  if (mismatch) {
    const std::string what = mismatch->verdict.property + " came out " +
                             std::string(to_string(mismatch->verdict.outcome)) +
                             ", expected " +
                             std::string(to_string(mismatch->expected));
    if (horizon_cap < min_horizon) {
      if (note) {
        *note = "horizon cap " + std::to_string(horizon_cap) +
                " is below this check's minimum " + std::to_string(min_horizon) +
                " (" + what + ")";
      }
      return CheckStatus::inconclusive;
    }
    if (note) *note = what;
    return CheckStatus::fail;
  }
  if (inconclusive) {
    if (note && horizon_cap < min_horizon) {
      *note = "horizon cap " + std::to_string(horizon_cap) +
              " is below this check's minimum " + std::to_string(min_horizon) +
              "; " + *note;
    }
    return CheckStatus::inconclusive;
  }
  if (note) *note = "all clauses match the theorem";
  return CheckStatus::pass;
}

namespace {

CheckReport run_check(const TheoremCheck& check, HarnessContext& ctx,
                      const HarnessConfig& config) {
  CheckReport r{check.id, check.title, check.relation, check.instance, {},
                CheckStatus::inconclusive, {}};
  try {
    r.clauses = check.body(ctx);
    r.status = decide(r.clauses, config.horizon_cap, check.min_horizon, &r.note);
  } catch (const HorizonExhausted& e) {
    r.status = CheckStatus::inconclusive;
    r.note = std::string("horizon exhausted: ") + e.what();
  } catch (const Error& e) {
    r.status = CheckStatus::fail;
    r.note = std::string("error: ") + e.what();
  }
  return r;
}

}  // namespace

CheckReport run_theorem(std::string_view id, const HarnessConfig& config) {
  for (const auto& check : default_registry()) {
    if (check.id == id) {
      HarnessContext ctx(config);
      return run_check(check, ctx, config);
    }
  }
  throw ConfigError("unknown theorem check \"" + std::string(id) + "\"");
}

HarnessReport run_all(const HarnessConfig& config) {
  return run_all(config, default_registry());
}

HarnessReport run_all(const HarnessConfig& config,
                      const std::vector<TheoremCheck>& registry) {
  for (const auto& id : config.ids) {
    const bool known = std::any_of(registry.begin(), registry.end(),
                                   [&](const TheoremCheck& c) { return c.id == id; });
    if (!known) throw ConfigError("unknown theorem check \"" + id + "\"");
  }
  std::vector<const TheoremCheck*> selected;
  for (const auto& c : registry) {
    if (config.ids.empty() ||
        std::find(config.ids.begin(), config.ids.end(), c.id) != config.ids.end()) {
      selected.push_back(&c);
    }
  }
  std::sort(selected.begin(), selected.end(),
            [](const TheoremCheck* a, const TheoremCheck* b) { return a->id < b->id; });
  HarnessContext ctx(config);
  HarnessReport report;
  for (const auto* c : selected) {
    report.checks.push_back(run_check(*c, ctx, config));
    switch (report.checks.back().status) {
      case CheckStatus::pass: ++report.passed; break;
      case CheckStatus::fail: ++report.failed; break;
      case CheckStatus::inconclusive: ++report.inconclusive; break;
    }
  }
  return report;
}

}  // namespace envlab
