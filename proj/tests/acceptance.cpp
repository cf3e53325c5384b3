// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "envlab/detectors.hpp"
#include "envlab/envelope_numeric.hpp"
#include "envlab/envelope_symbolic.hpp"
#include "envlab/flow.hpp"
#include "envlab/harness.hpp"
#include "envlab/serialize.hpp"
#include "oracles.hpp"

using namespace envlab;

namespace {

struct Outcome_ {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  int number;
  std::string name;
  double budget_seconds;
  std::function<Outcome_()> body;
};

FlowSystem flow(FlowKind kind, int depth = 8) {
  FlowParams p;
  p.depth = depth;
  return make_flow({kind, p});
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// 1 ------------------------------------------------------------------------
Outcome_ composition_coherence() {
  const AnnulusAlgebra alg;
  const auto space = MetricSpace::annulus();
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  using E = AnnulusElement;
  struct Relation {
    const char* name;
    std::function<E(double, double)> a, b, rhs;
  };
  const double al = kGolden;
  const std::vector<Relation> relations{
      {"h h1(phi) = h1(phi+a)", [](double, double) { return E::power(1); },
       [](double p, double) { return E::h1(p); }, [al](double p, double) { return E::h1(oracle::frac(p + static_cast<long double>(al))); }},
      {"h h2(phi) = h2(phi-a)", [](double, double) { return E::power(1); },
       [](double p, double) { return E::h2(p); }, [al](double p, double) { return E::h2(oracle::frac(p - static_cast<long double>(al))); }},
      {"h1(phi) h2(phi) = h2(0)", [](double p, double) { return E::h1(p); },
       [](double p, double) { return E::h2(p); }, [](double, double) { return E::h2(0.0); }},
      {"h2(phi) h1(phi) = h1(0)", [](double p, double) { return E::h2(p); },
       [](double p, double) { return E::h1(p); }, [](double, double) { return E::h1(0.0); }},
      {"h1(phi) h2(chi) = h2(chi-phi)", [](double p, double) { return E::h1(p); },
       [](double, double c) { return E::h2(c); }, [](double p, double c) { return E::h2(oracle::frac(static_cast<long double>(c) - p)); }},
      {"h2(chi) h1(phi) = h1(phi-chi)", [](double, double c) { return E::h2(c); },
       [](double p, double) { return E::h1(p); }, [](double p, double c) { return E::h1(oracle::frac(static_cast<long double>(p) - c)); }},
      {"h2(phi) h2(chi) = h2(phi+chi)", [](double p, double) { return E::h2(p); },
       [](double, double c) { return E::h2(c); }, [](double p, double c) { return E::h2(oracle::frac(static_cast<long double>(p) + c)); }},
      {"h1(phi) h1(chi) = h1(chi+phi)", [](double p, double) { return E::h1(p); },
       [](double, double c) { return E::h1(c); }, [](double p, double c) { return E::h1(oracle::frac(static_cast<long double>(p) + c)); }},
  };
  double worst = 0.0;
  std::string worst_rel;
  for (const auto& r : relations) {
    for (int n = 0; n < 1000; ++n) {
      const double phi = unit(rng);
      const double chi = unit(rng);
      const double u = unit(rng);
      const double radius = u < 0.1 ? 1.0 : u < 0.2 ? 2.0 : 1.0 + unit(rng);
      const Point x = AnnulusPoint::from_radius(radius, unit(rng));
      const E a = r.a(phi, chi);
      const E b = r.b(phi, chi);
      const Point pointwise = alg.eval(a, alg.eval(b, x));
      const double e1 = space.distance(alg.eval(alg.compose(a, b), x), pointwise);
      const double e2 = space.distance(alg.eval(r.rhs(phi, chi), x), pointwise);
      const double e = std::max(e1, e2);
      if (e > worst) {
        worst = e;
        worst_rel = r.name;
      }
    }
  }
  return {worst <= 1e-9, "8 relations x 1000 points, max error " + fmt("%.3g", worst) +
                             (worst_rel.empty() ? "" : " (" + worst_rel + ")")};
}

// 2 ------------------------------------------------------------------------
Outcome_ numeric_symbolic_recovery() {
  const auto f = flow(FlowKind::annulus);
  const AnnulusAlgebra alg;
  const auto grid = make_grid(f.space().sample_grid(16).points);
  if (grid->size() != 256) return {false, "annulus grid is not 16 x 16"};
  const auto metric = FunctionMetric::uniform(f.space(), grid);
  const auto approx = approximate_semigroup(f, metric, 10'000, 0.05, ScanDirections::both);
  int h1 = 0;
  int h2 = 0;
  double worst = 0.0;
  for (const auto& rep : approx.elements) {
    const std::int64_t t = rep.provenance().time;
    const double d0 = metric.distance(rep, sample_symbolic(alg, AnnulusElement::power(t), grid));
    const double d1 = metric.distance(
        rep, sample_symbolic(alg, AnnulusElement::h1(oracle::frac(static_cast<long double>(t) * kGolden)), grid));
    const double d2 = metric.distance(
        rep, sample_symbolic(alg, AnnulusElement::h2(oracle::frac(-static_cast<long double>(t) * kGolden)), grid));
    const double best = std::min({d0, d1, d2});
    worst = std::max(worst, best);
    // Tag by the nearest limit family; powers count only when neither limit is close.
    if (d1 <= 0.05 && d1 <= d2) {
      ++h1;
    } else if (d2 <= 0.05) {
      ++h2;
    }
  }
  const bool ok = worst <= 0.05 && h1 >= 10 && h2 >= 10;
  return {ok, std::to_string(approx.size()) + " clusters, " + std::to_string(h1) + " H1-tagged, " +
                  std::to_string(h2) + " H2-tagged, worst symbolic distance " + fmt("%.3g", worst)};
}

// 3 ------------------------------------------------------------------------
Outcome_ iso_equivariance() {
  const AnnulusAlgebra alg;
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<AnnulusElement> probes;
  for (int n = -5; n <= 5; ++n) probes.push_back(AnnulusElement::power(n));
  for (int i = 0; i < 100; ++i) {
    probes.push_back(AnnulusElement::h1(unit(rng)));
    probes.push_back(AnnulusElement::h2(unit(rng)));
  }
  std::size_t violations = 0;
  for (std::int64_t t = -100; t <= 100; ++t) {
    for (const auto& e : probes) violations += !alg.check_equivariance(t, e, probes);
  }
  return {violations == 0, std::to_string(probes.size()) + " probes x 201 times, " +
                               std::to_string(violations) + " violations"};
}

// 4 ------------------------------------------------------------------------
Outcome_ distality_instance() {
  const auto f = flow(FlowKind::circle_stack, 6);
  std::mt19937_64 rng(104);
  double worst = INFINITY;
  int pairs = 0;
  while (pairs < 50) {
    const auto x = std::get<StackPoint>(f.space().random_point(rng));
    const auto y = std::get<StackPoint>(f.space().random_point(rng));
    const double rx = x.outer() ? 2.0 : oracle::ring_radius(x.ring);
    const double ry = y.outer() ? 2.0 : oracle::ring_radius(y.ring);
    const double lb = x.ring == y.ring ? oracle::arc(x.angle, y.angle) : std::fabs(rx - ry);
    if (!(lb > 0)) continue;
    ++pairs;
    const auto rs = proximality(f, x, y, 1e-12, 10'000);
    worst = std::min(worst, rs.min_value / lb);
  }
  const OdometerSystem odo(6);
  std::uniform_int_distribution<std::uint64_t> pick(0, 63);
  double worst_odo = INFINITY;
  for (int n = 0; n < 50;) {
    const OdometerElement a{pick(rng), 6};
    const OdometerElement b{pick(rng), 6};
    if (a == b) continue;
    ++n;
    const auto rs = proximality(odo, a, b, 1e-12, 10'000);
    worst_odo = std::min(worst_odo, rs.min_value / odo.distance(a, b));
  }
  return {worst >= 0.99 && worst_odo >= 0.99,
          "worst min/lower-bound ratio " + fmt("%.6g", worst) + " on X, " + fmt("%.6g", worst_odo) +
              " on the odometer"};
}

// 5 ------------------------------------------------------------------------
Outcome_ rigidity_contrast() {
  std::string detail;
  bool ok = true;
  for (int k = 3; k <= 8; ++k) {
    const auto f = flow(FlowKind::circle_stack, k);
    std::vector<Point> pts;
    for (int ring = 0; ring <= k; ++ring) pts.emplace_back(StackPoint{ring, 0.3});
    const auto w = weak_rigidity(f, pts, 0.25, 1000);
    const auto u = uniform_rigidity(f, f.space().sample_grid(8).points, 0.25, 1000);
    const std::int64_t expect = std::int64_t{1} << k;
    ok = ok && w.time && *w.time == expect && u.time && *u.time == expect;
    detail += (detail.empty() ? "" : ", ") + std::string("k=") + std::to_string(k) + ": " +
              std::to_string(w.time.value_or(-1)) + "/" + std::to_string(u.time.value_or(-1));
  }
  return {ok, "weak/uniform return times " + detail};
}

// 6 ------------------------------------------------------------------------
Outcome_ full_shift_corollary() {
  const auto f = flow(FlowKind::full_shift);
  const Point single = SeqPoint::with_block(0, "1");
  const auto w = weak_rigidity(f, {single}, 0.5, 10'000);
  const FunctionMetric metric(f.space(), make_grid({single}), {1.0});
  const auto approx = approximate_semigroup(f, metric, 1000, 0.5, ScanDirections::both);
  const auto iso = is_isolated_identity(approx, 0.5);
  return {!w.time && w.best_distance == 1.0 && iso.isolated,
          std::string("weak rigidity ") + (w.time ? "found a return" : "none") +
              ", min distance " + fmt("%.12g", w.best_distance) + ", identity " +
              (iso.isolated ? "isolated" : "not isolated")};
}

// 7 ------------------------------------------------------------------------
Outcome_ torus_sensitivity() {
  const auto f = flow(FlowKind::torus_circle);
  std::vector<Point> grid;
  for (int i = 0; i < 32; ++i) {
    for (int j = 0; j < 32; ++j) {
      grid.emplace_back(TorusOrCirclePoint{Part::torus, i / 32.0, j / 32.0});
    }
  }
  const auto r = sensitivity(f, grid, 1000, DetectorDefaults::epsilon_ladder());
  bool witnesses_ok = r.witnesses.size() == grid.size();
  for (const auto& w : r.witnesses) {
    const double d = f.distance(f.apply(w.time, w.points[0]), f.apply(w.time, w.points[1]));
    witnesses_ok = witnesses_ok && std::fabs(d - w.distance) < 1e-9 && r.epsilon && d > *r.epsilon;
  }
  const auto rot = flow(FlowKind::rotation);
  const auto id = flow(FlowKind::identity);
  const auto rr = sensitivity(rot, rot.space().sample_grid(32).points, 1000,
                              DetectorDefaults::epsilon_ladder());
  const auto ri = sensitivity(id, id.space().sample_grid(32).points, 1000,
                              DetectorDefaults::epsilon_ladder());
  const bool ok = r.epsilon && *r.epsilon >= 0.2 && witnesses_ok && !rr.epsilon && !ri.epsilon;
  return {ok, "torus eps " + (r.epsilon ? fmt("%.3g", *r.epsilon) : std::string("none")) + " with " +
                  std::to_string(r.witnesses.size()) + " replayed witnesses; rotation " +
                  (rr.epsilon ? "sensitive" : "none") + ", identity " +
                  (ri.epsilon ? "sensitive" : "none")};
}

// 8, 9 -----------------------------------------------------------------------
struct ShiftPairData {
  std::vector<SampledMap> pool;
  std::vector<ReturnSet> returns;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::optional<InducedSystem> sys;
  SampledMap collapse;
};

const std::int64_t kPairHorizon = 1000;
const std::int64_t kGap = 100;

ShiftPairData& shift_data() {
  static ShiftPairData* d = [] {
    const auto f = flow(FlowKind::shift_pair);
    const ShiftAlgebra alg("1", 8);
    const auto grid = make_grid(f.space().sample_grid(1).points);
    auto* out = new ShiftPairData{{}, {}, {}, std::nullopt,
                                  sample_symbolic(alg, ShiftElement::collapse(), grid)};
    for (int n = -20; n <= 20; ++n) out->pool.push_back(sample_symbolic(alg, ShiftElement::power(n), grid));
    out->pool.push_back(out->collapse);
    out->sys.emplace(f, FunctionMetric::uniform(f.space(), grid), out->pool);
    for (std::size_t i = 0; i < out->pool.size(); ++i) {
      for (std::size_t j = i + 1; j < out->pool.size(); ++j) {
        out->pairs.emplace_back(i, j);
        out->returns.push_back(proximality(*out->sys, out->pool[i], out->pool[j], 0.25, kPairHorizon));
      }
    }
    return out;
  }();
  return *d;
}

Outcome_ shift_pair_legs() {
  const auto f = flow(FlowKind::shift_pair);
  const auto y = proximality(f, SeqPoint::constant(0), SeqPoint::constant(1), 0.5, 10'000);
  auto& d = shift_data();
  std::size_t proximal = 0;
  std::size_t thick = 0;
  for (const auto& rs : d.returns) {
    proximal += !rs.hits.empty();
    thick += thick_syndeticity(rs, 5, kGap).outcome == Outcome::holds;
  }
  const auto fp = unique_minimal_fixed_point(*d.sys, d.pool, 0.25, kPairHorizon);
  const bool fixed_is_collapse =
      fp.verdict.outcome == Outcome::holds && fp.point && d.sys->distance(*fp.point, d.collapse) == 0.0;
  const bool ok = y.hits.empty() && y.min_value == 1.0 && proximal == d.returns.size() &&
                  fixed_is_collapse && thick == d.returns.size();
  return {ok, "Y pair min " + fmt("%.12g", y.min_value) + "; E(Y): " + std::to_string(proximal) + "/" +
                  std::to_string(d.returns.size()) + " pairs proximal, fixed point " +
                  (fixed_is_collapse ? "g" : "not g") + ", " + std::to_string(thick) + " thick at k=5"};
}

Outcome_ ts_both_directions() {
  auto& d = shift_data();
  std::size_t checked = 0;
  std::size_t bad = 0;
  for (std::int64_t k = 1; k <= 5; ++k) {
    // eps' from uniform continuity over [0, k): a pair closer than eps' at t
    // stays eps-close for the next k - 1 steps, on every scanned pair.
    double eps_prime = 0.25;
    for (const auto& rs : d.returns) {
      for (std::int64_t t = -rs.horizon; t + k - 1 <= rs.horizon; ++t) {
        double m = 0.0;
        for (std::int64_t j = 0; j < k; ++j) m = std::max(m, rs.distance_at(t + j));
        if (m >= 0.25) eps_prime = std::min(eps_prime, rs.distance_at(t));
      }
    }
    for (const auto& rs : d.returns) {
      const auto tight = make_return_set(rs.predicate, rs.horizon, eps_prime, rs.distances);
      if (!syndeticity(tight, kGap)) continue;  // only syndetically proximal pairs
      ++checked;
      const bool forward = thick_syndeticity(rs, k, kGap + k - 1).outcome == Outcome::holds;
      const bool backward = syndeticity(rs, kGap + k - 1);
      bad += !(forward && backward);
    }
  }
  return {checked > 0 && bad == 0,
          std::to_string(checked) + " (pair, k) cases, " + std::to_string(bad) + " violations"};
}

// 10, 11 ---------------------------------------------------------------------
Outcome_ harness_integrity() {
  const auto r = run_all(HarnessConfig{});
  bool notes_ok = true;
  for (const auto& c : r.checks) {
    if (c.status == CheckStatus::inconclusive) {
      notes_ok = notes_ok && (c.note.find("horizon") != std::string::npos ||
                              c.note.find("exhausted") != std::string::npos);
    }
  }
  return {r.failed == 0 && r.inconclusive <= 2 && notes_ok,
          std::to_string(r.passed) + " pass, " + std::to_string(r.failed) + " fail, " +
              std::to_string(r.inconclusive) + " inconclusive"};
}

Outcome_ determinism() {
  HarnessConfig one;
  HarnessConfig eight;
  eight.workers = 8;
  ExperimentConfig c1;
  ExperimentConfig c8;
  c8.workers = 8;
  c8.theorems.workers = 8;
  const std::string a = report_json(run_all(one), c1);
  const std::string b = report_json(run_all(eight), c8);
  return {a == b, std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different")};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "composition-table coherence", 1, composition_coherence},
      {2, "numeric/symbolic recovery on the annulus", 30, numeric_symbolic_recovery},
      {3, "iso_G equivariance", 1, iso_equivariance},
      {4, "distality instance (circle stack k=6, odometer)", 30, distality_instance},
      {5, "rigidity contrast on the circle stack", 60, rigidity_contrast},
      {6, "full shift corollary", 10, full_shift_corollary},
      {7, "torus sensitivity", 60, torus_sensitivity},
      {8, "shift pair counterexample, three legs", 30, shift_pair_legs},
      {9, "thick syndeticity both directions", 30, ts_both_directions},
      {10, "harness integrity", 300, harness_integrity},
      {11, "determinism across worker counts", 600, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome_ o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = o.ok && in_time;
    failures += !pass;
    std::printf("[%s] %2d %-48s %7.2fs (budget %gs) %s%s\n", pass ? "PASS" : "FAIL", c.number,
                c.name.c_str(), secs, c.budget_seconds, o.detail.c_str(),
                in_time ? "" : " [over time budget]");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
