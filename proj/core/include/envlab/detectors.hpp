#pragma once

#include <algorithm>
#include <concepts>
#include <cstdlib>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "envlab/error.hpp"
#include "envlab/parallel.hpp"
#include "envlab/verdict.hpp"

namespace envlab {

/// What the detectors need from a flow: the action, a (pseudo)metric, probe
/// points near a given point and a printable form for witnesses.
template <class S>
concept DynamicalSystem = requires(const S& s, std::int64_t t,
                                   const typename S::point_type& p, double d) {
  { s.act(t, p) } -> std::convertible_to<typename S::point_type>;
  { s.distance(p, p) } -> std::convertible_to<double>;
  { s.neighbors(p, d) } -> std::convertible_to<std::vector<typename S::point_type>>;
  { s.describe(p) } -> std::convertible_to<std::string>;
};

struct DetectorDefaults {
  static std::vector<double> epsilon_ladder() { return {0.25, 0.1, 0.05, 0.01}; }
  static std::vector<double> delta_grid() { return {0.1, 0.01, 1e-3, 1e-4}; }
  static std::vector<double> sensitivity_radii() { return {0.1, 0.01, 1e-3}; }
  static constexpr std::int64_t horizon = 10'000;
};

/// A witness that keeps the actual points so it can be replayed.
template <class P>
struct PointWitness {
  std::vector<P> points;
  std::int64_t time = 0;
  double distance = 0.0;
  double epsilon = 0.0;
};

template <DynamicalSystem S>
Witness render(const S& sys, const PointWitness<typename S::point_type>& w,
               std::string note = {}) {
  Witness out;
  for (const auto& p : w.points) out.points.push_back(sys.describe(p));
  out.time = w.time;
  out.distance = w.distance;
  out.epsilon = w.epsilon;
  out.note = std::move(note);
  return out;
}

/// Times 1, -1, 2, -2, ..., +-horizon: smallest |t| first, positive first.
inline std::vector<std::int64_t> nonzero_times(std::int64_t horizon) {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(2 * std::max<std::int64_t>(horizon, 0)));
  for (std::int64_t t = 1; t <= horizon; ++t) {
    out.push_back(t);
    out.push_back(-t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Return sets

struct ReturnSet {
  std::string predicate;
  std::int64_t horizon = 0;
  double epsilon = 0.0;
  /// Sorted t in [-horizon, horizon] where the predicate holds.
  std::vector<std::int64_t> hits;
  /// distances[t + horizon] for every scanned t.
  std::vector<double> distances;
  /// Largest difference of consecutive hits; the window length 2H+1 when
  /// there are fewer than two hits.
  std::int64_t max_gap = 0;
  /// hits.front() - (-H - 1) and (H + 1) - hits.back(); 2H+2 when empty.
  std::int64_t leading_gap = 0;
  std::int64_t trailing_gap = 0;
  double min_value = std::numeric_limits<double>::infinity();
  std::int64_t argmin = 0;

  std::int64_t window() const { return 2 * horizon + 1; }
  double distance_at(std::int64_t t) const {
    return distances.at(static_cast<std::size_t>(t + horizon));
  }
};

/// Builds the return set {t : distances[t + H] < epsilon}.
inline ReturnSet make_return_set(std::string predicate, std::int64_t horizon,
                                 double epsilon, std::vector<double> distances) {
  if (horizon < 0) throw ConfigError("return-set horizon must be >= 0");
  if (distances.size() != static_cast<std::size_t>(2 * horizon + 1)) {
    throw ConfigError("return-set needs one distance per scanned time");
  }
  ReturnSet rs;
  rs.predicate = std::move(predicate);
  rs.horizon = horizon;
  rs.epsilon = epsilon;
  rs.distances = std::move(distances);
  for (std::int64_t t = -horizon; t <= horizon; ++t) {
    const double d = rs.distance_at(t);
    // Ties keep the smaller |t|, positive first.
    if (d < rs.min_value ||
        (d == rs.min_value &&
         (std::llabs(t) < std::llabs(rs.argmin) ||
          (std::llabs(t) == std::llabs(rs.argmin) && t > 0)))) {
      rs.min_value = d;
      rs.argmin = t;
    }
    if (d < epsilon) rs.hits.push_back(t);
  }
  rs.max_gap = rs.window();
  if (rs.hits.size() >= 2) {
    rs.max_gap = 0;
    for (std::size_t i = 1; i < rs.hits.size(); ++i) {
      rs.max_gap = std::max(rs.max_gap, rs.hits[i] - rs.hits[i - 1]);
    }
  }
  if (rs.hits.empty()) {
    rs.leading_gap = rs.trailing_gap = rs.window() + 1;
  } else {
    rs.leading_gap = rs.hits.front() + horizon + 1;
    rs.trailing_gap = horizon + 1 - rs.hits.back();
  }
  return rs;
}

/// Return set of the pair (x, y) into the epsilon-entourage over |t| <= H.
template <DynamicalSystem S>
ReturnSet proximality(const S& sys, const typename S::point_type& x,
                      const typename S::point_type& y, double epsilon,
                      std::int64_t horizon, int workers = 1) {
  if (!(epsilon > 0)) throw ConfigError("proximality epsilon must be positive");
  if (horizon < 0) throw ConfigError("proximality horizon must be >= 0");
  std::vector<double> d(static_cast<std::size_t>(2 * horizon + 1));
  parallel_for(d.size(), workers, [&](std::size_t i) {
    const std::int64_t t = static_cast<std::int64_t>(i) - horizon;
    d[i] = sys.distance(sys.act(t, x), sys.act(t, y));
  });
  return make_return_set("d(tx, ty) < " + std::to_string(epsilon) + " for " +
                             sys.describe(x) + ", " + sys.describe(y),
                         horizon, epsilon, std::move(d));
}

/// Bounded gaps within the window, boundary gaps included: every K
/// consecutive scanned times contain a hit.
inline bool syndeticity(const ReturnSet& rs, std::int64_t K,
                        std::string* note = nullptr) {
  if (K < 1) throw ConfigError("gap bound must be >= 1");
  if (rs.hits.empty()) {
    if (note) *note = "empty return set";
    return false;
  }
  const std::int64_t worst =
      std::max({rs.hits.size() >= 2 ? rs.max_gap : 0, rs.leading_gap,
                rs.trailing_gap});
  if (note) {
    *note = "largest gap " + std::to_string(worst) + " against bound " +
            std::to_string(K) + " on a window of " +
            std::to_string(rs.window()) + " times";
  }
  return worst <= K;
}

/// Start positions of runs [t, t + k - 1] inside the return set.
inline std::vector<std::int64_t> run_starts(const ReturnSet& rs,
                                            std::int64_t k) {
  std::vector<std::int64_t> starts;
  std::int64_t run = 0;
  std::int64_t prev = std::numeric_limits<std::int64_t>::min();
  for (std::int64_t h : rs.hits) {
    run = (h == prev + 1) ? run + 1 : 1;
    prev = h;
    if (run >= k) starts.push_back(h - k + 1);
  }
  return starts;
}

struct ThickSyndeticity {
  Outcome outcome = Outcome::inconclusive;
  std::int64_t run_length = 0;
  std::int64_t gap_bound = 0;
  /// Largest gap among run starts, boundary gaps included.
  std::int64_t worst_gap = 0;
  std::size_t runs = 0;
  std::string note;
};

inline ThickSyndeticity thick_syndeticity(const ReturnSet& rs, std::int64_t k,
                                          std::int64_t K) {
  if (k < 1) throw ConfigError("run length must be >= 1");
  if (K < 1) throw ConfigError("gap bound must be >= 1");
  ThickSyndeticity out{Outcome::inconclusive, k, K, 0, 0, {}};
  if (rs.window() < k) {
    out.note = "window of " + std::to_string(rs.window()) +
               " times is shorter than one run of " + std::to_string(k);
    return out;
  }
  const auto starts = run_starts(rs, k);
  out.runs = starts.size();
  if (starts.empty()) {
    out.outcome = Outcome::fails;
    out.worst_gap = rs.window() - k + 2;
    out.note = "no run of length " + std::to_string(k) + " in the window";
    return out;
  }
  const std::int64_t last_start = rs.horizon - k + 1;
  std::int64_t worst = std::max(starts.front() + rs.horizon + 1,
                                last_start + 1 - starts.back());
  for (std::size_t i = 1; i < starts.size(); ++i) {
    worst = std::max(worst, starts[i] - starts[i - 1]);
  }
  out.worst_gap = worst;
  out.outcome = worst <= K ? Outcome::holds : Outcome::fails;
  out.note = std::to_string(starts.size()) + " runs of length " +
             std::to_string(k) + ", largest start gap " +
             std::to_string(worst);
  return out;
}

// ---------------------------------------------------------------------------
// Equicontinuity and sensitivity

template <class P>
struct EquicontinuityResult {
  std::optional<double> delta;
  Verdict verdict;
  /// The probe that broke the smallest delta tried, if any.
  std::optional<PointWitness<P>> breaker;
};

/// Largest delta in the descending grid such that every probe within delta
/// of x stays epsilon-close to the orbit of x for |t| <= H.
template <DynamicalSystem S>
EquicontinuityResult<typename S::point_type> equicontinuity_at(
    const S& sys, const typename S::point_type& x, double epsilon,
    std::int64_t horizon, const std::vector<double>& delta_grid) {
  using P = typename S::point_type;
  if (!(epsilon > 0)) throw ConfigError("equicontinuity epsilon must be positive");
  if (delta_grid.empty()) throw ConfigError("delta grid must be nonempty");
  EquicontinuityResult<P> out;
  const std::string property = "equicontinuity at " + sys.describe(x);
  std::vector<std::int64_t> times{0};
  for (std::int64_t t : nonzero_times(horizon)) times.push_back(t);
  std::vector<P> orbit;
  orbit.reserve(times.size());
  for (std::int64_t t : times) orbit.push_back(sys.act(t, x));

  for (double delta : delta_grid) {
    std::optional<PointWitness<P>> bad;
    double worst = 0.0;
    const auto probes = sys.neighbors(x, delta);
    for (const auto& y : probes) {
      for (std::size_t i = 0; i < times.size(); ++i) {
        const double d = sys.distance(orbit[i], sys.act(times[i], y));
        worst = std::max(worst, d);
        if (d >= epsilon) {
          bad = PointWitness<P>{{x, y}, times[i], d, epsilon};
          break;
        }
      }
      if (bad) break;
    }
    if (!bad) {
      out.delta = delta;
      Witness w{{sys.describe(x)}, horizon, worst, epsilon,
                std::to_string(probes.size()) + " probes within " +
                    std::to_string(delta) + " stay within epsilon for |t| <= " +
                    std::to_string(horizon)};
      out.verdict = Verdict::holds(property, {w});
      out.verdict.with("delta", delta);
      break;
    }
    out.breaker = bad;
  }
  if (!out.delta) {
    out.verdict = Verdict::fails(
        property, {render(sys, *out.breaker, "probe leaves the epsilon-tube")},
        "no delta in the grid works down to " +
            std::to_string(delta_grid.back()));
  }
  out.verdict.with("epsilon", epsilon).with("horizon", double(horizon));
  return out;
}

template <class P>
struct SensitivityResult {
  std::optional<double> epsilon;
  Verdict verdict;
  /// min over grid points and radii of the best separation found.
  double min_separation = 0.0;
  /// One witness per grid point, taken at the smallest radius.
  std::vector<PointWitness<P>> witnesses;
};

/// Largest candidate epsilon such that near every grid point, at every probe
/// radius, some probe separates from it by more than epsilon within |t| <= H.
template <DynamicalSystem S>
SensitivityResult<typename S::point_type> sensitivity(
    const S& sys, const std::vector<typename S::point_type>& grid,
    std::int64_t horizon, std::vector<double> epsilon_candidates,
    std::vector<double> radii = DetectorDefaults::sensitivity_radii(),
    int workers = 1) {
  using P = typename S::point_type;
  if (grid.empty()) throw ConfigError("sensitivity needs a nonempty grid");
  if (epsilon_candidates.empty() || radii.empty()) {
    throw ConfigError("sensitivity needs epsilon candidates and radii");
  }
  std::sort(epsilon_candidates.rbegin(), epsilon_candidates.rend());
  const double top = epsilon_candidates.front();
  std::vector<std::int64_t> times = nonzero_times(horizon);

  struct Slot {
    double separation = std::numeric_limits<double>::infinity();
    PointWitness<P> witness;
  };
  std::vector<Slot> slots(grid.size());
  parallel_for(grid.size(), workers, [&](std::size_t gi) {
    const P& x = grid[gi];
    Slot slot;
    for (double delta : radii) {
      PointWitness<P> best{{x, x}, 0, -1.0, 0.0};
      for (const auto& y : sys.neighbors(x, delta)) {
        for (std::int64_t t : times) {
          const double d = sys.distance(sys.act(t, x), sys.act(t, y));
          if (d > best.distance) best = {{x, y}, t, d, 0.0};
          if (d > top) break;
        }
        if (best.distance > top) break;
      }
      const double sep = std::max(best.distance, 0.0);
      if (sep <= slot.separation) {
        slot.separation = sep;
        slot.witness = best;
      }
    }
    slots[gi] = std::move(slot);
  });

  SensitivityResult<P> out;
  out.min_separation = std::numeric_limits<double>::infinity();
  for (const auto& s : slots) out.min_separation = std::min(out.min_separation, s.separation);
  for (double eps : epsilon_candidates) {
    if (out.min_separation > eps) {
      out.epsilon = eps;
      break;
    }
  }
  const std::string property = "sensitivity";
  if (out.epsilon) {
    std::vector<Witness> ws;
    for (auto& s : slots) {
      s.witness.epsilon = *out.epsilon;
      out.witnesses.push_back(s.witness);
    }
    // The report keeps the tightest witness; all of them live in `witnesses`.
    auto tight = std::min_element(slots.begin(), slots.end(),
                                  [](const Slot& a, const Slot& b) {
                                    return a.separation < b.separation;
                                  });
    ws.push_back(render(sys, tight->witness, "tightest of " +
                                                 std::to_string(slots.size()) +
                                                 " per-point witnesses"));
    out.verdict = Verdict::holds(property, ws);
    out.verdict.with("sensitivity_constant", *out.epsilon);
  } else {
    auto loose = std::min_element(slots.begin(), slots.end(),
                                  [](const Slot& a, const Slot& b) {
                                    return a.separation < b.separation;
                                  });
    loose->witness.epsilon = epsilon_candidates.back();
    out.verdict = Verdict::fails(
        property,
        {render(sys, loose->witness, "best separation near this point")},
        "no candidate epsilon is exceeded near every grid point within |t| <= " +
            std::to_string(horizon));
  }
  out.verdict.with("horizon", double(horizon))
      .with("grid_points", double(grid.size()))
      .with("min_separation", out.min_separation);
  return out;
}

// ---------------------------------------------------------------------------
// Rigidity

template <class P>
struct RigidityResult {
  std::optional<std::int64_t> time;
  Verdict verdict;
  /// min over scanned t of max_i d(t x_i, x_i)
  double best_distance = std::numeric_limits<double>::infinity();
  std::int64_t best_time = 0;
};

namespace detail {

template <DynamicalSystem S>
RigidityResult<typename S::point_type> first_simultaneous_return(
    const S& sys, const std::vector<typename S::point_type>& points,
    double epsilon, std::int64_t horizon, const std::string& property) {
  if (points.empty()) throw ConfigError(property + " needs a nonempty point set");
  if (!(epsilon > 0)) throw ConfigError(property + " epsilon must be positive");
  RigidityResult<typename S::point_type> out;
  for (std::int64_t t : nonzero_times(horizon)) {
    double worst = 0.0;
    for (const auto& x : points) {
      worst = std::max(worst, sys.distance(sys.act(t, x), x));
      if (worst >= epsilon && worst >= out.best_distance) break;
    }
    if (worst < out.best_distance) {
      out.best_distance = worst;
      out.best_time = t;
    }
    if (worst < epsilon) {
      out.time = t;
      break;
    }
  }
  std::vector<std::string> names;
  for (const auto& x : points) {
    if (names.size() == 4) {
      names.push_back("... " + std::to_string(points.size()) + " points");
      break;
    }
    names.push_back(sys.describe(x));
  }
  Witness w{names, out.best_time, out.best_distance, epsilon, {}};
  if (out.time) {
    w.note = "all points return within epsilon at t = " + std::to_string(*out.time);
    out.verdict = Verdict::holds(property, {w});
    out.verdict.with("time", double(*out.time));
  } else {
    w.note = "closest simultaneous return over 0 < |t| <= " + std::to_string(horizon);
    out.verdict = Verdict::fails(property, {w},
                                 "exhaustive scan of 0 < |t| <= " +
                                     std::to_string(horizon) + " found no return");
  }
  out.verdict.with("epsilon", epsilon)
      .with("horizon", double(horizon))
      .with("best_distance", out.best_distance);
  return out;
}

}  // namespace detail

/// Smallest |t| >= 1 (positive first) with d(t x_i, x_i) < epsilon for all i.
template <DynamicalSystem S>
RigidityResult<typename S::point_type> weak_rigidity(
    const S& sys, const std::vector<typename S::point_type>& points,
    double epsilon, std::int64_t horizon) {
  return detail::first_simultaneous_return(sys, points, epsilon, horizon,
                                           "weak rigidity");
}

/// Smallest |t| >= 1 with max over the grid of d(t x, x) < epsilon.
template <DynamicalSystem S>
RigidityResult<typename S::point_type> uniform_rigidity(
    const S& sys, const std::vector<typename S::point_type>& grid,
    double epsilon, std::int64_t horizon) {
  return detail::first_simultaneous_return(sys, grid, epsilon, horizon,
                                           "uniform rigidity");
}

// ---------------------------------------------------------------------------
// Transitivity and fixed points

struct TransitivityResult {
  bool transitive = false;
  double coverage = 0.0;
  Verdict verdict;
};

template <DynamicalSystem S>
TransitivityResult transitivity(const S& sys, const typename S::point_type& x,
                                double epsilon, std::int64_t horizon,
                                const std::vector<typename S::point_type>& grid,
                                int workers = 1) {
  using P = typename S::point_type;
  if (grid.empty()) throw ConfigError("transitivity needs a nonempty grid");
  std::vector<P> orbit;
  orbit.reserve(static_cast<std::size_t>(2 * horizon + 1));
  for (std::int64_t t = -horizon; t <= horizon; ++t) orbit.push_back(sys.act(t, x));
  std::vector<double> nearest(grid.size(), std::numeric_limits<double>::infinity());
  parallel_for(grid.size(), workers, [&](std::size_t i) {
    for (const auto& o : orbit) {
      nearest[i] = std::min(nearest[i], sys.distance(o, grid[i]));
      if (nearest[i] < epsilon) break;
    }
  });
  std::size_t covered = 0;
  std::size_t worst = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (nearest[i] < epsilon) ++covered;
    if (nearest[i] > nearest[worst]) worst = i;
  }
  TransitivityResult out;
  out.coverage = double(covered) / double(grid.size());
  out.transitive = covered == grid.size();
  const std::string property = "transitivity of " + sys.describe(x);
  Witness w{{sys.describe(x), sys.describe(grid[worst])}, horizon,
            nearest[worst], epsilon, "grid point farthest from the orbit"};
  out.verdict = out.transitive
                    ? Verdict::holds(property, {w})
                    : Verdict::fails(property, {w});
  out.verdict.with("coverage", out.coverage).with("horizon", double(horizon));
  return out;
}

template <class P>
struct FixedPointResult {
  std::optional<P> point;
  std::vector<P> fixed_points;
  Verdict verdict;
};

/// A fixed point p among `grid` whose epsilon-ball every grid orbit enters
/// within |t| <= H. Two distinct fixed points make the answer "fails".
template <DynamicalSystem S>
FixedPointResult<typename S::point_type> unique_minimal_fixed_point(
    const S& sys, const std::vector<typename S::point_type>& grid,
    double epsilon, std::int64_t horizon) {
  using P = typename S::point_type;
  constexpr double kFixedTolerance = 1e-9;
  FixedPointResult<P> out;
  const std::string property = "unique minimal fixed point";
  for (const auto& p : grid) {
    if (!(sys.distance(sys.act(1, p), p) < kFixedTolerance)) continue;
    bool seen = false;
    for (const auto& q : out.fixed_points) {
      if (sys.distance(p, q) < kFixedTolerance) seen = true;
    }
    if (!seen) out.fixed_points.push_back(p);
  }
  if (out.fixed_points.empty()) {
    out.verdict = Verdict::fails(property, {},
                                 "exhaustive scan: none of the " +
                                     std::to_string(grid.size()) +
                                     " points is fixed");
    return out;
  }
  if (out.fixed_points.size() > 1) {
    const auto& a = out.fixed_points[0];
    const auto& b = out.fixed_points[1];
    out.verdict = Verdict::fails(
        property,
        {Witness{{sys.describe(a), sys.describe(b)}, 1, sys.distance(a, b),
                 epsilon, "two distinct fixed points"}});
    return out;
  }
  const P& p = out.fixed_points.front();
  const auto times = nonzero_times(horizon);
  std::int64_t slowest = 0;
  for (const auto& q : grid) {
    std::optional<std::int64_t> entry;
    if (sys.distance(q, p) < epsilon) entry = 0;
    for (std::size_t i = 0; !entry && i < times.size(); ++i) {
      if (sys.distance(sys.act(times[i], q), p) < epsilon) entry = times[i];
    }
    if (!entry) {
      out.verdict = Verdict::inconclusive(
          property, "horizon " + std::to_string(horizon) +
                        " exhausted before the orbit of " + sys.describe(q) +
                        " entered the epsilon-ball of the fixed point");
      return out;
    }
    slowest = std::max(slowest, static_cast<std::int64_t>(std::llabs(*entry)));
  }
  out.point = p;
  out.verdict = Verdict::holds(
      property,
      {Witness{{sys.describe(p)}, slowest, 0.0, epsilon,
               "only fixed point; every orbit enters its epsilon-ball by |t| = " +
                   std::to_string(slowest)}});
  out.verdict.with("epsilon", epsilon).with("horizon", double(horizon));
  return out;
}

}  // namespace envlab
