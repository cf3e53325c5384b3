#include "envlab/envelope_numeric.hpp"

#include <limits>
#include <utility>

#include "envlab/error.hpp"

namespace envlab {

std::vector<std::int64_t> scan_order(std::int64_t horizon,
                                     ScanDirections directions) {
  if (horizon < 0) throw ConfigError("scan horizon must be >= 0");
  std::vector<std::int64_t> order;
  order.reserve(static_cast<std::size_t>(
      directions == ScanDirections::both ? 2 * horizon + 1 : horizon + 1));
  order.push_back(0);
  for (std::int64_t t = 1; t <= horizon; ++t) {
    order.push_back(t);
    if (directions == ScanDirections::both) order.push_back(-t);
  }
  return order;
}

SampledMap sampled_iterate(const FlowSystem& flow, std::int64_t t,
                           const GridPtr& grid) {
  std::vector<Point> images;
  images.reserve(grid->size());
  for (const auto& x : *grid) images.push_back(flow.apply(t, x));
  return SampledMap(grid, std::move(images), Provenance::iterate(t));
}

SampledMap induced_act(const FlowSystem& flow, std::int64_t t,
                       const SampledMap& p) {
  if (t == 0) return p;
  std::vector<Point> images;
  images.reserve(p.size());
  for (const auto& y : p.images()) images.push_back(flow.apply(t, y));
  Provenance prov = p.provenance();
  if (prov.kind == Provenance::Kind::iterate) {
    prov.time += t;
  } else {
    prov.kind = Provenance::Kind::composed;
    prov.label = "pi^" + std::to_string(t) + " o " + p.provenance().describe();
  }
  return SampledMap(p.grid_ptr(), std::move(images), std::move(prov));
}

std::vector<std::vector<double>> SemigroupApprox::distance_matrix() const {
  const std::size_t n = elements.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      m[i][j] = m[j][i] = metric.distance(elements[i], elements[j]);
    }
  }
  return m;
}

SemigroupApprox approximate_semigroup(const FlowSystem& flow,
                                      const FunctionMetric& metric,
                                      std::int64_t horizon, double epsilon,
                                      ScanDirections directions) {
  if (!(epsilon > 0)) throw ConfigError("clustering epsilon must be positive");
  if (horizon < 1) throw ConfigError("semigroup horizon must be >= 1");
  if (!(metric.space() == flow.space())) {
    throw KindError("function metric lives on a different space");
  }
  SemigroupApprox approx{flow, metric, epsilon, horizon, directions, {}, {}};
  // The last matched cluster is tried first; it is the usual hit for
  // consecutive times, and any cluster within epsilon is a valid assignment.
  std::size_t last = 0;
  for (std::int64_t t : scan_order(horizon, directions)) {
    SampledMap it = sampled_iterate(flow, t, metric.grid_ptr());
    std::size_t hit = approx.elements.size();
    if (!approx.elements.empty() &&
        metric.distance_capped(approx.elements[last], it, epsilon) < epsilon) {
      hit = last;
    } else {
      for (std::size_t c = 0; c < approx.elements.size(); ++c) {
        if (c == last) continue;
        if (metric.distance_capped(approx.elements[c], it, epsilon) < epsilon) {
          hit = c;
          break;
        }
      }
    }
    if (hit == approx.elements.size()) {
      it.provenance().cluster = static_cast<std::int64_t>(hit);
      approx.elements.push_back(std::move(it));
      approx.witness_times.push_back({t});
    } else {
      approx.witness_times[hit].push_back(t);
    }
    last = hit;
  }
  return approx;
}

double second_level_distance(const FunctionMetric& metric,
                             const SecondLevelMap& a,
                             const SecondLevelMap& b) {
  if (a.images.size() != b.images.size() || a.images.empty()) {
    throw GridMismatch("second-level maps sampled on different element sets");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < a.images.size(); ++j) {
    sum += metric.distance(a.images[j], b.images[j]);
  }
  return sum / static_cast<double>(a.images.size());
}

SecondLevelApprox second_level_semigroup(const FlowSystem& flow,
                                         const SemigroupApprox& first,
                                         std::int64_t horizon, double epsilon,
                                         ScanDirections directions) {
  if (first.elements.empty()) {
    throw ConfigError("second-level semigroup needs a nonempty first level");
  }
  if (!(epsilon > 0)) throw ConfigError("clustering epsilon must be positive");
  SecondLevelApprox out{epsilon, horizon, {}, {}};
  std::size_t last = 0;
  for (std::int64_t t : scan_order(horizon, directions)) {
    SecondLevelMap m{t, {}};
    m.images.reserve(first.elements.size());
    for (const auto& p : first.elements) {
      m.images.push_back(induced_act(flow, t, p));
    }
    std::size_t hit = out.elements.size();
    if (!out.elements.empty() &&
        second_level_distance(first.metric, out.elements[last], m) < epsilon) {
      hit = last;
    } else {
      for (std::size_t c = 0; c < out.elements.size(); ++c) {
        if (c == last) continue;
        if (second_level_distance(first.metric, out.elements[c], m) <
            epsilon) {
          hit = c;
          break;
        }
      }
    }
    if (hit == out.elements.size()) {
      out.elements.push_back(std::move(m));
      out.witness_times.push_back({t});
    } else {
      out.witness_times[hit].push_back(t);
    }
    last = hit;
  }
  return out;
}

IsolationReport is_isolated_identity(const SemigroupApprox& first,
                                     double epsilon) {
  if (first.elements.empty() ||
      first.elements.front().provenance().time != 0) {
    throw ConfigError("approximation does not start from the identity");
  }
  const SampledMap identity =
      sampled_iterate(first.flow, 0, first.metric.grid_ptr());
  IsolationReport r{true, std::numeric_limits<double>::infinity(), 0};
  for (std::int64_t t : scan_order(first.horizon, first.directions)) {
    if (t == 0) continue;
    double d = first.metric.distance(
        sampled_iterate(first.flow, t, first.metric.grid_ptr()), identity);
    if (d < r.nearest_distance) {
      r.nearest_distance = d;
      r.nearest_time = t;
    }
  }
  r.isolated = !(r.nearest_distance < epsilon);
  return r;
}

FunctionEntourage::FunctionEntourage(std::size_t base_index, double epsilon)
    : base_index(base_index), epsilon(epsilon) {
  if (!(epsilon > 0)) throw ConfigError("entourage epsilon must be positive");
}

double FunctionEntourage::gap(const MetricSpace& space, const SampledMap& p,
                              const SampledMap& q) const {
  if (base_index >= p.size() || base_index >= q.size()) {
    throw GridMismatch("base point index outside the grid");
  }
  return space.distance(p.image(base_index), q.image(base_index));
}

bool FunctionEntourage::contains(const MetricSpace& space, const SampledMap& p,
                                 const SampledMap& q) const {
  return gap(space, p, q) < epsilon;
}

InducedSystem::InducedSystem(FlowSystem flow, FunctionMetric metric,
                             std::vector<SampledMap> pool)
    : flow_(std::move(flow)), metric_(std::move(metric)), pool_(std::move(pool)) {}

std::vector<SampledMap> InducedSystem::neighbors(const SampledMap& p,
                                                 double delta) const {
  std::vector<SampledMap> out;
  for (const auto& q : pool_) {
    double d = metric_.distance(p, q);
    if (d > 0 && d < delta) out.push_back(q);
  }
  return out;
}

BasePointSystem::BasePointSystem(FlowSystem flow, std::size_t base_index,
                                 std::vector<SampledMap> pool)
    : flow_(std::move(flow)), base_(base_index), pool_(std::move(pool)) {}

SampledMap BasePointSystem::act(std::int64_t t, const SampledMap& p) const {
  return induced_act(flow_, t, p);
}

double BasePointSystem::distance(const SampledMap& a,
                                 const SampledMap& b) const {
  return FunctionEntourage(base_, 1.0).gap(flow_.space(), a, b);
}

std::vector<SampledMap> BasePointSystem::neighbors(const SampledMap& p,
                                                   double delta) const {
  std::vector<SampledMap> out;
  for (const auto& q : pool_) {
    double d = distance(p, q);
    if (d > 0 && d < delta) out.push_back(q);
  }
  return out;
}

}  // namespace envlab
