#include "envlab/sampled_map.hpp"

#include <cmath>
#include <map>
#include <utility>

#include "envlab/error.hpp"

namespace envlab {

GridPtr make_grid(std::vector<Point> points) {
  return std::make_shared<const std::vector<Point>>(std::move(points));
}

Provenance Provenance::iterate(std::int64_t t) {
  Provenance p;
  p.kind = Kind::iterate;
  p.time = t;
  return p;
}

Provenance Provenance::symbolic(std::string label) {
  Provenance p;
  p.kind = Kind::symbolic;
  p.label = std::move(label);
  return p;
}

std::string Provenance::describe() const {
  switch (kind) {
    case Kind::iterate: return "pi^" + std::to_string(time);
    case Kind::limit: return "limit#" + std::to_string(cluster);
    case Kind::symbolic: return label;
    case Kind::composed: return label;
  }
  return {};
}

SampledMap::SampledMap(GridPtr grid, std::vector<Point> images,
                       Provenance provenance)
    : grid_(std::move(grid)),
      images_(std::move(images)),
      provenance_(std::move(provenance)) {
  if (!grid_ || grid_->size() != images_.size()) {
    throw GridMismatch("sampled map needs exactly one image per grid point");
  }
}

namespace {

bool same_point(const Point& a, const Point& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b);
        if constexpr (std::is_same_v<T, CirclePoint>) {
          return x.angle == y.angle;
        } else if constexpr (std::is_same_v<T, AnnulusPoint>) {
          return x.depth == y.depth && x.angle == y.angle;
        } else if constexpr (std::is_same_v<T, TorusPoint>) {
          return x.angle1 == y.angle1 && x.angle2 == y.angle2;
        } else if constexpr (std::is_same_v<T, StackPoint>) {
          return x.ring == y.ring && x.angle == y.angle;
        } else if constexpr (std::is_same_v<T, TorusOrCirclePoint>) {
          return x.part == y.part && x.angle1 == y.angle1 &&
                 x.angle2 == y.angle2;
        } else {
          return x.core == y.core && x.length == y.length &&
                 x.offset == y.offset && x.left_fill == y.left_fill &&
                 x.right_fill == y.right_fill;
        }
      },
      a);
}

}  // namespace

bool same_grid(const GridPtr& a, const GridPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->size() != b->size()) return false;
  for (std::size_t i = 0; i < a->size(); ++i) {
    if (!same_point((*a)[i], (*b)[i])) return false;
  }
  return true;
}

FunctionMetric::FunctionMetric(MetricSpace space, GridPtr grid,
                               std::vector<double> weights)
    : space_(std::move(space)),
      grid_(std::move(grid)),
      weights_(std::move(weights)) {
  if (!grid_ || grid_->empty()) throw ConfigError("function metric needs a grid");
  if (weights_.size() != grid_->size()) {
    throw ConfigError("function metric needs one weight per grid point");
  }
  for (double w : weights_) {
    if (!(w > 0) || !std::isfinite(w)) {
      throw ConfigError("function metric weights must be positive and finite");
    }
  }
  for (const auto& p : *grid_) {
    if (!space_.contains(p)) throw KindError("grid point outside the space");
  }
}

FunctionMetric FunctionMetric::uniform(MetricSpace space, GridPtr grid) {
  const std::size_t n = grid ? grid->size() : 0;
  return {std::move(space), std::move(grid),
          std::vector<double>(n, n ? 1.0 / double(n) : 0.0)};
}

FunctionMetric FunctionMetric::stacked(MetricSpace space, GridPtr grid) {
  if (space.kind() != SpaceKind::circle_stack) {
    throw KindError("stacked weights need a circle-stack space");
  }
  std::map<int, int> per_ring;
  for (const auto& p : *grid) {
    const auto* s = std::get_if<StackPoint>(&p);
    if (!s) throw KindError("grid point outside the circle-stack space");
    ++per_ring[s->ring];
  }
  std::vector<double> w;
  w.reserve(grid->size());
  for (const auto& p : *grid) {
    const auto& s = std::get<StackPoint>(p);
    double ring_weight = s.outer() ? 1.0 : std::ldexp(1.0, -s.ring);
    w.push_back(ring_weight / per_ring[s.ring]);
  }
  return {std::move(space), std::move(grid), std::move(w)};
}

void FunctionMetric::require_grid(const SampledMap& p) const {
  if (!same_grid(p.grid_ptr(), grid_)) {
    throw GridMismatch("sampled map is defined on a different grid");
  }
}

double FunctionMetric::distance(const SampledMap& p,
                                const SampledMap& q) const {
  require_grid(p);
  require_grid(q);
  double sum = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    sum += weights_[i] * space_.distance(p.image(i), q.image(i));
  }
  return sum;
}

double FunctionMetric::distance_capped(const SampledMap& p, const SampledMap& q,
                                       double cap) const {
  require_grid(p);
  require_grid(q);
  double sum = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    sum += weights_[i] * space_.distance(p.image(i), q.image(i));
    if (sum >= cap) return sum;
  }
  return sum;
}

double function_distance(const FunctionMetric& fm, const SampledMap& p,
                         const SampledMap& q) {
  return fm.distance(p, q);
}

}  // namespace envlab
