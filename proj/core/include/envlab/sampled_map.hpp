#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "envlab/metric.hpp"

namespace envlab {

using GridPtr = std::shared_ptr<const std::vector<Point>>;

GridPtr make_grid(std::vector<Point> points);

/// Where a sampled map came from.
struct Provenance {
  enum class Kind : std::uint8_t { iterate, limit, symbolic, composed };

  Kind kind = Kind::iterate;
  std::int64_t time = 0;      // iterate: the t of pi^t
  std::int64_t cluster = -1;  // limit: cluster id in a semigroup approximation
  std::string label;          // symbolic element or composition note

  static Provenance iterate(std::int64_t t);
  static Provenance symbolic(std::string label);
  std::string describe() const;
};

/// A self-map of X restricted to a finite grid: images[i] is the image of
/// grid[i].
class SampledMap {
 public:
  SampledMap(GridPtr grid, std::vector<Point> images, Provenance provenance);

  const std::vector<Point>& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const std::vector<Point>& images() const { return images_; }
  const Point& image(std::size_t i) const { return images_[i]; }
  std::size_t size() const { return images_.size(); }
  const Provenance& provenance() const { return provenance_; }
  Provenance& provenance() { return provenance_; }

 private:
  GridPtr grid_;
  std::vector<Point> images_;
  Provenance provenance_;
};

bool same_grid(const GridPtr& a, const GridPtr& b);

/// Weighted sum of pointwise distances over a grid:
///   d'(p, q) = sum_i w_i d(p(x_i), q(x_i)).
class FunctionMetric {
 public:
  FunctionMetric(MetricSpace space, GridPtr grid, std::vector<double> weights);

  /// Weights 1/N: the mean pointwise distance.
  static FunctionMetric uniform(MetricSpace space, GridPtr grid);
  /// Circle-stack weights: 2^-n on ring n (1 on the inner and outer circles),
  /// split evenly across the sampled angles of each ring.
  static FunctionMetric stacked(MetricSpace space, GridPtr grid);

  const MetricSpace& space() const { return space_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const std::vector<Point>& grid() const { return *grid_; }
  const std::vector<double>& weights() const { return weights_; }

  double distance(const SampledMap& p, const SampledMap& q) const;
  /// Like distance() but may stop once the partial sum reaches `cap`; the
  /// result is exact whenever it is below `cap`.
  double distance_capped(const SampledMap& p, const SampledMap& q,
                         double cap) const;

 private:
  void require_grid(const SampledMap& p) const;

  MetricSpace space_;
  GridPtr grid_;
  std::vector<double> weights_;
};

double function_distance(const FunctionMetric& fm, const SampledMap& p,
                         const SampledMap& q);

}  // namespace envlab
