#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "envlab/flow.hpp"
#include "envlab/sampled_map.hpp"

namespace envlab {

enum class ScanDirections : std::uint8_t { forward, both };

/// Times visited by the semigroup scans: 0, 1, 2, ... (forward) or
/// 0, 1, -1, 2, -2, ... (both).
std::vector<std::int64_t> scan_order(std::int64_t horizon,
                                     ScanDirections directions);

/// pi^t restricted to the grid.
SampledMap sampled_iterate(const FlowSystem& flow, std::int64_t t,
                           const GridPtr& grid);

/// t . p = pi^t o p. Images are pushed forward by the flow.
SampledMap induced_act(const FlowSystem& flow, std::int64_t t,
                       const SampledMap& p);

/// Greedy epsilon-net over {pi^t : t in scan order}: a finite model of E(X).
struct SemigroupApprox {
  FlowSystem flow;
  FunctionMetric metric;
  double epsilon = 0.0;
  std::int64_t horizon = 0;
  ScanDirections directions = ScanDirections::both;
  /// Cluster representatives in creation order; elements[0] is pi^0.
  std::vector<SampledMap> elements;
  /// All scanned times assigned to each cluster, in scan order.
  std::vector<std::vector<std::int64_t>> witness_times;

  std::size_t size() const { return elements.size(); }
  /// Pairwise function distances between representatives.
  std::vector<std::vector<double>> distance_matrix() const;
};

SemigroupApprox approximate_semigroup(const FlowSystem& flow,
                                      const FunctionMetric& metric,
                                      std::int64_t horizon, double epsilon,
                                      ScanDirections directions);

/// An element of the second-level model: the map p -> pi^t o p, sampled on
/// the representatives of a first-level approximation.
struct SecondLevelMap {
  std::int64_t time = 0;
  std::vector<SampledMap> images;
};

struct SecondLevelApprox {
  double epsilon = 0.0;
  std::int64_t horizon = 0;
  std::vector<SecondLevelMap> elements;
  std::vector<std::vector<std::int64_t>> witness_times;

  std::size_t size() const { return elements.size(); }
};

/// Mean over first-level representatives of the first-level function
/// distance.
double second_level_distance(const FunctionMetric& metric,
                             const SecondLevelMap& a, const SecondLevelMap& b);

SecondLevelApprox second_level_semigroup(const FlowSystem& flow,
                                         const SemigroupApprox& first,
                                         std::int64_t horizon, double epsilon,
                                         ScanDirections directions);

struct IsolationReport {
  bool isolated = false;
  /// min over scanned t != 0 of d'(pi^t, e)
  double nearest_distance = 0.0;
  std::int64_t nearest_time = 0;
};

/// Scans the approximation's own time range for a nonzero iterate within
/// epsilon of the identity.
IsolationReport is_isolated_identity(const SemigroupApprox& first,
                                     double epsilon);

/// The sub-basic entourage S(x0, eps) = {(p, q) : d(p(x0), q(x0)) < eps} on
/// sampled maps; x0 is addressed by its grid index.
struct FunctionEntourage {
  std::size_t base_index = 0;
  double epsilon = 0.0;

  FunctionEntourage(std::size_t base_index, double epsilon);
  double gap(const MetricSpace& space, const SampledMap& p,
             const SampledMap& q) const;
  bool contains(const MetricSpace& space, const SampledMap& p,
                const SampledMap& q) const;
};

/// The induced flow (E(X), T) on a finite pool of sampled maps. Neighbors are
/// drawn from the pool.
class InducedSystem {
 public:
  using point_type = SampledMap;

  InducedSystem(FlowSystem flow, FunctionMetric metric,
                std::vector<SampledMap> pool);

  SampledMap act(std::int64_t t, const SampledMap& p) const {
    return induced_act(flow_, t, p);
  }
  double distance(const SampledMap& a, const SampledMap& b) const {
    return metric_.distance(a, b);
  }
  std::vector<SampledMap> neighbors(const SampledMap& p, double delta) const;
  std::string describe(const SampledMap& p) const {
    return p.provenance().describe();
  }

  const FlowSystem& flow() const { return flow_; }
  const FunctionMetric& metric() const { return metric_; }
  const std::vector<SampledMap>& pool() const { return pool_; }

 private:
  FlowSystem flow_;
  FunctionMetric metric_;
  std::vector<SampledMap> pool_;
};

/// The induced flow measured through one base point: distance is
/// d(p(x0), q(x0)), the pseudometric behind S(x0, eps).
class BasePointSystem {
 public:
  using point_type = SampledMap;

  BasePointSystem(FlowSystem flow, std::size_t base_index,
                  std::vector<SampledMap> pool);

  SampledMap act(std::int64_t t, const SampledMap& p) const;
  double distance(const SampledMap& a, const SampledMap& b) const;
  std::vector<SampledMap> neighbors(const SampledMap& p, double delta) const;
  std::string describe(const SampledMap& p) const {
    return p.provenance().describe();
  }

 private:
  FlowSystem flow_;
  std::size_t base_;
  std::vector<SampledMap> pool_;
};

}  // namespace envlab
