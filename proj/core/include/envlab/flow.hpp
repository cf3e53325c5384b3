#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "envlab/metric.hpp"

namespace envlab {

/// (sqrt(5) - 1) / 2, the "golden" preset.
inline constexpr double kGolden = 0.6180339887498948482;
/// sqrt(2) - 1, the "silver" preset.
inline constexpr double kSilver = 0.4142135623730950488;

inline constexpr std::int64_t kDefaultHorizonCap = 1'000'000;

enum class FlowKind : std::uint8_t {
  circle_stack,  // (r, theta) -> (r, theta + r) on stacked circles
  annulus,       // (r, theta) -> (1 + (r - 1)^2, theta + alpha)
  torus_circle,  // skew product on the torus, rotation on the circle
  shift_pair,    // left shift on the orbit closures of 0^inf b 0^inf, 1^inf b 1^inf
  full_shift,    // left shift on {0,1}^Z
  rotation,      // theta -> theta + alpha
  identity,      // identity on the circle
};

/// frac(n * x) in [0, 1), accurate for |n| far beyond 2^32.
double turn_fraction(std::int64_t n, double x);

std::string_view to_string(FlowKind kind);
FlowKind flow_kind_from_string(std::string_view name);

struct FlowParams {
  double alpha = kGolden;
  double mu = kSilver;
  int depth = 8;
  std::string block = "1";
  int window = 8;
  std::int64_t horizon_cap = kDefaultHorizonCap;

  bool operator==(const FlowParams&) const = default;
};

struct FlowDescriptor {
  FlowKind kind = FlowKind::rotation;
  FlowParams params;

  bool operator==(const FlowDescriptor&) const = default;
};

/// A Z-action generated by one homeomorphism. Immutable; apply() is pure.
class FlowSystem {
 public:
  using point_type = Point;

  /// Validates parameters; throws ConfigError on bad ranges.
  static FlowSystem make(const FlowDescriptor& descriptor);

  FlowKind kind() const { return descriptor_.kind; }
  const FlowParams& params() const { return descriptor_.params; }
  const FlowDescriptor& descriptor() const { return descriptor_; }
  const MetricSpace& space() const { return space_; }

  /// The t-th iterate pi^t(x). Negative t iterates the inverse generator.
  Point apply(std::int64_t t, const Point& x) const;
  Point step(const Point& x) const { return apply(1, x); }
  Point step_back(const Point& x) const { return apply(-1, x); }

  // Dynamical-system interface used by the detectors.
  Point act(std::int64_t t, const Point& x) const { return apply(t, x); }
  double distance(const Point& a, const Point& b) const {
    return space_.distance(a, b);
  }
  std::vector<Point> neighbors(const Point& x, double delta) const {
    return space_.neighbors(x, delta);
  }
  std::string describe(const Point& x) const { return to_string(x); }

  std::string name() const;

 private:
  FlowSystem(FlowDescriptor descriptor, MetricSpace space);

  FlowDescriptor descriptor_;
  MetricSpace space_;
};

FlowSystem make_flow(const FlowDescriptor& descriptor);

enum class Direction : std::uint8_t { forward, backward, both };

struct OrbitSample {
  std::int64_t t = 0;
  Point point;
};

/// Orbit segment ordered by increasing t: [0, N], [-N, 0] or [-N, N].
std::vector<OrbitSample> orbit(const FlowSystem& flow, const Point& x,
                               std::int64_t horizon, Direction direction);

}  // namespace envlab
