#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace envlab {

/// Reduces an angle (in turns) into [0, 1).
double wrap_unit(double angle);
long double wrap_unit(long double angle);

/// Arc distance on the unit-circumference circle: min(|a-b|, 1-|a-b|).
double circle_distance(double a, double b);

struct CirclePoint {
  double angle = 0.0;
};

/// A point of the closed annulus 1 <= r <= 2.
///
/// The radius is stored through its radial depth s, with r = 1 + 2^(-2^s).
/// The squaring map r -> 1 + (r-1)^2 becomes s -> s + 1, so iterates of the
/// annulus flow are exact in both directions. The circle r = 1 has depth
/// +inf and the circle r = 2 has depth -inf.
struct AnnulusPoint {
  double depth = 0.0;
  double angle = 0.0;

  double radius() const;
  static AnnulusPoint from_radius(double radius, double angle);
};

struct TorusPoint {
  double angle1 = 0.0;
  double angle2 = 0.0;
};

/// A point on one circle of the stacked-circles space.
///
/// Ring n >= 0 has radius 2 - 2^-n (ring 0 is the inner circle r = 1); the
/// outer limit circle r = 2 uses kOuterRing.
struct StackPoint {
  static constexpr int kOuterRing = std::numeric_limits<int>::max();

  int ring = 0;
  double angle = 0.0;

  double radius() const;
  bool outer() const { return ring == kOuterRing; }
};

double ring_radius(int ring);

enum class Part : std::uint8_t { torus, circle };

/// A point of the disjoint union of a 2-torus and a circle. Circle points
/// only use angle1.
struct TorusOrCirclePoint {
  Part part = Part::torus;
  double angle1 = 0.0;
  double angle2 = 0.0;
};

/// A bi-infinite binary sequence that is constant outside a finite block.
///
/// Symbol at coordinate i is bit (i - offset) of `core` for
/// offset <= i < offset + length, `left_fill` to the left and `right_fill`
/// to the right. Shifts only move `offset`, so orbits are exact.
struct SeqPoint {
  static constexpr int kMaxCore = 64;

  std::uint64_t core = 0;
  std::uint8_t length = 0;
  std::int64_t offset = 0;
  std::uint8_t left_fill = 0;
  std::uint8_t right_fill = 0;

  int symbol(std::int64_t i) const;
  /// Left shift by t: (sigma^t s)_i = s_{i+t}.
  SeqPoint shifted(std::int64_t t) const;
  /// Symbols on [-radius, radius] as a string of '0'/'1'.
  std::string window(int radius) const;
  /// Fill pattern tag such as "0|0" or "1|1".
  std::string tails() const;

  static SeqPoint constant(int fill);
  /// fill^inf . block fill^inf with the block starting at coordinate 0.
  static SeqPoint with_block(int fill, std::string_view block);
};

using Point = std::variant<CirclePoint, AnnulusPoint, TorusPoint, StackPoint,
                           TorusOrCirclePoint, SeqPoint>;

std::string to_string(const Point& p);

enum class SpaceKind : std::uint8_t {
  circle,
  annulus,
  torus,
  circle_stack,
  torus_or_circle,
  shift_pair,
  full_shift,
};

std::string_view to_string(SpaceKind kind);

struct Grid {
  std::vector<Point> points;
  /// Every point of the space lies within `delta` of some grid point.
  double delta = 0.0;
};

/// One of the concrete compact metric spaces.
///
/// Metrics (angles in turns):
///   circle            d_S1
///   annulus           |r - r'| + d_S1
///   torus             d_S1 + d_S1
///   circle stack      |r_m - r_m'| + d_S1
///   torus or circle   within a part as above, 2 across parts
///   sequences         max over |i| <= W of 2^-|i| [s_i != u_i]
class MetricSpace {
 public:
  static MetricSpace circle();
  static MetricSpace annulus();
  static MetricSpace torus();
  static MetricSpace circle_stack(int depth);
  static MetricSpace torus_or_circle();
  static MetricSpace shift_pair(std::string block, int window);
  static MetricSpace full_shift(int window);

  SpaceKind kind() const { return kind_; }
  int depth() const { return depth_; }
  int window() const { return window_; }
  const std::string& block() const { return block_; }

  bool contains(const Point& p) const;
  /// Throws KindError unless both points belong to this space.
  double distance(const Point& a, const Point& b) const;
  bool approx_equal(const Point& a, const Point& b, double tol = 1e-9) const;
  double diameter() const;

  Grid sample_grid(int resolution) const;
  /// Deterministic probe points y with 0 < d(x, y) < delta.
  std::vector<Point> neighbors(const Point& x, double delta) const;
  Point random_point(std::mt19937_64& rng) const;

  std::string describe() const;

  bool operator==(const MetricSpace&) const = default;

 private:
  MetricSpace(SpaceKind kind, int depth, int window, std::string block);

  void require_member(const Point& p) const;

  SpaceKind kind_;
  int depth_ = 0;
  int window_ = 0;
  std::string block_;
};

/// The metric entourage {(x, y) : d(x, y) < epsilon}.
class Entourage {
 public:
  explicit Entourage(double epsilon);
  double epsilon() const { return epsilon_; }
  bool contains(const MetricSpace& space, const Point& a, const Point& b) const;
  /// U[x] restricted to a finite candidate set.
  std::vector<Point> ball(const MetricSpace& space, const Point& x,
                          const std::vector<Point>& candidates) const;

 private:
  double epsilon_;
};

}  // namespace envlab
