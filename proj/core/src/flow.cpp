#include "envlab/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>

#include "envlab/error.hpp"

namespace envlab {

namespace {

// frac(n * x) without forming the full product: n is split into 21-bit
// chunks and each chunk multiplies the exact fractional part of x * 2^(21k).
long double frac_mul(std::int64_t n, double x) {
  const bool negative = n < 0;
  std::uint64_t m = negative ? std::uint64_t(-(n + 1)) + 1 : std::uint64_t(n);
  long double acc = 0.0L;
  double scaled = x - std::floor(x);
  while (m != 0) {
    std::uint64_t chunk = m & ((std::uint64_t{1} << 21) - 1);
    acc = wrap_unit(acc + static_cast<long double>(chunk) * scaled);
    m >>= 21;
    scaled = std::ldexp(scaled, 21);
    scaled -= std::floor(scaled);
  }
  return negative ? wrap_unit(-acc) : acc;
}

double rotate(double angle, std::int64_t t, double alpha) {
  return static_cast<double>(
      wrap_unit(static_cast<long double>(angle) + frac_mul(t, alpha)));
}

void require_irrational(double value, const char* name) {
  if (!(value > 0.0 && value < 1.0)) {
    throw ConfigError(std::string(name) + " must lie in (0, 1)");
  }
  for (int q = 1; q <= 64; ++q) {
    double scaled = value * q;
    if (std::fabs(scaled - std::round(scaled)) < 1e-12) {
      throw ConfigError(std::string(name) +
                        " is rational with a small denominator; use an "
                        "irrational surrogate such as \"golden\"");
    }
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

double turn_fraction(std::int64_t n, double x) {
  return static_cast<double>(frac_mul(n, x));
}

std::string_view to_string(FlowKind kind) {
  switch (kind) {
    case FlowKind::circle_stack: return "circle-stack";
    case FlowKind::annulus: return "annulus";
    case FlowKind::torus_circle: return "torus-circle";
    case FlowKind::shift_pair: return "shift-pair";
    case FlowKind::full_shift: return "full-shift";
    case FlowKind::rotation: return "rotation";
    case FlowKind::identity: return "identity";
  }
  return "unknown";
}

FlowKind flow_kind_from_string(std::string_view raw) {
  // Underscores are accepted as a spelling of the hyphen.
  std::string name(raw);
  std::replace(name.begin(), name.end(), '_', '-');
  for (auto k : {FlowKind::circle_stack, FlowKind::annulus,
                 FlowKind::torus_circle, FlowKind::shift_pair,
                 FlowKind::full_shift, FlowKind::rotation,
                 FlowKind::identity}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown flow kind \"" + std::string(name) + "\"");
}

FlowSystem::FlowSystem(FlowDescriptor descriptor, MetricSpace space)
    : descriptor_(std::move(descriptor)), space_(std::move(space)) {}

FlowSystem FlowSystem::make(const FlowDescriptor& d) {
  const auto& p = d.params;
  if (p.horizon_cap < 1) throw ConfigError("horizon cap must be >= 1");
  switch (d.kind) {
    case FlowKind::circle_stack:
      return {d, MetricSpace::circle_stack(p.depth)};
    case FlowKind::annulus:
      require_irrational(p.alpha, "alpha");
      return {d, MetricSpace::annulus()};
    case FlowKind::torus_circle:
      require_irrational(p.alpha, "alpha");
      require_irrational(p.mu, "mu");
      return {d, MetricSpace::torus_or_circle()};
    case FlowKind::shift_pair:
      return {d, MetricSpace::shift_pair(p.block, p.window)};
    case FlowKind::full_shift:
      return {d, MetricSpace::full_shift(p.window)};
    case FlowKind::rotation:
      require_irrational(p.alpha, "alpha");
      return {d, MetricSpace::circle()};
    case FlowKind::identity:
      return {d, MetricSpace::circle()};
  }
  throw ConfigError("unknown flow kind");
}

FlowSystem make_flow(const FlowDescriptor& descriptor) {
  return FlowSystem::make(descriptor);
}

Point FlowSystem::apply(std::int64_t t, const Point& x) const {
  if (!space_.contains(x)) {
    throw KindError("point " + to_string(x) + " does not belong to " +
                    space_.describe());
  }
  if (t > params().horizon_cap || t < -params().horizon_cap) {
    throw ConfigError("iterate " + std::to_string(t) +
                      " exceeds the horizon cap");
  }
  if (t == 0) return x;
  const auto& p = params();
  switch (kind()) {
    case FlowKind::identity:
      return x;
    case FlowKind::rotation: {
      const auto& c = std::get<CirclePoint>(x);
      return CirclePoint{rotate(c.angle, t, p.alpha)};
    }
    case FlowKind::annulus: {
      const auto& a = std::get<AnnulusPoint>(x);
      return AnnulusPoint{a.depth + static_cast<double>(t),
                          rotate(a.angle, t, p.alpha)};
    }
    case FlowKind::circle_stack: {
      // Ring n turns by r_n = 2 - 2^-n, i.e. by -2^-n mod 1.
      const auto& s = std::get<StackPoint>(x);
      if (s.ring == 0 || s.outer()) return x;
      const std::int64_t period = std::int64_t{1} << s.ring;
      std::int64_t m = t % period;
      if (m < 0) m += period;
      return StackPoint{s.ring,
                        wrap_unit(s.angle - std::ldexp(double(m), -s.ring))};
    }
    case FlowKind::torus_circle: {
      const auto& q = std::get<TorusOrCirclePoint>(x);
      if (q.part == Part::circle) {
        return TorusOrCirclePoint{Part::circle, rotate(q.angle1, t, p.alpha),
                                  0.0};
      }
      // f^t(a1, a2) = (a1 + t mu, a2 + t a1 + t(t-1)/2 mu)
      const std::int64_t pairs = t * (t - 1) / 2;
      long double a2 = static_cast<long double>(q.angle2) +
                       frac_mul(t, q.angle1) + frac_mul(pairs, p.mu);
      return TorusOrCirclePoint{Part::torus, rotate(q.angle1, t, p.mu),
                                static_cast<double>(wrap_unit(a2))};
    }
    case FlowKind::shift_pair:
    case FlowKind::full_shift:
      return std::get<SeqPoint>(x).shifted(t);
  }
  return x;
}

std::string FlowSystem::name() const {
  const auto& p = params();
  std::string n(to_string(kind()));
  switch (kind()) {
    case FlowKind::circle_stack:
      return n + "(depth=" + std::to_string(p.depth) + ")";
    case FlowKind::annulus:
    case FlowKind::rotation:
      return n + "(alpha=" + fmt(p.alpha) + ")";
    case FlowKind::torus_circle:
      return n + "(mu=" + fmt(p.mu) + ", alpha=" + fmt(p.alpha) + ")";
    case FlowKind::shift_pair:
      return n + "(block=" + p.block + ", window=" + std::to_string(p.window) +
             ")";
    case FlowKind::full_shift:
      return n + "(window=" + std::to_string(p.window) + ")";
    case FlowKind::identity:
      return n;
  }
  return n;
}

std::vector<OrbitSample> orbit(const FlowSystem& flow, const Point& x,
                               std::int64_t horizon, Direction direction) {
  if (horizon < 1) throw ConfigError("orbit horizon must be >= 1");
  std::int64_t lo = direction == Direction::forward ? 0 : -horizon;
  std::int64_t hi = direction == Direction::backward ? 0 : horizon;
  std::vector<OrbitSample> out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t t = lo; t <= hi; ++t) {
    out.push_back({t, flow.apply(t, x)});
  }
  return out;
}

}  // namespace envlab
