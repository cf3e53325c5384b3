#include "envlab/metric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "envlab/error.hpp"

namespace envlab {

double wrap_unit(double angle) {
  double r = angle - std::floor(angle);
  return r >= 1.0 ? 0.0 : r;
}

long double wrap_unit(long double angle) {
  long double r = angle - std::floor(angle);
  return r >= 1.0L ? 0.0L : r;
}

double circle_distance(double a, double b) {
  double d = std::fabs(wrap_unit(a) - wrap_unit(b));
  return std::min(d, 1.0 - d);
}

double AnnulusPoint::radius() const {
  if (std::isinf(depth)) return depth > 0 ? 1.0 : 2.0;
  return 1.0 + std::exp2(-std::exp2(depth));
}

AnnulusPoint AnnulusPoint::from_radius(double radius, double angle) {
  if (!(radius >= 1.0 && radius <= 2.0)) {
    throw ConfigError("annulus radius outside [1, 2]");
  }
  double u = radius - 1.0;
  double depth;
  if (u == 0.0) {
    depth = std::numeric_limits<double>::infinity();
  } else if (u == 1.0) {
    depth = -std::numeric_limits<double>::infinity();
  } else {
    depth = std::log2(-std::log2(u));
  }
  return AnnulusPoint{depth, wrap_unit(angle)};
}

double ring_radius(int ring) {
  if (ring == StackPoint::kOuterRing) return 2.0;
  return 2.0 - std::ldexp(1.0, -ring);
}

double StackPoint::radius() const { return ring_radius(ring); }

int SeqPoint::symbol(std::int64_t i) const {
  if (i < offset) return left_fill;
  if (i >= offset + length) return right_fill;
  return static_cast<int>((core >> (i - offset)) & 1U);
}

SeqPoint SeqPoint::shifted(std::int64_t t) const {
  SeqPoint s = *this;
  s.offset -= t;
  return s;
}

std::string SeqPoint::window(int radius) const {
  std::string w;
  w.reserve(static_cast<std::size_t>(2 * radius + 1));
  for (std::int64_t i = -radius; i <= radius; ++i) {
    w.push_back(symbol(i) ? '1' : '0');
  }
  return w;
}

std::string SeqPoint::tails() const {
  std::string t;
  t.push_back(left_fill ? '1' : '0');
  t.push_back('|');
  t.push_back(right_fill ? '1' : '0');
  return t;
}

SeqPoint SeqPoint::constant(int fill) {
  SeqPoint s;
  s.left_fill = s.right_fill = static_cast<std::uint8_t>(fill != 0);
  return s;
}

SeqPoint SeqPoint::with_block(int fill, std::string_view block) {
  if (block.size() > static_cast<std::size_t>(kMaxCore)) {
    throw ConfigError("sequence block longer than 64 symbols");
  }
  SeqPoint s = constant(fill);
  s.length = static_cast<std::uint8_t>(block.size());
  for (std::size_t j = 0; j < block.size(); ++j) {
    if (block[j] == '1') {
      s.core |= std::uint64_t{1} << j;
    } else if (block[j] != '0') {
      throw ConfigError("sequence block must be a word over {0,1}");
    }
  }
  return s;
}

namespace {

// Returns s with coordinate i set to v, extending the core block as needed.
SeqPoint with_symbol(const SeqPoint& s, std::int64_t i, int v) {
  std::int64_t lo = std::min<std::int64_t>(s.offset, i);
  std::int64_t hi = std::max<std::int64_t>(s.offset + s.length, i + 1);
  if (hi - lo > SeqPoint::kMaxCore) {
    throw ConfigError("sequence core would exceed 64 symbols");
  }
  SeqPoint out = s;
  out.offset = lo;
  out.length = static_cast<std::uint8_t>(hi - lo);
  out.core = 0;
  for (std::int64_t c = lo; c < hi; ++c) {
    int bit = c == i ? v : s.symbol(c);
    if (bit) out.core |= std::uint64_t{1} << (c - lo);
  }
  return out;
}

double seq_distance(const SeqPoint& a, const SeqPoint& b, int window) {
  if (a.symbol(0) != b.symbol(0)) return 1.0;
  for (int m = 1; m <= window; ++m) {
    if (a.symbol(m) != b.symbol(m) || a.symbol(-m) != b.symbol(-m)) {
      return std::ldexp(1.0, -m);
    }
  }
  return 0.0;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string to_string(const Point& p) {
  return std::visit(
      overloaded{
          [](const CirclePoint& c) {
            return "circle(" + fmt_double(c.angle) + ")";
          },
          [](const AnnulusPoint& a) {
            return "annulus(r=" + fmt_double(a.radius()) +
                   ", angle=" + fmt_double(a.angle) + ")";
          },
          [](const TorusPoint& t) {
            return "torus(" + fmt_double(t.angle1) + ", " +
                   fmt_double(t.angle2) + ")";
          },
          [](const StackPoint& s) {
            std::string ring =
                s.outer() ? std::string("outer") : std::to_string(s.ring);
            return "stack(ring=" + ring + ", angle=" + fmt_double(s.angle) +
                   ")";
          },
          [](const TorusOrCirclePoint& t) {
            if (t.part == Part::circle) {
              return "circle-part(" + fmt_double(t.angle1) + ")";
            }
            return "torus-part(" + fmt_double(t.angle1) + ", " +
                   fmt_double(t.angle2) + ")";
          },
          [](const SeqPoint& s) {
            std::string out = "seq(";
            out.push_back(s.left_fill ? '1' : '0');
            out += "^inf [";
            for (int j = 0; j < s.length; ++j) {
              out.push_back(((s.core >> j) & 1U) ? '1' : '0');
            }
            out += "]@" + std::to_string(s.offset) + " ";
            out.push_back(s.right_fill ? '1' : '0');
            out += "^inf)";
            return out;
          },
      },
      p);
}

std::string_view to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::circle: return "circle";
    case SpaceKind::annulus: return "annulus";
    case SpaceKind::torus: return "torus";
    case SpaceKind::circle_stack: return "circle-stack";
    case SpaceKind::torus_or_circle: return "torus-or-circle";
    case SpaceKind::shift_pair: return "shift-pair";
    case SpaceKind::full_shift: return "full-shift";
  }
  return "unknown";
}

MetricSpace::MetricSpace(SpaceKind kind, int depth, int window,
                         std::string block)
    : kind_(kind), depth_(depth), window_(window), block_(std::move(block)) {}

MetricSpace MetricSpace::circle() { return {SpaceKind::circle, 0, 0, {}}; }
MetricSpace MetricSpace::annulus() { return {SpaceKind::annulus, 0, 0, {}}; }
MetricSpace MetricSpace::torus() { return {SpaceKind::torus, 0, 0, {}}; }

MetricSpace MetricSpace::circle_stack(int depth) {
  if (depth < 1 || depth > 30) {
    throw ConfigError("circle-stack depth must be in [1, 30]");
  }
  return {SpaceKind::circle_stack, depth, 0, {}};
}

MetricSpace MetricSpace::torus_or_circle() {
  return {SpaceKind::torus_or_circle, 0, 0, {}};
}

MetricSpace MetricSpace::shift_pair(std::string block, int window) {
  if (block.empty()) throw ConfigError("shift-pair block must be nonempty");
  if (window < static_cast<int>(block.size()) || window > 30) {
    throw ConfigError("shift-pair window must satisfy |b| <= W <= 30");
  }
  (void)SeqPoint::with_block(0, block);  // validates the alphabet
  return {SpaceKind::shift_pair, 0, window, std::move(block)};
}

MetricSpace MetricSpace::full_shift(int window) {
  if (window < 1 || window > 30) {
    throw ConfigError("full-shift window must be in [1, 30]");
  }
  return {SpaceKind::full_shift, 0, window, {}};
}

bool MetricSpace::contains(const Point& p) const {
  switch (kind_) {
    case SpaceKind::circle:
      return std::holds_alternative<CirclePoint>(p);
    case SpaceKind::annulus:
      return std::holds_alternative<AnnulusPoint>(p);
    case SpaceKind::torus:
      return std::holds_alternative<TorusPoint>(p);
    case SpaceKind::circle_stack: {
      const auto* s = std::get_if<StackPoint>(&p);
      return s && (s->outer() || (s->ring >= 0 && s->ring <= depth_));
    }
    case SpaceKind::torus_or_circle:
      return std::holds_alternative<TorusOrCirclePoint>(p);
    case SpaceKind::shift_pair:
    case SpaceKind::full_shift:
      return std::holds_alternative<SeqPoint>(p);
  }
  return false;
}

void MetricSpace::require_member(const Point& p) const {
  if (!contains(p)) {
    throw KindError("point " + to_string(p) + " does not belong to the " +
                    std::string(to_string(kind_)) + " space");
  }
}

double MetricSpace::distance(const Point& a, const Point& b) const {
  require_member(a);
  require_member(b);
  switch (kind_) {
    case SpaceKind::circle:
      return circle_distance(std::get<CirclePoint>(a).angle,
                             std::get<CirclePoint>(b).angle);
    case SpaceKind::annulus: {
      const auto& x = std::get<AnnulusPoint>(a);
      const auto& y = std::get<AnnulusPoint>(b);
      double dr = x.depth == y.depth ? 0.0 : std::fabs(x.radius() - y.radius());
      return dr + circle_distance(x.angle, y.angle);
    }
    case SpaceKind::torus: {
      const auto& x = std::get<TorusPoint>(a);
      const auto& y = std::get<TorusPoint>(b);
      return circle_distance(x.angle1, y.angle1) +
             circle_distance(x.angle2, y.angle2);
    }
    case SpaceKind::circle_stack: {
      const auto& x = std::get<StackPoint>(a);
      const auto& y = std::get<StackPoint>(b);
      double dr = x.ring == y.ring ? 0.0 : std::fabs(x.radius() - y.radius());
      return dr + circle_distance(x.angle, y.angle);
    }
    case SpaceKind::torus_or_circle: {
      const auto& x = std::get<TorusOrCirclePoint>(a);
      const auto& y = std::get<TorusOrCirclePoint>(b);
      if (x.part != y.part) return 2.0;
      if (x.part == Part::circle) return circle_distance(x.angle1, y.angle1);
      return circle_distance(x.angle1, y.angle1) +
             circle_distance(x.angle2, y.angle2);
    }
    case SpaceKind::shift_pair:
    case SpaceKind::full_shift:
      return seq_distance(std::get<SeqPoint>(a), std::get<SeqPoint>(b),
                          window_);
  }
  return 0.0;
}

bool MetricSpace::approx_equal(const Point& a, const Point& b,
                               double tol) const {
  return distance(a, b) <= tol;
}

double MetricSpace::diameter() const {
  switch (kind_) {
    case SpaceKind::circle: return 0.5;
    case SpaceKind::annulus: return 1.5;
    case SpaceKind::torus: return 1.0;
    case SpaceKind::circle_stack: return 1.5;
    case SpaceKind::torus_or_circle: return 2.0;
    case SpaceKind::shift_pair:
    case SpaceKind::full_shift: return 1.0;
  }
  return 0.0;
}

Grid MetricSpace::sample_grid(int resolution) const {
  if (resolution < 1) throw ConfigError("grid resolution must be >= 1");
  const int n = resolution;
  const double step = 1.0 / n;
  Grid g;
  switch (kind_) {
    case SpaceKind::circle:
      for (int i = 0; i < n; ++i) g.points.emplace_back(CirclePoint{i * step});
      g.delta = step / 2;
      break;
    case SpaceKind::annulus: {
      std::vector<double> radii;
      if (n == 1) {
        radii.push_back(1.5);
      } else {
        for (int i = 0; i < n; ++i) radii.push_back(1.0 + double(i) / (n - 1));
        radii.back() = 2.0;
      }
      for (double r : radii) {
        for (int j = 0; j < n; ++j) {
          g.points.emplace_back(AnnulusPoint::from_radius(r, j * step));
        }
      }
      g.delta = (n == 1 ? 0.5 : 0.5 / (n - 1)) + step / 2;
      break;
    }
    case SpaceKind::torus:
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          g.points.emplace_back(TorusPoint{i * step, j * step});
        }
      }
      g.delta = step;
      break;
    case SpaceKind::circle_stack: {
      std::vector<int> rings;
      for (int r = 0; r <= depth_; ++r) rings.push_back(r);
      rings.push_back(StackPoint::kOuterRing);
      for (int ring : rings) {
        for (int j = 0; j < n; ++j) {
          g.points.emplace_back(StackPoint{ring, j * step});
        }
      }
      g.delta = step / 2;
      break;
    }
    case SpaceKind::torus_or_circle:
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          g.points.emplace_back(
              TorusOrCirclePoint{Part::torus, i * step, j * step});
        }
      }
      for (int i = 0; i < n; ++i) {
        g.points.emplace_back(TorusOrCirclePoint{Part::circle, i * step, 0.0});
      }
      g.delta = step;
      break;
    case SpaceKind::shift_pair: {
      // Every point of the orbit closure agrees on the window with one of
      // these: shifts with the block visible, or one of the two fills.
      const auto b = static_cast<std::int64_t>(block_.size());
      for (int fill = 0; fill <= 1; ++fill) {
        SeqPoint base = SeqPoint::with_block(fill, block_);
        g.points.emplace_back(SeqPoint::constant(fill));
        for (std::int64_t t = -window_; t <= window_ + b - 1; ++t) {
          g.points.emplace_back(base.shifted(t));
        }
      }
      g.delta = 0.0;
      break;
    }
    case SpaceKind::full_shift: {
      const int m = std::min({n - 1, window_, 9});
      const int len = 2 * m + 1;
      for (std::uint64_t word = 0; word < (std::uint64_t{1} << len); ++word) {
        SeqPoint s = SeqPoint::constant(0);
        s.core = word;
        s.length = static_cast<std::uint8_t>(len);
        s.offset = -m;
        g.points.emplace_back(s);
      }
      g.delta = m < window_ ? std::ldexp(1.0, -(m + 1)) : 0.0;
      break;
    }
  }
  return g;
}

std::vector<Point> MetricSpace::neighbors(const Point& x, double delta) const {
  require_member(x);
  std::vector<Point> out;
  if (!(delta > 0)) return out;
  constexpr double kFractions[] = {0.99, 0.5};
  switch (kind_) {
    case SpaceKind::circle: {
      const auto& c = std::get<CirclePoint>(x);
      for (double f : kFractions) {
        out.emplace_back(CirclePoint{wrap_unit(c.angle + f * delta)});
        out.emplace_back(CirclePoint{wrap_unit(c.angle - f * delta)});
      }
      break;
    }
    case SpaceKind::annulus: {
      const auto& a = std::get<AnnulusPoint>(x);
      const double r = a.radius();
      for (double f : kFractions) {
        for (double dr : {f * delta, -f * delta}) {
          double rr = r + dr;
          if (rr >= 1.0 && rr <= 2.0 && rr != r) {
            out.emplace_back(AnnulusPoint::from_radius(rr, a.angle));
          }
        }
        out.emplace_back(AnnulusPoint{a.depth, wrap_unit(a.angle + f * delta)});
        out.emplace_back(AnnulusPoint{a.depth, wrap_unit(a.angle - f * delta)});
      }
      break;
    }
    case SpaceKind::torus: {
      const auto& t = std::get<TorusPoint>(x);
      for (double f : kFractions) {
        for (double s : {f * delta, -f * delta}) {
          out.emplace_back(TorusPoint{wrap_unit(t.angle1 + s), t.angle2});
          out.emplace_back(TorusPoint{t.angle1, wrap_unit(t.angle2 + s)});
        }
      }
      break;
    }
    case SpaceKind::circle_stack: {
      const auto& s = std::get<StackPoint>(x);
      for (double f : kFractions) {
        out.emplace_back(StackPoint{s.ring, wrap_unit(s.angle + f * delta)});
        out.emplace_back(StackPoint{s.ring, wrap_unit(s.angle - f * delta)});
      }
      std::vector<int> rings;
      for (int r = 0; r <= depth_; ++r) rings.push_back(r);
      rings.push_back(StackPoint::kOuterRing);
      for (int ring : rings) {
        if (ring == s.ring) continue;
        double dr = std::fabs(ring_radius(ring) - s.radius());
        if (dr >= delta) continue;
        out.emplace_back(StackPoint{ring, s.angle});
        out.emplace_back(
            StackPoint{ring, wrap_unit(s.angle + 0.5 * (delta - dr))});
      }
      break;
    }
    case SpaceKind::torus_or_circle: {
      const auto& t = std::get<TorusOrCirclePoint>(x);
      for (double f : kFractions) {
        for (double d : {f * delta, -f * delta}) {
          auto y = t;
          y.angle1 = wrap_unit(t.angle1 + d);
          out.emplace_back(y);
          if (t.part == Part::torus) {
            auto z = t;
            z.angle2 = wrap_unit(t.angle2 + d);
            out.emplace_back(z);
          }
        }
      }
      break;
    }
    case SpaceKind::shift_pair: {
      for (const Point& g : sample_grid(1).points) {
        double d = distance(x, g);
        if (d > 0 && d < delta) out.push_back(g);
      }
      break;
    }
    case SpaceKind::full_shift: {
      const auto& s = std::get<SeqPoint>(x);
      int m0 = 0;
      while (m0 <= window_ && std::ldexp(1.0, -m0) >= delta) ++m0;
      if (m0 > window_) break;
      std::vector<int> coords{m0, -m0};
      if (window_ != m0) {
        coords.push_back(window_);
        coords.push_back(-window_);
      }
      for (int i : coords) {
        out.emplace_back(with_symbol(s, i, 1 - s.symbol(i)));
      }
      break;
    }
  }
  return out;
}

Point MetricSpace::random_point(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  switch (kind_) {
    case SpaceKind::circle:
      return CirclePoint{unit(rng)};
    case SpaceKind::annulus:
      return AnnulusPoint::from_radius(1.0 + unit(rng), unit(rng));
    case SpaceKind::torus:
      return TorusPoint{unit(rng), unit(rng)};
    case SpaceKind::circle_stack: {
      std::uniform_int_distribution<int> pick(0, depth_ + 1);
      int r = pick(rng);
      return StackPoint{r == depth_ + 1 ? StackPoint::kOuterRing : r,
                        unit(rng)};
    }
    case SpaceKind::torus_or_circle: {
      bool circle = unit(rng) < 0.5;
      double a = unit(rng);
      double b = unit(rng);
      return circle ? TorusOrCirclePoint{Part::circle, a, 0.0}
                    : TorusOrCirclePoint{Part::torus, a, b};
    }
    case SpaceKind::shift_pair: {
      auto pts = sample_grid(1).points;
      std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
      return pts[pick(rng)];
    }
    case SpaceKind::full_shift: {
      SeqPoint s = SeqPoint::constant(0);
      s.length = static_cast<std::uint8_t>(2 * window_ + 1);
      s.offset = -window_;
      std::uniform_int_distribution<std::uint64_t> bits;
      s.core = bits(rng) & ((std::uint64_t{1} << s.length) - 1);
      return s;
    }
  }
  return CirclePoint{};
}

std::string MetricSpace::describe() const {
  std::string d(to_string(kind_));
  switch (kind_) {
    case SpaceKind::circle_stack:
      d += "(depth=" + std::to_string(depth_) + ")";
      break;
    case SpaceKind::shift_pair:
      d += "(block=" + block_ + ", window=" + std::to_string(window_) + ")";
      break;
    case SpaceKind::full_shift:
      d += "(window=" + std::to_string(window_) + ")";
      break;
    default:
      break;
  }
  return d;
}

Entourage::Entourage(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0)) throw ConfigError("entourage epsilon must be positive");
}

bool Entourage::contains(const MetricSpace& space, const Point& a,
                         const Point& b) const {
  return space.distance(a, b) < epsilon_;
}

std::vector<Point> Entourage::ball(const MetricSpace& space, const Point& x,
                                   const std::vector<Point>& candidates) const {
  std::vector<Point> out;
  for (const auto& c : candidates) {
    if (contains(space, x, c)) out.push_back(c);
  }
  return out;
}

}  // namespace envlab
