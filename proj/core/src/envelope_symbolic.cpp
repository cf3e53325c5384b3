#include "envlab/envelope_symbolic.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <utility>

#include "envlab/error.hpp"

namespace envlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double add_turns(double a, double b) { return wrap_unit(a + b); }

FlowDescriptor annulus_descriptor(double alpha) {
  FlowDescriptor d;
  d.kind = FlowKind::annulus;
  d.params.alpha = alpha;
  return d;
}

FlowDescriptor shift_descriptor(std::string block, int window) {
  FlowDescriptor d;
  d.kind = FlowKind::shift_pair;
  d.params.block = std::move(block);
  d.params.window = window;
  return d;
}

std::uint64_t mod_pow2(std::int64_t n, int depth) {
  const std::uint64_t mask = (std::uint64_t{1} << depth) - 1;
  return static_cast<std::uint64_t>(n) & mask;  // two's complement wraps
}

}  // namespace

// ---------------------------------------------------------------------------

AnnulusElement AnnulusElement::power(std::int64_t n) {
  return {Kind::power, n, 0.0};
}
AnnulusElement AnnulusElement::h1(double beta) {
  return {Kind::h1, 0, wrap_unit(beta)};
}
AnnulusElement AnnulusElement::h2(double beta) {
  return {Kind::h2, 0, wrap_unit(beta)};
}

InducedAnnulusElement InducedAnnulusElement::induced_power(std::int64_t n) {
  return {Kind::power, n, 0.0};
}
InducedAnnulusElement InducedAnnulusElement::ih1(double eta) {
  return {Kind::h1, 0, wrap_unit(eta)};
}
InducedAnnulusElement InducedAnnulusElement::ih2(double eta) {
  return {Kind::h2, 0, wrap_unit(eta)};
}

std::string to_string(const AnnulusElement& e) {
  switch (e.kind) {
    case AnnulusElement::Kind::power: return "h^" + std::to_string(e.exponent);
    case AnnulusElement::Kind::h1: return "h1(" + fmt(e.beta) + ")";
    case AnnulusElement::Kind::h2: return "h2(" + fmt(e.beta) + ")";
  }
  return "?";
}

std::string to_string(const InducedAnnulusElement& e) {
  switch (e.kind) {
    case AnnulusElement::Kind::power: return "H^" + std::to_string(e.exponent);
    case AnnulusElement::Kind::h1: return "H1(" + fmt(e.eta) + ")";
    case AnnulusElement::Kind::h2: return "H2(" + fmt(e.eta) + ")";
  }
  return "?";
}

AnnulusAlgebra::AnnulusAlgebra(double alpha)
    : alpha_(alpha), flow_(make_flow(annulus_descriptor(alpha))) {}

Point AnnulusAlgebra::eval(const AnnulusElement& e, const Point& x) const {
  const auto* a = std::get_if<AnnulusPoint>(&x);
  if (a == nullptr) throw KindError("annulus element applied to " + to_string(x));
  switch (e.kind) {
    case AnnulusElement::Kind::power:
      return flow_.apply(e.exponent, x);
    case AnnulusElement::Kind::h1:
      // Everything off the outer circle is pulled onto r = 1.
      return AnnulusPoint{a->depth == -kInf ? -kInf : kInf,
                          add_turns(a->angle, e.beta)};
    case AnnulusElement::Kind::h2:
      return AnnulusPoint{a->depth == kInf ? kInf : -kInf,
                          add_turns(a->angle, -e.beta)};
  }
  return x;
}

AnnulusElement AnnulusAlgebra::compose(const AnnulusElement& a,
                                       const AnnulusElement& b) const {
  using K = AnnulusElement::Kind;
  if (a.kind == K::power) {
    const double turn = turn_fraction(a.exponent, alpha_);
    switch (b.kind) {
      case K::power: return AnnulusElement::power(a.exponent + b.exponent);
      case K::h1: return AnnulusElement::h1(b.beta + turn);
      case K::h2: return AnnulusElement::h2(b.beta - turn);
    }
  }
  if (b.kind == K::power) {
    const double turn = turn_fraction(b.exponent, alpha_);
    return a.kind == K::h1 ? AnnulusElement::h1(a.beta + turn)
                           : AnnulusElement::h2(a.beta - turn);
  }
  if (a.kind == b.kind) {
    return a.kind == K::h1 ? AnnulusElement::h1(a.beta + b.beta)
                           : AnnulusElement::h2(a.beta + b.beta);
  }
  // h1(phi) o h2(chi) = h2(chi - phi); h2(chi) o h1(phi) = h1(phi - chi)
  return a.kind == K::h1 ? AnnulusElement::h2(b.beta - a.beta)
                         : AnnulusElement::h1(b.beta - a.beta);
}

bool AnnulusAlgebra::same(const AnnulusElement& a, const AnnulusElement& b,
                          double tol) const {
  if (a.kind != b.kind) return false;
  if (a.kind == AnnulusElement::Kind::power) return a.exponent == b.exponent;
  return circle_distance(a.beta, b.beta) <= tol;
}

AnnulusElement AnnulusAlgebra::apply_induced(const InducedAnnulusElement& g,
                                             const AnnulusElement& e) const {
  using K = AnnulusElement::Kind;
  switch (g.kind) {
    case K::power:
      return compose(AnnulusElement::power(g.exponent), e);
    case K::h1:
      switch (e.kind) {
        case K::power:
          return AnnulusElement::h1(g.eta + turn_fraction(e.exponent, alpha_));
        case K::h1: return AnnulusElement::h1(e.beta + g.eta);
        case K::h2: return AnnulusElement::h2(e.beta - g.eta);
      }
      break;
    case K::h2:
      switch (e.kind) {
        case K::power:
          return AnnulusElement::h2(g.eta - turn_fraction(e.exponent, alpha_));
        case K::h1: return AnnulusElement::h1(e.beta - g.eta);
        case K::h2: return AnnulusElement::h2(e.beta + g.eta);
      }
      break;
  }
  return e;
}

InducedAnnulusElement AnnulusAlgebra::induced_compose(
    const InducedAnnulusElement& a, const InducedAnnulusElement& b) const {
  using K = AnnulusElement::Kind;
  using I = InducedAnnulusElement;
  if (a.kind == K::power) {
    const double turn = turn_fraction(a.exponent, alpha_);
    switch (b.kind) {
      case K::power: return I::induced_power(a.exponent + b.exponent);
      case K::h1: return I::ih1(b.eta + turn);
      case K::h2: return I::ih2(b.eta - turn);
    }
  }
  if (b.kind == K::power) {
    const double turn = turn_fraction(b.exponent, alpha_);
    return a.kind == K::h1 ? I::ih1(a.eta + turn) : I::ih2(a.eta - turn);
  }
  if (a.kind == b.kind) {
    return a.kind == K::h1 ? I::ih1(a.eta + b.eta) : I::ih2(a.eta + b.eta);
  }
  return a.kind == K::h1 ? I::ih2(b.eta - a.eta) : I::ih1(b.eta - a.eta);
}

bool AnnulusAlgebra::same(const InducedAnnulusElement& a,
                          const InducedAnnulusElement& b, double tol) const {
  if (a.kind != b.kind) return false;
  if (a.kind == AnnulusElement::Kind::power) return a.exponent == b.exponent;
  return circle_distance(a.eta, b.eta) <= tol;
}

InducedAnnulusElement AnnulusAlgebra::iso_G(const AnnulusElement& e) const {
  return {e.kind, e.exponent, e.beta};
}

bool AnnulusAlgebra::check_equivariance(
    std::int64_t t, const AnnulusElement& e,
    std::span<const AnnulusElement> probes) const {
  const InducedAnnulusElement lhs = iso_G(act(t, e));
  const InducedAnnulusElement rhs =
      induced_compose(InducedAnnulusElement::induced_power(t), iso_G(e));
  if (!same(lhs, rhs)) return false;
  // As maps: G(t.e)(p) against h^t o G(e)(p).
  const InducedAnnulusElement ge = iso_G(e);
  for (const auto& p : probes) {
    const AnnulusElement via_lhs = apply_induced(lhs, p);
    const AnnulusElement via_rhs =
        compose(AnnulusElement::power(t), apply_induced(ge, p));
    if (!same(via_lhs, via_rhs)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

std::vector<int> OdometerElement::digits() const {
  std::vector<int> d(static_cast<std::size_t>(depth));
  for (int i = 0; i < depth; ++i) d[i] = static_cast<int>((value >> i) & 1u);
  return d;
}

std::string to_string(const OdometerElement& e) {
  std::string bits;
  for (int d : e.digits()) bits.push_back(static_cast<char>('0' + d));
  return "odo(" + std::to_string(e.value) + " mod 2^" +
         std::to_string(e.depth) + ", digits " + bits + ")";
}

OdometerAlgebra::OdometerAlgebra(int depth) : depth_(depth) {
  if (depth < 1 || depth > 30) {
    throw ConfigError("odometer depth must lie in [1, 30]");
  }
}

void OdometerAlgebra::require(const OdometerElement& e) const {
  if (e.depth != depth_ || e.value >= order()) {
    throw KindError("odometer element " + to_string(e) +
                    " has the wrong depth");
  }
}

OdometerElement OdometerAlgebra::power(std::int64_t n) const {
  return {mod_pow2(n, depth_), depth_};
}

OdometerElement OdometerAlgebra::from_digits(
    const std::vector<int>& digits) const {
  if (static_cast<int>(digits.size()) != depth_) {
    throw ConfigError("expected " + std::to_string(depth_) + " digits");
  }
  std::uint64_t v = 0;
  for (int i = 0; i < depth_; ++i) {
    if (digits[i] != 0 && digits[i] != 1) throw ConfigError("digits are 0/1");
    v |= static_cast<std::uint64_t>(digits[i]) << i;
  }
  return {v, depth_};
}

OdometerElement OdometerAlgebra::compose(const OdometerElement& a,
                                         const OdometerElement& b) const {
  require(a);
  require(b);
  return {(a.value + b.value) & (order() - 1), depth_};
}

OdometerElement OdometerAlgebra::inverse(const OdometerElement& a) const {
  require(a);
  return {(order() - a.value) & (order() - 1), depth_};
}

Point OdometerAlgebra::eval(const OdometerElement& e, const Point& x) const {
  require(e);
  const auto* s = std::get_if<StackPoint>(&x);
  if (s == nullptr) throw KindError("odometer element applied to " + to_string(x));
  if (s->ring == 0 || s->outer()) return x;
  if (s->ring > depth_) {
    throw KindError("ring " + std::to_string(s->ring) + " beyond depth " +
                    std::to_string(depth_));
  }
  const std::uint64_t m = e.value & ((std::uint64_t{1} << s->ring) - 1);
  return StackPoint{s->ring,
                    wrap_unit(s->angle - std::ldexp(double(m), -s->ring))};
}

double OdometerAlgebra::distance(const OdometerElement& a,
                                 const OdometerElement& b) const {
  require(a);
  require(b);
  const std::uint64_t diff = (a.value - b.value) & (order() - 1);
  double sum = 0.0;
  for (int n = 1; n <= depth_; ++n) {
    const std::uint64_t m = diff & ((std::uint64_t{1} << n) - 1);
    sum += std::ldexp(circle_distance(0.0, std::ldexp(double(m), -n)), -n);
  }
  return sum;
}

std::vector<OdometerElement> OdometerSystem::neighbors(const OdometerElement& e,
                                                       double delta) const {
  std::vector<OdometerElement> out;
  std::set<std::uint64_t> seen{e.value};
  for (int j = 0; j < algebra_.depth(); ++j) {
    const std::int64_t step = std::int64_t{1} << j;
    for (std::int64_t s : {step, -step, 3 * step, -3 * step}) {
      OdometerElement w = algebra_.compose(algebra_.power(s), e);
      if (!seen.insert(w.value).second) continue;
      const double d = algebra_.distance(e, w);
      if (d > 0 && d < delta) out.push_back(w);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

ShiftElement ShiftElement::power(std::int64_t n) { return {Kind::power, n}; }
ShiftElement ShiftElement::collapse() { return {Kind::collapse, 0}; }

std::string to_string(const ShiftElement& e) {
  return e.kind == ShiftElement::Kind::collapse
             ? std::string("g")
             : "sigma^" + std::to_string(e.exponent);
}

ShiftAlgebra::ShiftAlgebra(std::string block, int window)
    : flow_(make_flow(shift_descriptor(std::move(block), window))) {}

Point ShiftAlgebra::eval(const ShiftElement& e, const Point& x) const {
  if (!flow_.space().contains(x)) {
    throw KindError("shift element applied to " + to_string(x));
  }
  if (e.kind == ShiftElement::Kind::power) return flow_.apply(e.exponent, x);
  const auto& s = std::get<SeqPoint>(x);
  if (s.left_fill != s.right_fill) {
    throw KindError("point " + to_string(x) + " is outside the shift pair");
  }
  return SeqPoint::constant(s.left_fill);
}

ShiftElement ShiftAlgebra::compose(const ShiftElement& a,
                                   const ShiftElement& b) const {
  if (a.kind == ShiftElement::Kind::collapse ||
      b.kind == ShiftElement::Kind::collapse) {
    return ShiftElement::collapse();
  }
  return ShiftElement::power(a.exponent + b.exponent);
}

bool ShiftAlgebra::same(const ShiftElement& a, const ShiftElement& b) const {
  return a.kind == b.kind &&
         (a.kind == ShiftElement::Kind::collapse || a.exponent == b.exponent);
}

// ---------------------------------------------------------------------------

std::string to_string(const SymbolicElement& e) {
  return std::visit([](const auto& v) { return to_string(v); }, e);
}

namespace {

template <class Algebra, class Element>
SampledMap sample_with(const Algebra& algebra, const Element& e,
                       const GridPtr& grid) {
  std::vector<Point> images;
  images.reserve(grid->size());
  for (const auto& x : *grid) images.push_back(algebra.eval(e, x));
  return SampledMap(grid, std::move(images), Provenance::symbolic(to_string(e)));
}

}  // namespace

SampledMap sample_symbolic(const AnnulusAlgebra& algebra,
                           const AnnulusElement& e, const GridPtr& grid) {
  return sample_with(algebra, e, grid);
}
SampledMap sample_symbolic(const OdometerAlgebra& algebra,
                           const OdometerElement& e, const GridPtr& grid) {
  return sample_with(algebra, e, grid);
}
SampledMap sample_symbolic(const ShiftAlgebra& algebra, const ShiftElement& e,
                           const GridPtr& grid) {
  return sample_with(algebra, e, grid);
}

LimitResult limit_of_powers(LimitFamily family, double target,
                            double tolerance, std::int64_t horizon,
                            double alpha, int depth) {
  if (horizon < 1) throw ConfigError("limit horizon must be >= 1");
  LimitResult r;
  r.best_error = kInf;
  if (family == LimitFamily::odometer) {
    OdometerAlgebra alg(depth);
    const double rounded = std::round(target);
    if (rounded != target || rounded < 0 || rounded >= double(alg.order())) {
      throw ConfigError("odometer target must be an integer in [0, 2^depth)");
    }
    const auto v = static_cast<std::uint64_t>(rounded);
    r.element = OdometerElement{v, depth};
    for (std::int64_t n = 1; n <= horizon; ++n) {
      if (mod_pow2(n, depth) == v) r.times.push_back(n);
    }
    if (r.times.empty()) {
      throw HorizonExhausted("no n <= " + std::to_string(horizon) +
                                 " with n = " + std::to_string(v) +
                                 " mod 2^" + std::to_string(depth),
                             1.0);
    }
    r.best_error = 0.0;
    return r;
  }
  if (!(tolerance > 0)) throw ConfigError("limit tolerance must be positive");
  const double beta = wrap_unit(target);
  // h^n -> h1(beta) needs frac(n alpha) -> beta; h^-n -> h2(beta) needs the
  // same, since h^-n turns by -n alpha and h2(beta) by -beta.
  r.element = family == LimitFamily::annulus_forward ? AnnulusElement::h1(beta)
                                                     : AnnulusElement::h2(beta);
  for (std::int64_t n = 1; n <= horizon; ++n) {
    const double err = circle_distance(turn_fraction(n, alpha), beta);
    r.best_error = std::min(r.best_error, err);
    if (err < tolerance) r.times.push_back(n);
  }
  if (r.times.empty()) {
    throw HorizonExhausted("no n <= " + std::to_string(horizon) +
                               " brings frac(n alpha) within " +
                               fmt(tolerance) + " of " + fmt(beta),
                           r.best_error);
  }
  return r;
}

Verdict group_check(const OdometerAlgebra& algebra,
                    std::span<const OdometerElement> probes) {
  std::vector<OdometerElement> elems(probes.begin(), probes.end());
  if (elems.empty()) {
    if (algebra.depth() > 12) {
      return Verdict::inconclusive("group",
                                   "no probes and depth too large to enumerate");
    }
    for (std::uint64_t v = 0; v < algebra.order(); ++v) {
      elems.push_back({v, algebra.depth()});
    }
  }
  std::set<std::uint64_t> members;
  for (const auto& e : elems) members.insert(e.value);
  const bool closed_family = members.size() == algebra.order();
  for (const auto& a : elems) {
    const OdometerElement inv = algebra.inverse(a);
    if (!(algebra.compose(a, inv) == algebra.identity()) ||
        !(algebra.compose(inv, a) == algebra.identity())) {
      return Verdict::fails("group", {{{to_string(a)}, 0, 0, 0,
                                       "no two-sided inverse"}});
    }
    if (closed_family) {
      for (const auto& b : elems) {
        if (!members.count(algebra.compose(a, b).value)) {
          return Verdict::fails("group", {{{to_string(a), to_string(b)}, 0, 0,
                                           0, "product leaves the family"}});
        }
      }
    }
  }
  // Each element is a rotation on every ring, hence injective; confirm on
  // the ring centres so the evidence does not rest on the formula alone.
  for (const auto& a : elems) {
    std::set<std::pair<int, double>> seen;
    for (int ring = 1; ring <= algebra.depth(); ++ring) {
      for (int j = 0; j < 4; ++j) {
        const auto img = std::get<StackPoint>(
            algebra.eval(a, StackPoint{ring, j / 4.0}));
        if (!seen.insert({img.ring, img.angle}).second) {
          return Verdict::fails("group", {{{to_string(a)}, 0, 0, 0,
                                           "element is not injective"}});
        }
      }
    }
  }
  return Verdict::holds(
      "group", {},
      "exhaustive check over " + std::to_string(elems.size()) +
          " elements: identity, two-sided inverses, closure" +
          (closed_family ? "" : " skipped for a partial family") +
          ", injectivity");
}

Verdict group_check(const AnnulusAlgebra& algebra,
                    std::span<const AnnulusElement> probes) {
  const AnnulusElement e = AnnulusElement::power(0);
  for (const auto& a : probes) {
    bool inverted = false;
    for (const auto& b : probes) {
      if (algebra.same(algebra.compose(a, b), e) &&
          algebra.same(algebra.compose(b, a), e)) {
        inverted = true;
        break;
      }
    }
    if (inverted || a.kind == AnnulusElement::Kind::power) continue;
    // Every product with a limit element is again a limit element, so no
    // inverse exists in E(X); show it concretely and exhibit a collision.
    const AnnulusElement other = a.kind == AnnulusElement::Kind::h1
                                     ? AnnulusElement::h2(a.beta)
                                     : AnnulusElement::h1(a.beta);
    const AnnulusElement prod = algebra.compose(other, a);
    const Point p = AnnulusPoint::from_radius(1.5, 0.0);
    const Point q = AnnulusPoint::from_radius(1.25, 0.0);
    const Point fp = algebra.eval(a, p);
    const Point fq = algebra.eval(a, q);
    Witness w1{{to_string(other), to_string(a), to_string(prod)}, 0, 0, 0,
               to_string(other) + " o " + to_string(a) + " = " +
                   to_string(prod) + " != identity"};
    Witness w2{{to_string(p), to_string(q), to_string(fp)},
               0,
               algebra.flow().space().distance(fp, fq),
               0,
               to_string(a) + " sends two distinct points to one point"};
    return Verdict::fails("group", {w1, w2},
                          to_string(a) + " has no inverse in E(X)");
  }
  for (const auto& a : probes) {
    if (a.kind != AnnulusElement::Kind::power) {
      return Verdict::inconclusive("group", "probe set without witnesses");
    }
  }
  return Verdict::holds("group", {},
                        "probe set consists of invertible powers only");
}

Verdict group_check(const ShiftAlgebra& algebra,
                    std::span<const ShiftElement> probes) {
  for (const auto& a : probes) {
    if (a.kind != ShiftElement::Kind::collapse) continue;
    const auto& space = algebra.flow().space();
    const Grid grid = space.sample_grid(4);
    for (std::size_t i = 0; i < grid.points.size(); ++i) {
      for (std::size_t j = i + 1; j < grid.points.size(); ++j) {
        const Point& p = grid.points[i];
        const Point& q = grid.points[j];
        if (!(space.distance(p, q) > 0)) continue;
        const Point fp = algebra.eval(a, p);
        if (space.distance(fp, algebra.eval(a, q)) == 0.0) {
          return Verdict::fails(
              "group",
              {{{to_string(p), to_string(q), to_string(fp)}, 0,
                space.distance(p, q), 0,
                "g identifies two distinct points, so it has no inverse"}});
        }
      }
    }
  }
  for (const auto& a : probes) {
    if (a.kind == ShiftElement::Kind::collapse) {
      return Verdict::inconclusive("group",
                                   "grid too coarse to separate g's fibres");
    }
  }
  return Verdict::holds("group", {},
                        "probe set consists of invertible powers only");
}

AnnulusMatch match_annulus(const AnnulusAlgebra& algebra,
                           const FunctionMetric& metric,
                           const SampledMap& representative, double epsilon) {
  const Provenance& prov = representative.provenance();
  if (prov.kind != Provenance::Kind::iterate) {
    throw KindError("match_annulus needs an iterate representative");
  }
  const std::int64_t t = prov.time;
  const GridPtr& grid = metric.grid_ptr();
  const AnnulusElement candidates[] = {
      AnnulusElement::h1(turn_fraction(t, algebra.alpha())),
      AnnulusElement::h2(turn_fraction(-t, algebra.alpha()))};
  AnnulusMatch best{AnnulusElement::power(t), kInf};
  for (const auto& c : candidates) {
    double d = metric.distance(representative, sample_symbolic(algebra, c, grid));
    if (d < best.distance) best = {c, d};
  }
  if (best.distance < epsilon) return best;
  return {AnnulusElement::power(t),
          metric.distance(representative,
                          sample_symbolic(algebra, AnnulusElement::power(t),
                                          grid))};
}

}  // namespace envlab
