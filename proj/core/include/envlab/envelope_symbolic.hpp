#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "envlab/flow.hpp"
#include "envlab/sampled_map.hpp"
#include "envlab/verdict.hpp"

namespace envlab {

/// Angles of symbolic elements compare equal within this tolerance.
inline constexpr double kAngleTolerance = 1e-9;

// ---------------------------------------------------------------------------
// Annulus: E(X) = {h^n} u {h1(beta)} u {h2(beta)}

struct AnnulusElement {
  enum class Kind : std::uint8_t { power, h1, h2 };

  Kind kind = Kind::power;
  std::int64_t exponent = 0;  // power only
  double beta = 0.0;          // h1/h2 only, in [0, 1)

  static AnnulusElement power(std::int64_t n);
  static AnnulusElement h1(double beta);
  static AnnulusElement h2(double beta);
};

/// Second-level elements acting on E(X): the induced powers and the two
/// limit families H1(eta), H2(eta).
struct InducedAnnulusElement {
  using Kind = AnnulusElement::Kind;

  Kind kind = Kind::power;
  std::int64_t exponent = 0;
  double eta = 0.0;

  static InducedAnnulusElement induced_power(std::int64_t n);
  static InducedAnnulusElement ih1(double eta);
  static InducedAnnulusElement ih2(double eta);
};

std::string to_string(const AnnulusElement& e);
std::string to_string(const InducedAnnulusElement& e);

class AnnulusAlgebra {
 public:
  explicit AnnulusAlgebra(double alpha = kGolden);

  double alpha() const { return alpha_; }
  const FlowSystem& flow() const { return flow_; }

  Point eval(const AnnulusElement& e, const Point& x) const;
  /// a o b: apply b first.
  AnnulusElement compose(const AnnulusElement& a, const AnnulusElement& b) const;
  bool same(const AnnulusElement& a, const AnnulusElement& b,
            double tol = kAngleTolerance) const;
  /// t . e = h^t o e
  AnnulusElement act(std::int64_t t, const AnnulusElement& e) const {
    return compose(AnnulusElement::power(t), e);
  }

  /// Second-level action tables.
  AnnulusElement apply_induced(const InducedAnnulusElement& g,
                               const AnnulusElement& e) const;
  InducedAnnulusElement induced_compose(const InducedAnnulusElement& a,
                                        const InducedAnnulusElement& b) const;
  bool same(const InducedAnnulusElement& a, const InducedAnnulusElement& b,
            double tol = kAngleTolerance) const;

  /// G(lim h^t_k) = lim hat-h^t_k.
  InducedAnnulusElement iso_G(const AnnulusElement& e) const;
  /// G(t . e) == t . G(e), compared as elements and as maps on `probes`.
  bool check_equivariance(std::int64_t t, const AnnulusElement& e,
                          std::span<const AnnulusElement> probes) const;

 private:
  double alpha_;
  FlowSystem flow_;
};

// ---------------------------------------------------------------------------
// Circle stack: E(X) truncated at depth k is Z / 2^k (the adding machine).

struct OdometerElement {
  std::uint64_t value = 0;  // in [0, 2^depth)
  int depth = 1;

  /// Binary digits, least significant first.
  std::vector<int> digits() const;
  bool operator==(const OdometerElement&) const = default;
};

std::string to_string(const OdometerElement& e);

class OdometerAlgebra {
 public:
  explicit OdometerAlgebra(int depth);

  int depth() const { return depth_; }
  std::uint64_t order() const { return std::uint64_t{1} << depth_; }

  OdometerElement identity() const { return {0, depth_}; }
  OdometerElement power(std::int64_t n) const;
  OdometerElement from_digits(const std::vector<int>& digits) const;
  OdometerElement compose(const OdometerElement& a,
                          const OdometerElement& b) const;
  OdometerElement inverse(const OdometerElement& a) const;
  /// Ring n <= depth turns by -(value mod 2^n) 2^-n; r = 1 and r = 2 fixed.
  Point eval(const OdometerElement& e, const Point& x) const;
  /// sum_{n=1..k} 2^-n sup_theta d_S1(a(r_n, theta), b(r_n, theta))
  double distance(const OdometerElement& a, const OdometerElement& b) const;

 private:
  void require(const OdometerElement& e) const;
  int depth_;
};

/// The induced flow on the truncated adding machine, t . v = v + t.
class OdometerSystem {
 public:
  using point_type = OdometerElement;

  explicit OdometerSystem(int depth) : algebra_(depth) {}

  OdometerElement act(std::int64_t t, const OdometerElement& e) const {
    return algebra_.compose(algebra_.power(t), e);
  }
  double distance(const OdometerElement& a, const OdometerElement& b) const {
    return algebra_.distance(a, b);
  }
  std::vector<OdometerElement> neighbors(const OdometerElement& e,
                                         double delta) const;
  std::string describe(const OdometerElement& e) const { return to_string(e); }
  const OdometerAlgebra& algebra() const { return algebra_; }

 private:
  OdometerAlgebra algebra_;
};

// ---------------------------------------------------------------------------
// Shift pair: E(Y) = {sigma^n} u {g}

struct ShiftElement {
  enum class Kind : std::uint8_t { power, collapse };

  Kind kind = Kind::power;
  std::int64_t exponent = 0;

  static ShiftElement power(std::int64_t n);
  static ShiftElement collapse();
};

std::string to_string(const ShiftElement& e);

class ShiftAlgebra {
 public:
  explicit ShiftAlgebra(std::string block = "1", int window = 8);

  const FlowSystem& flow() const { return flow_; }

  /// g sends the orbit closure of 0^inf b 0^inf to 0^inf and that of
  /// 1^inf b 1^inf to 1^inf.
  Point eval(const ShiftElement& e, const Point& x) const;
  ShiftElement compose(const ShiftElement& a, const ShiftElement& b) const;
  bool same(const ShiftElement& a, const ShiftElement& b) const;

 private:
  FlowSystem flow_;
};

// ---------------------------------------------------------------------------

using SymbolicElement =
    std::variant<AnnulusElement, OdometerElement, ShiftElement>;

std::string to_string(const SymbolicElement& e);

/// Evaluates a symbolic element on every grid point.
SampledMap sample_symbolic(const AnnulusAlgebra& algebra,
                           const AnnulusElement& e, const GridPtr& grid);
SampledMap sample_symbolic(const OdometerAlgebra& algebra,
                           const OdometerElement& e, const GridPtr& grid);
SampledMap sample_symbolic(const ShiftAlgebra& algebra, const ShiftElement& e,
                           const GridPtr& grid);

enum class LimitFamily : std::uint8_t {
  annulus_forward,   // h^{n_k} -> h1(beta)
  annulus_backward,  // h^{-n_k} -> h2(beta)
  odometer,          // f^{n_k} -> digits of the target
};

struct LimitResult {
  SymbolicElement element;
  /// Increasing n_k >= 1 realising the limit within tolerance.
  std::vector<std::int64_t> times;
  double best_error = 0.0;
};

/// For the annulus families `target` is beta and `alpha` is the rotation
/// number; for the odometer `target` is an integer value mod 2^depth.
/// Throws HorizonExhausted when no witness lies in [1, horizon].
LimitResult limit_of_powers(LimitFamily family, double target,
                            double tolerance, std::int64_t horizon,
                            double alpha = kGolden, int depth = 8);

/// Closure under composition and inverses within the family on a finite
/// probe set; element injectivity is checked on `probe_points`.
Verdict group_check(const OdometerAlgebra& algebra,
                    std::span<const OdometerElement> probes);
Verdict group_check(const AnnulusAlgebra& algebra,
                    std::span<const AnnulusElement> probes);
Verdict group_check(const ShiftAlgebra& algebra,
                    std::span<const ShiftElement> probes);

/// Cross-match of a numeric annulus representative with the symbolic
/// families: the nearest of h1(t alpha), h2(-t alpha) if within epsilon,
/// otherwise h^t itself.
struct AnnulusMatch {
  AnnulusElement element;
  double distance = 0.0;
};

AnnulusMatch match_annulus(const AnnulusAlgebra& algebra,
                           const FunctionMetric& metric,
                           const SampledMap& representative, double epsilon);

}  // namespace envlab
