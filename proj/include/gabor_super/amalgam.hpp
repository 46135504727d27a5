#pragma once

// Weights on Z_L and the weighted amalgam norms W(l^p, l^q_v) built on them.

#include <limits>
#include <span>
#include <vector>

#include "gabor_super/core.hpp"
#include "gabor_super/lattice.hpp"

namespace gabor_super {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Hoelder conjugate p' with 1/p + 1/p' = 1.
double conjugate_exponent(double p);

/// Throws InvalidParameter unless 1 <= p <= inf.
void validate_exponent(double p, const char* name);

/// (sum |x|^p)^(1/p), or max |x| for p = inf.
double lp_norm(std::span<const double> x, double p);

enum class WeightKind { kConstant, kPolynomial, kCustom };

const char* to_string(WeightKind kind);

/// Construction recipe for a Weight; the shape of the weight JSON.
struct WeightSpec {
  WeightKind kind = WeightKind::kConstant;
  double value = 1.0;          // constant
  double s = 0.0;              // polynomial exponent
  std::vector<double> values;  // custom
  bool claim_submultiplicative = false;
};

/// Strictly positive symmetric function on Z_L.
class Weight {
 public:
  static Weight constant(int length, double value = 1.0);
  /// (1 + wrap_distance(x))^s.
  static Weight polynomial(int length, double s);
  /// Rejects values that are non-positive or asymmetric. When
  /// `claim_submultiplicative` is set the claim is verified exhaustively.
  static Weight custom(std::vector<double> values,
                       bool claim_submultiplicative = false);

  int length() const { return static_cast<int>(values_.size()); }
  WeightKind kind() const { return kind_; }
  /// s for polynomial weights, 0 otherwise.
  double exponent() const { return exponent_; }
  double operator()(long x) const {
    return values_[static_cast<std::size_t>(wrap(x, length()))];
  }
  std::span<const double> values() const { return values_; }

  bool is_submultiplicative() const { return submultiplicative_; }
  /// w(k x)^(1/k) -> 1 holds for every weight on a finite group since w is
  /// bounded above and below.
  bool satisfies_grs() const { return true; }
  /// Submultiplicative, w(0) = 1 and GRS.
  bool is_admissible() const;

  /// 1/w; symmetric and positive but generally not submultiplicative.
  Weight reciprocal() const;

 private:
  Weight(WeightKind kind, double exponent, std::vector<double> values);

  WeightKind kind_;
  double exponent_;
  std::vector<double> values_;
  bool submultiplicative_ = false;
};

Weight make_weight(const WeightSpec& spec, int length);

/// Exhaustive scan of w(x + y) <= w(x) w(y) (relative slack 1e-12).
bool check_submultiplicative(std::span<const double> values);

/// Least C with v(x + y) <= C w(x) v(y) for all x, y.
double moderate_constant(const Weight& v, const Weight& w);

struct AmalgamParams {
  double p = 2.0;
  double q = 2.0;
  int block = 1;
  Weight v = Weight::constant(1);
};

/// Per-block l^p norm of l -> |f(l)|_H over consecutive blocks of size
/// `prm.block` starting at 0, then weighted l^q over blocks with weight
/// v(block * k).
double amalgam_norm(const VectorSignal& f, const AmalgamParams& prm);

struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

/// max_l sum_k |g(l - k a)|  against  (1/a + 1) |g|_{W(l^inf, l^1)} (block a).
BoundCheck periodization_bound_check(const VectorSignal& g, int a);

/// |T_x f|_W  against  C_v w(x) |f|_W with C_v = moderate_constant(v, w).
BoundCheck translation_norm_check(const VectorSignal& f, long x,
                                  const AmalgamParams& prm, const Weight& w);

/// C with |f|_{block a1} <= C |f|_{block a2} for every f and every p, q,
/// for the weight v. Computed from the block incidence structure:
/// C = rho * max(r12, r21) where r12 counts a2-blocks meeting one a1-block
/// and rho = max v(a1 i) / v(a2 j) over meeting pairs.
double block_equivalence_constant(int length, int a1, int a2, const Weight& v);

/// C(a, b, w) in
///   sum_n sup_l |G_n(l)| w(n L/b) <= C |g|_{W(inf,1,w)} |gamma|_{W(inf,1,w)}
/// with blocks of size a, for a symmetric submultiplicative w:
///   C = (max_{0<=t<a} w(t))^2 * min(b, floor((2a - 2)/(L/b)) + 1).
double correlation_bound_constant(const GaborLattice& lat, const Weight& w);

}  // namespace gabor_super
