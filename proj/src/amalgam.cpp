#include "gabor_super/amalgam.hpp"

#include <cmath>
#include <string>

#include "gabor_super/errors.hpp"

namespace gabor_super {

namespace {

constexpr double kWeightSlack = 1e-12;
constexpr double kCheckSlack = 1e-12;

// Exhaustive flag checks are quadratic in L; above this the polynomial and
// constant kinds use their closed-form answers.
constexpr int kExhaustiveLimit = 1024;

std::vector<double> pointwise_norms(const VectorSignal& f) {
  std::vector<double> out(static_cast<std::size_t>(f.length()));
  for (int l = 0; l < f.length(); ++l) out[l] = f.at(l).norm();
  return out;
}

}  // namespace

double conjugate_exponent(double p) {
  validate_exponent(p, "p");
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

void validate_exponent(double p, const char* name) {
  if (std::isnan(p) || p < 1.0) {
    throw InvalidParameter(std::string("exponent ") + name +
                           " must lie in [1, inf], got " + show(p));
  }
}

double lp_norm(std::span<const double> x, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
  }
  if (p == 1.0) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
  }
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v), p);
  return std::pow(s, 1.0 / p);
}

const char* to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::kConstant:
      return "constant";
    case WeightKind::kPolynomial:
      return "polynomial";
    case WeightKind::kCustom:
      return "custom";
  }
  return "unknown";
}

bool check_submultiplicative(std::span<const double> values) {
  const long L = static_cast<long>(values.size());
  for (long x = 0; x < L; ++x) {
    for (long y = 0; y < L; ++y) {
      if (values[wrap(x + y, L)] > values[x] * values[y] * (1.0 + kWeightSlack)) {
        return false;
      }
    }
  }
  return true;
}

Weight::Weight(WeightKind kind, double exponent, std::vector<double> values)
    : kind_(kind), exponent_(exponent), values_(std::move(values)) {
  const long L = static_cast<long>(values_.size());
  if (L < 1) throw DimensionError("weight needs L >= 1");
  for (long l = 0; l < L; ++l) {
    if (!(values_[l] > 0.0) || !std::isfinite(values_[l])) {
      throw NonPositiveWeight("weight value at " + std::to_string(l) +
                              " is not a positive finite number");
    }
  }
  for (long l = 0; l < L; ++l) {
    const double u = values_[l];
    const double v = values_[wrap(L - l, L)];
    if (std::abs(u - v) > kWeightSlack * std::max(u, v)) {
      throw AsymmetricWeight("weight is not symmetric at " + std::to_string(l));
    }
  }
  if (L <= kExhaustiveLimit || kind_ == WeightKind::kCustom) {
    submultiplicative_ = check_submultiplicative(values_);
  } else if (kind_ == WeightKind::kPolynomial) {
    submultiplicative_ = true;
  } else {
    submultiplicative_ = values_[0] >= 1.0;
  }
}

Weight Weight::constant(int length, double value) {
  if (length < 1) throw DimensionError("weight needs L >= 1");
  return Weight(WeightKind::kConstant, 0.0,
                std::vector<double>(static_cast<std::size_t>(length), value));
}

Weight Weight::polynomial(int length, double s) {
  if (length < 1) throw DimensionError("weight needs L >= 1");
  if (!(s >= 0.0)) {
    throw InvalidParameter("polynomial weight exponent must be >= 0");
  }
  std::vector<double> v(static_cast<std::size_t>(length));
  for (int l = 0; l < length; ++l) {
    v[l] = std::pow(1.0 + static_cast<double>(wrap_distance(l, length)), s);
  }
  return Weight(WeightKind::kPolynomial, s, std::move(v));
}

Weight Weight::custom(std::vector<double> values, bool claim_submultiplicative) {
  Weight w(WeightKind::kCustom, 0.0, std::move(values));
  if (claim_submultiplicative && !w.submultiplicative_) {
    throw SubmultiplicativityError(
        "custom weight claimed submultiplicative but w(x+y) > w(x)w(y) for "
        "some x, y");
  }
  return w;
}

bool Weight::is_admissible() const {
  return submultiplicative_ && std::abs(values_[0] - 1.0) <= kWeightSlack &&
         satisfies_grs();
}

Weight Weight::reciprocal() const {
  std::vector<double> r(values_.size());
  for (std::size_t j = 0; j < r.size(); ++j) r[j] = 1.0 / values_[j];
  return Weight(WeightKind::kCustom, 0.0, std::move(r));
}

Weight make_weight(const WeightSpec& spec, int length) {
  switch (spec.kind) {
    case WeightKind::kConstant:
      return Weight::constant(length, spec.value);
    case WeightKind::kPolynomial:
      return Weight::polynomial(length, spec.s);
    case WeightKind::kCustom:
      if (static_cast<int>(spec.values.size()) != length) {
        throw DimensionError("custom weight has " +
                             std::to_string(spec.values.size()) +
                             " values, expected L=" + std::to_string(length));
      }
      return Weight::custom(spec.values, spec.claim_submultiplicative);
  }
  throw InvalidParameter("unknown weight kind");
}

double moderate_constant(const Weight& v, const Weight& w) {
  if (v.length() != w.length()) {
    throw DimensionError("moderate_constant: weights on different groups");
  }
  const long L = v.length();
  double c = 0.0;
  for (long x = 0; x < L; ++x) {
    for (long y = 0; y < L; ++y) {
      c = std::max(c, v(x + y) / (w(x) * v(y)));
    }
  }
  return c;
}

double amalgam_norm(const VectorSignal& f, const AmalgamParams& prm) {
  validate_exponent(prm.p, "p");
  validate_exponent(prm.q, "q");
  const int L = f.length();
  if (prm.block < 1 || L % prm.block != 0) {
    throw LatticeError("amalgam block " + std::to_string(prm.block) +
                       " does not divide L=" + std::to_string(L));
  }
  if (prm.v.length() != L) {
    throw DimensionError("amalgam weight length differs from signal length");
  }
  const std::vector<double> pointwise = pointwise_norms(f);
  const int blocks = L / prm.block;
  std::vector<double> weighted(static_cast<std::size_t>(blocks));
  for (int k = 0; k < blocks; ++k) {
    const std::span<const double> piece(pointwise.data() + k * prm.block,
                                        static_cast<std::size_t>(prm.block));
    weighted[k] = lp_norm(piece, prm.p) * prm.v(static_cast<long>(k) * prm.block);
  }
  return lp_norm(weighted, prm.q);
}

BoundCheck periodization_bound_check(const VectorSignal& g, int a) {
  const int L = g.length();
  if (a < 1 || L % a != 0) {
    throw LatticeError("periodization step does not divide L");
  }
  const std::vector<double> pointwise = pointwise_norms(g);
  BoundCheck out;
  for (int l = 0; l < L; ++l) {
    double s = 0.0;
    for (int k = 0; k < L / a; ++k) s += pointwise[wrap(l - static_cast<long>(k) * a, L)];
    out.lhs = std::max(out.lhs, s);
  }
  const AmalgamParams prm{kInf, 1.0, a, Weight::constant(L)};
  out.rhs = (1.0 / a + 1.0) * amalgam_norm(g, prm);
  out.pass = out.lhs <= out.rhs + kCheckSlack;
  return out;
}

BoundCheck translation_norm_check(const VectorSignal& f, long x,
                                  const AmalgamParams& prm, const Weight& w) {
  BoundCheck out;
  out.lhs = amalgam_norm(translate(f, x), prm);
  out.rhs = moderate_constant(prm.v, w) * w(x) * amalgam_norm(f, prm);
  out.pass = out.lhs <= out.rhs + kCheckSlack;
  return out;
}

double block_equivalence_constant(int length, int a1, int a2, const Weight& v) {
  if (a1 < 1 || a2 < 1 || length % a1 != 0 || length % a2 != 0) {
    throw LatticeError("block sizes must divide L");
  }
  if (v.length() != length) throw DimensionError("weight length differs from L");
  const int n1 = length / a1;
  const int n2 = length / a2;
  auto meets = [&](int i, int j) {
    const long lo1 = static_cast<long>(i) * a1;
    const long lo2 = static_cast<long>(j) * a2;
    return lo1 < lo2 + a2 && lo2 < lo1 + a1;
  };
  double rho = 0.0;
  int r12 = 0;
  std::vector<int> r21(static_cast<std::size_t>(n2), 0);
  for (int i = 0; i < n1; ++i) {
    int count = 0;
    for (int j = 0; j < n2; ++j) {
      if (!meets(i, j)) continue;
      ++count;
      ++r21[j];
      rho = std::max(rho, v(static_cast<long>(i) * a1) / v(static_cast<long>(j) * a2));
    }
    r12 = std::max(r12, count);
  }
  int r21_max = 0;
  for (int c : r21) r21_max = std::max(r21_max, c);
  return rho * std::max(r12, r21_max);
}

double correlation_bound_constant(const GaborLattice& lat, const Weight& w) {
  if (w.length() != lat.length()) {
    throw DimensionError("weight length differs from lattice length");
  }
  double wa = 0.0;
  for (int t = 0; t < lat.a(); ++t) wa = std::max(wa, w(t));
  const int hits = std::min(lat.b(), (2 * lat.a() - 2) / lat.shift_length() + 1);
  return wa * wa * hits;
}

}  // namespace gabor_super
