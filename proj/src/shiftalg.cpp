#include "gabor_super/shiftalg.hpp"

#include <cmath>
#include <random>
#include <string>

#include "gabor_super/errors.hpp"

namespace gabor_super {

namespace {

constexpr double kExtractionTol = 1e-12;
constexpr double kSingularRatio = 1e-12;
constexpr double kRhoTol = 1e-12;
// Above this length the character-average route is checked in closed form
// per block instead of materializing every C_x.
constexpr long kFullAverageLimit = 128;

void require_same_space(const ShiftOperator& A, const ShiftOperator& B,
                        const char* what) {
  if (A.length() != B.length() || A.channels() != B.channels()) {
    throw DimensionError(std::string(what) + ": operators act on different spaces");
  }
}

void require_field(const MatrixField& m, int length, int channels) {
  if (m.length() != length || m.dim() != channels) {
    throw DimensionError("symbol shape does not match the operator");
  }
}

DenseOperator modulation_conjugate(const DenseOperator& A, long y, long L, long n) {
  // (M_y A M_{-y})[l][j] = A[l][j] exp(2 pi i y (l - j) / L)
  DenseOperator out(A.rows(), A.cols());
  for (long l = 0; l < L; ++l) {
    for (long j = 0; j < L; ++j) {
      out.block(l * n, j * n, n, n) = unit_root(y * (l - j), L) * A.block(l * n, j * n, n, n);
    }
  }
  return out;
}

}  // namespace

ShiftOperator::ShiftOperator(int length, int channels)
    : length_(length), channels_(channels) {
  if (length < 1 || channels < 1) throw DimensionError("shift operator needs L, n >= 1");
}

ShiftOperator::ShiftOperator(
    int length, int channels,
    const std::vector<std::pair<long, MatrixField>>& terms)
    : ShiftOperator(length, channels) {
  for (const auto& [x, symbol] : terms) {
    require_field(symbol, length, channels);
    const int key = static_cast<int>(wrap(x, length));
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, symbol);
    } else {
      for (int l = 0; l < length; ++l) it->second.mutable_at(l) += symbol[l];
    }
  }
}

const MatrixField* ShiftOperator::term(long x) const {
  const auto it = terms_.find(static_cast<int>(wrap(x, length_)));
  return it == terms_.end() ? nullptr : &it->second;
}

ShiftOperator ShiftOperator::with_term(long x, const MatrixField& symbol) const {
  std::vector<std::pair<long, MatrixField>> all;
  for (const auto& [s, m] : terms_) all.emplace_back(s, m);
  all.emplace_back(x, symbol);
  return ShiftOperator(length_, channels_, all);
}

DenseOperator ShiftOperator::to_dense() const {
  const long L = length_;
  const long n = channels_;
  DenseOperator D = DenseOperator::Zero(L * n, L * n);
  for (const auto& [x, m] : terms_) {
    for (long l = 0; l < L; ++l) {
      D.block(l * n, wrap(l - x, L) * n, n, n) += m[l];
    }
  }
  return D;
}

ShiftOperator from_correlations(const CorrelationFamily& G) {
  const GaborLattice& lat = G.lattice;
  const double scale = static_cast<double>(lat.shift_length());
  std::vector<std::pair<long, MatrixField>> terms;
  for (int s = 0; s < lat.b(); ++s) {
    MatrixField symbol(lat.length(), G.channels());
    for (int l = 0; l < lat.length(); ++l) symbol.mutable_at(l) = scale * G.G[s][l];
    terms.emplace_back(static_cast<long>(s) * lat.shift_length(), std::move(symbol));
  }
  return ShiftOperator(lat.length(), G.channels(), terms);
}

VectorSignal shift_apply(const ShiftOperator& A, const VectorSignal& f) {
  if (f.length() != A.length() || f.channels() != A.channels()) {
    throw DimensionError("shift_apply: signal shape does not match operator");
  }
  const long L = A.length();
  const long n = A.channels();
  std::vector<Complex> out(static_cast<std::size_t>(L * n));
  Eigen::Map<Eigen::VectorXcd> result(out.data(), L * n);
  for (const auto& [x, m] : A.terms()) {
    for (long l = 0; l < L; ++l) {
      result.segment(l * n, n).noalias() += m[l] * f.at(l - x);
    }
  }
  return VectorSignal(static_cast<int>(L), static_cast<int>(n), std::move(out));
}

ShiftOperator shift_compose(const ShiftOperator& A, const ShiftOperator& B) {
  require_same_space(A, B, "shift_compose");
  const long L = A.length();
  const int n = A.channels();
  std::map<long, MatrixField> acc;
  for (const auto& [y, my] : A.terms()) {
    for (const auto& [z, nz] : B.terms()) {
      const long x = wrap(y + z, L);
      auto it = acc.try_emplace(x, static_cast<int>(L), n).first;
      for (long l = 0; l < L; ++l) {
        it->second.mutable_at(l).noalias() += my[l] * nz[l - y];
      }
    }
  }
  std::vector<std::pair<long, MatrixField>> terms(acc.begin(), acc.end());
  return ShiftOperator(static_cast<int>(L), n, terms);
}

ShiftOperator shift_involution(const ShiftOperator& A) {
  const long L = A.length();
  const int n = A.channels();
  std::vector<std::pair<long, MatrixField>> terms;
  for (const auto& [s, m] : A.terms()) {
    // m_s contributes to the adjoint at x = -s with symbol m_s(l - x)^H.
    const long x = wrap(-s, L);
    MatrixField adj(static_cast<int>(L), n);
    for (long l = 0; l < L; ++l) adj.mutable_at(l) = m[l - x].adjoint();
    terms.emplace_back(x, std::move(adj));
  }
  return ShiftOperator(static_cast<int>(L), n, terms);
}

ShiftOperator extract_coeffs(const DenseOperator& A, int length, int channels) {
  const long L = length;
  const long n = channels;
  if (A.rows() != L * n || A.cols() != L * n) {
    throw DimensionError("extract_coeffs: matrix is not (L n) x (L n)");
  }
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());

  // Character sums (1/L) sum_y exp(2 pi i y d / L) for every residue d,
  // evaluated in floating point; the average M_y A M_{-y} weighted by
  // exp(-2 pi i y x / L) is A[l][j] times this sum at d = l - j - x.
  std::vector<Complex> character(static_cast<std::size_t>(L));
  for (long d = 0; d < L; ++d) {
    Complex s{};
    for (long y = 0; y < L; ++y) s += unit_root(y * d, L);
    character[d] = s / static_cast<double>(L);
  }

  std::vector<std::pair<long, MatrixField>> terms;
  double gap = 0.0;
  const bool full_average = L <= kFullAverageLimit;
  for (long x = 0; x < L; ++x) {
    MatrixField diagonal(length, channels);
    for (long l = 0; l < L; ++l) {
      diagonal.mutable_at(l) = A.block(l * n, wrap(l - x, L) * n, n, n);
    }
    if (full_average) {
      // Every block of C_x: the diagonal l - j = x must reproduce m_x, all
      // other blocks must vanish.
      for (long l = 0; l < L; ++l) {
        for (long j = 0; j < L; ++j) {
          const Complex c = character[wrap(l - j - x, L)];
          const auto averaged = (c * A.block(l * n, j * n, n, n)).eval();
          if (wrap(l - j, L) == x) {
            gap = std::max(gap, (averaged - diagonal[l]).cwiseAbs().maxCoeff());
          } else {
            gap = std::max(gap, averaged.cwiseAbs().maxCoeff());
          }
        }
      }
    }
    if (!diagonal.is_zero()) terms.emplace_back(x, std::move(diagonal));
  }
  if (!full_average) {
    // Same comparison with the per-block maximum over x taken in closed form:
    // block (l, j) enters C_x scaled by character[l - j - x].
    double off = 0.0;
    for (long d = 1; d < L; ++d) off = std::max(off, std::abs(character[d]));
    const double amax = A.cwiseAbs().maxCoeff();
    gap = std::max(std::abs(character[0] - 1.0), off) * amax;
  }
  if (gap > kExtractionTol * scale) {
    throw ConsistencyError("shift extraction routes disagree by " + show(gap));
  }
  return ShiftOperator(length, channels, terms);
}

AlgebraNorm algebra_norm(const ShiftOperator& A, const Weight& w) {
  if (w.length() != A.length()) {
    throw DimensionError("algebra_norm: weight length differs from L");
  }
  AlgebraNorm out{0.0, w};
  for (const auto& [x, m] : A.terms()) out.value += m.sup_norm() * w(x);
  return out;
}

SpectralInverse spectral_invert(const ShiftOperator& A, const Weight& w,
                                double tol, std::uint64_t seed) {
  if (w.length() != A.length()) {
    throw DimensionError("spectral_invert: weight length differs from L");
  }
  const DenseOperator D = A.to_dense();
  const Eigen::BDCSVD<DenseOperator> svd(D);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (!(smax > 0.0) || smin < kSingularRatio * smax) {
    throw SingularOperator("operator is singular (sigma_min/sigma_max = " +
                           show(smax > 0.0 ? smin / smax : 0.0) + ")");
  }
  const DenseOperator Dinv = D.partialPivLu().inverse();
  SpectralInverse out{extract_coeffs(Dinv, A.length(), A.channels()), smax / smin, {}, 0.0};

  for (int x = 0; x < A.length(); ++x) {
    const MatrixField* m = out.inverse.term(x);
    out.decay.push_back({x, m ? m->sup_norm() : 0.0, w(x)});
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Complex> data(static_cast<std::size_t>(A.length()) * A.channels());
  for (auto& z : data) z = Complex(normal(rng), normal(rng));
  const VectorSignal f(A.length(), A.channels(), std::move(data));
  const VectorSignal back = shift_apply(out.inverse, shift_apply(A, f));
  double fmax = 0.0;
  for (const Complex& z : f.data()) fmax = std::max(fmax, std::abs(z));
  out.roundtrip_error = max_abs_diff(back, f) / fmax;
  if (out.roundtrip_error > tol) {
    throw ToleranceFailure("spectral inverse round trip error " +
                           show(out.roundtrip_error) + " exceeds tol");
  }
  return out;
}

bool decays_in_wrap_distance(const std::vector<DecayEntry>& profile, int length,
                             int stride, double slack) {
  if (stride < 1) throw InvalidParameter("stride must be positive");
  std::map<long, double> by_distance;
  for (const DecayEntry& e : profile) {
    if (e.x % stride != 0) continue;
    auto& v = by_distance[wrap_distance(e.x, length)];
    v = std::max(v, e.symbol_norm);
  }
  double previous = -1.0;
  for (const auto& [d, v] : by_distance) {
    if (previous >= 0.0 && v > (1.0 + slack) * previous) return false;
    previous = v;
  }
  return true;
}

RhoCheck rho_eigen_check(const ShiftOperator& C, long y) {
  if (C.terms().size() != 1) {
    throw MultiTermError("rho_eigen_check expects exactly one shift term, got " +
                         std::to_string(C.terms().size()));
  }
  const long L = C.length();
  const long x = C.terms().begin()->first;
  const DenseOperator D = C.to_dense();
  const DenseOperator conj = modulation_conjugate(D, y, L, C.channels());
  RhoCheck out;
  out.dev = (conj - unit_root(y * x, L) * D).cwiseAbs().maxCoeff();
  out.pass = out.dev <= kRhoTol;
  return out;
}

}  // namespace gabor_super
