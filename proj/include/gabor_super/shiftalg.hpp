#pragma once

// The algebra A_w of weighted shifts  A = sum_x m_x T_x  on L^2(Z_L, C^n):
//   (A f)(l) = sum_x m_x(l) f(l - x),
// with matrix-valued symbols m_x and norm |A|_{A_w} = sum_x sup_l |m_x(l)| w(x).

#include <cstdint>
#include <map>
#include <vector>

#include "gabor_super/amalgam.hpp"
#include "gabor_super/core.hpp"
#include "gabor_super/walnut.hpp"

namespace gabor_super {

class ShiftOperator {
 public:
  using Terms = std::map<int, MatrixField>;

  ShiftOperator(int length, int channels);
  /// Shifts are reduced mod L; terms landing on the same shift are added.
  ShiftOperator(int length, int channels, const std::vector<std::pair<long, MatrixField>>& terms);

  int length() const { return length_; }
  int channels() const { return channels_; }
  const Terms& terms() const { return terms_; }
  /// Symbol at shift x, or nullptr when the operator has no such term.
  const MatrixField* term(long x) const;

  /// A copy with `symbol` added at shift x.
  ShiftOperator with_term(long x, const MatrixField& symbol) const;

  DenseOperator to_dense() const;

 private:
  int length_;
  int channels_;
  Terms terms_;
};

/// The Walnut operator as a weighted shift: terms at x = n L/b with symbols
/// (L/b) G_n.
ShiftOperator from_correlations(const CorrelationFamily& G);

VectorSignal shift_apply(const ShiftOperator& A, const VectorSignal& f);

/// Product A B: the term at x is sum_y m_y(l) n_{x-y}(l - y).
ShiftOperator shift_compose(const ShiftOperator& A, const ShiftOperator& B);

/// Adjoint A*: the term at x is m_{-x}(l - x)^H.
ShiftOperator shift_involution(const ShiftOperator& A);

/// Decomposes a dense operator into its shift components.
///
/// The component at x is computed twice: as the character average
///   C_x = (1/L) sum_y M_y A M_{-y} exp(-2 pi i y x / L)
/// and by reading the block diagonal m_x(l) = A[l][l - x]. The routes must
/// agree to 1e-12 (relative to max |A|) or ConsistencyError is thrown.
/// Shifts whose symbol is identically zero are omitted.
ShiftOperator extract_coeffs(const DenseOperator& A, int length, int channels);

struct AlgebraNorm {
  double value = 0.0;
  Weight weight;
};

AlgebraNorm algebra_norm(const ShiftOperator& A, const Weight& w);

struct DecayEntry {
  int x = 0;
  double symbol_norm = 0.0;  // sup_l |m_x(l)|
  double weight = 0.0;       // w(x)
};

struct SpectralInverse {
  ShiftOperator inverse;
  double condition = 0.0;
  /// One entry per shift 0..L-1 (zero norm where there is no term).
  std::vector<DecayEntry> decay;
  double roundtrip_error = 0.0;
};

/// Inverts dense(A) by pivoted LU, extracts the shift components of the
/// inverse, and verifies shift_apply(inverse, shift_apply(A, f)) = f to `tol`
/// (relative, max norm) on a seeded random f. Throws SingularOperator when
/// the smallest singular value is below 1e-12 times the largest, and
/// ToleranceFailure when the round trip misses `tol`.
SpectralInverse spectral_invert(const ShiftOperator& A, const Weight& w,
                                double tol = 1e-8, std::uint64_t seed = 1);

/// True when sup-norms of the profile, grouped by wrap distance and
/// restricted to shifts that are multiples of `stride`, never grow by more
/// than the factor (1 + slack) from one distance to the next.
bool decays_in_wrap_distance(const std::vector<DecayEntry>& profile, int length,
                             int stride, double slack);

struct RhoCheck {
  bool pass = false;
  double dev = 0.0;
};

/// For a single-term operator C = m T_x checks M_y C M_{-y} = e^{2 pi i y x/L} C
/// in max norm (pass at 1e-12). Throws MultiTermError otherwise.
RhoCheck rho_eigen_check(const ShiftOperator& C, long y);

}  // namespace gabor_super
