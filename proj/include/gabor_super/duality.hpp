#pragma once

// Frame bounds, dual windows and reconstruction experiments.

#include <functional>
#include <vector>

#include "gabor_super/amalgam.hpp"
#include "gabor_super/core.hpp"
#include "gabor_super/lattice.hpp"

namespace gabor_super {

/// Lower frame bounds at or below this are reported as "not a frame".
inline constexpr double kFrameTol = 1e-10;

struct FrameBounds {
  double A = 0.0;
  double B = 0.0;
  bool is_frame = false;

  /// B / A, infinite when A = 0.
  double condition() const;
};

/// Extreme eigenvalues of S_g. Dense eigendecomposition up to L n = 1024;
/// above that, power iteration on the Walnut operator for B and on B I - S
/// for A, stopped at relative accuracy `tol`.
FrameBounds frame_bounds(const VectorSignal& g, const GaborLattice& lat,
                         double tol = 1e-10, double frame_tol = kFrameTol);

using LinearMap = std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>;

struct SolveResult {
  Eigen::VectorXcd x;
  int iterations = 0;
  /// |b - A x| / |b| at exit.
  double relative_residual = 0.0;
  bool converged = false;
};

/// Conjugate gradient for Hermitian positive (semi)definite `op`.
SolveResult conjugate_gradient(const LinearMap& op, const Eigen::VectorXcd& rhs,
                               double tol, int max_iter);

/// x <- x + 2/(A+B) (rhs - S x); converges for A I <= S <= B I, A > 0.
SolveResult frame_algorithm(const LinearMap& op, const Eigen::VectorXcd& rhs,
                            double A, double B, double tol, int max_iter);

enum class DualMethod { kConjugateGradient, kFrameAlgorithm };

struct DualOptions {
  /// Target |S gamma - g| / |g|.
  double tol = 1e-12;
  double frame_tol = kFrameTol;
  /// 0 selects 10 L n for CG; the frame algorithm gets 100x that.
  int max_iter = 0;
  DualMethod method = DualMethod::kConjugateGradient;
};

struct DualWindow {
  VectorSignal window;
  FrameBounds bounds;
  int iterations = 0;
  double relative_residual = 0.0;
};

/// gamma = S_g^{-1} g by an iterative solve with `walnut_apply` as the
/// matrix-vector product. Throws NotAFrame or NoConvergence.
DualWindow compute_dual_window(const VectorSignal& g, const GaborLattice& lat,
                               const DualOptions& options = {});

VectorSignal dual_window(const VectorSignal& g, const GaborLattice& lat,
                         double tol = 1e-12);

/// Closed-form dual when g vanishes outside a cyclic interval of length at
/// most L/b: S is then multiplication by (L/b) G_0(l) and
/// gamma(l) = ((L/b) G_0(l))^{-1} g(l).
/// Throws SupportTooWide or SingularWeight.
VectorSignal painless_dual(const VectorSignal& g, const GaborLattice& lat);

/// Length of the shortest cyclic interval outside which f vanishes.
int support_length(const VectorSignal& f);

struct ConvergenceRecord {
  int K = 0;  // radius in the translation index
  int N = 0;  // radius in the modulation index
  double err = 0.0;
};

using ConvergenceProfile = std::vector<ConvergenceRecord>;

/// Amalgam-norm error of the partial reconstructions
///   sum_{|k| <= K, |m| <= N} <f, M_{mb} T_{ka} g> M_{mb} T_{ka} gamma
/// over nested boxes centred at index 0 (cyclic distance), radius
/// r = 0, 1, ... with K = min(r, (L/a)/2), N = min(r, (L/b)/2). The last
/// record is the full lattice. Blocks of the amalgam norm have size a.
/// Throws NotDualPair unless (g, gamma) passes Wexler-Raz at `dual_tol`.
ConvergenceProfile truncation_error_profile(const VectorSignal& f,
                                            const VectorSignal& g,
                                            const VectorSignal& gamma,
                                            const GaborLattice& lat, double p,
                                            double q, const Weight& v,
                                            double dual_tol = 1e-6);

struct InverseApply {
  VectorSignal result;
  /// max |route1 - route2| / max(1, |route1|_inf).
  double route_gap = 0.0;
  FrameBounds bounds;
};

/// S_g^{-1} f computed by a CG solve of S x = f and by S_{gd,gd} f with
/// gd = dual_window(g); throws ConsistencyError when the two differ by more
/// than `tol` (relative to |f|).
InverseApply inverse_frame_apply_checked(const VectorSignal& g,
                                         const GaborLattice& lat,
                                         const VectorSignal& f, double tol = 1e-8);

VectorSignal inverse_frame_apply(const VectorSignal& g, const GaborLattice& lat,
                                 const VectorSignal& f, double tol = 1e-8);

}  // namespace gabor_super
