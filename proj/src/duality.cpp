#include "gabor_super/duality.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "gabor_super/errors.hpp"
#include "gabor_super/gabor.hpp"
#include "gabor_super/walnut.hpp"

namespace gabor_super {

namespace {

constexpr int kDenseEigenLimit = 1024;
constexpr int kPowerIterationCap = 5000;
// Internal solve accuracy for the two routes of inverse_frame_apply.
constexpr double kInternalSolveTol = 1e-13;

LinearMap walnut_map(const CorrelationFamily& G) {
  const int L = G.lattice.length();
  const int n = G.channels();
  return [&G, L, n](const Eigen::VectorXcd& x) {
    return walnut_apply(G, VectorSignal::from_flat(L, n, x)).flat();
  };
}

// Largest eigenvalue of a Hermitian PSD map by power iteration, stopped when
// the Rayleigh quotient changes by at most tol relative.
double power_iteration(const LinearMap& op, Eigen::Index dim, double tol) {
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal;
  Eigen::VectorXcd v(dim);
  for (Eigen::Index j = 0; j < dim; ++j) v(j) = Complex(normal(rng), normal(rng));
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < kPowerIterationCap; ++it) {
    const Eigen::VectorXcd w = op(v);
    const double next = v.dot(w).real();
    const double wn = w.norm();
    if (wn == 0.0) return 0.0;
    v = w / wn;
    if (it > 0 && std::abs(next - lambda) <= tol * std::abs(next)) return next;
    lambda = next;
  }
  return lambda;
}

}  // namespace

double FrameBounds::condition() const {
  if (A <= 0.0) return std::numeric_limits<double>::infinity();
  return B / A;
}

FrameBounds frame_bounds(const VectorSignal& g, const GaborLattice& lat,
                         double tol, double frame_tol) {
  if (!(tol > 0.0)) throw InvalidParameter("frame_bounds: tol must be > 0");
  const CorrelationFamily G = correlations(g, g, lat);
  const Eigen::Index dim = static_cast<Eigen::Index>(g.length()) * g.channels();
  FrameBounds out;
  if (dim <= kDenseEigenLimit) {
    DenseOperator S = walnut_dense(G);
    S = (0.5 * (S + S.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<DenseOperator> eig(S, Eigen::EigenvaluesOnly);
    out.A = std::max(0.0, eig.eigenvalues()(0));
    out.B = std::max(0.0, eig.eigenvalues()(dim - 1));
  } else {
    const LinearMap S = walnut_map(G);
    out.B = power_iteration(S, dim, tol);
    const double top = out.B;
    const LinearMap shifted = [&S, top](const Eigen::VectorXcd& x) {
      return (top * x - S(x)).eval();
    };
    out.A = std::max(0.0, top - power_iteration(shifted, dim, tol));
  }
  out.is_frame = out.A > frame_tol;
  return out;
}

SolveResult conjugate_gradient(const LinearMap& op, const Eigen::VectorXcd& rhs,
                               double tol, int max_iter) {
  SolveResult out;
  out.x = Eigen::VectorXcd::Zero(rhs.size());
  const double bnorm = rhs.norm();
  if (bnorm == 0.0) {
    out.converged = true;
    return out;
  }
  // Cycles restart from the true residual; a cycle that does not halve it
  // ends the solve.
  Eigen::VectorXcd r = rhs;
  double residual = 1.0;
  while (true) {
    Eigen::VectorXcd p = r;
    double rs = r.squaredNorm();
    while (out.iterations < max_iter && std::sqrt(rs) > tol * bnorm) {
      const Eigen::VectorXcd Ap = op(p);
      const Complex pAp = p.dot(Ap);
      if (pAp.real() <= 0.0) break;
      const Complex alpha = rs / pAp;
      out.x += alpha * p;
      r -= alpha * Ap;
      const double rs_next = r.squaredNorm();
      p = r + (rs_next / rs) * p;
      rs = rs_next;
      ++out.iterations;
    }
    r = rhs - op(out.x);
    const double next = r.norm() / bnorm;
    const bool stalled = next > 0.5 * residual;
    residual = next;
    if (residual <= tol || out.iterations >= max_iter || stalled) break;
  }
  out.relative_residual = residual;
  out.converged = residual <= tol;
  return out;
}

SolveResult frame_algorithm(const LinearMap& op, const Eigen::VectorXcd& rhs,
                            double A, double B, double tol, int max_iter) {
  SolveResult out;
  out.x = Eigen::VectorXcd::Zero(rhs.size());
  const double bnorm = rhs.norm();
  if (bnorm == 0.0) {
    out.converged = true;
    return out;
  }
  const double relax = 2.0 / (A + B);
  Eigen::VectorXcd r = rhs;
  while (out.iterations < max_iter && r.norm() > tol * bnorm) {
    out.x += relax * r;
    r = rhs - op(out.x);
    ++out.iterations;
  }
  out.relative_residual = r.norm() / bnorm;
  out.converged = out.relative_residual <= tol;
  return out;
}

DualWindow compute_dual_window(const VectorSignal& g, const GaborLattice& lat,
                               const DualOptions& options) {
  if (!(options.tol > 0.0)) throw InvalidParameter("dual_window: tol must be > 0");
  const FrameBounds bounds = frame_bounds(g, lat, 1e-10, options.frame_tol);
  if (!bounds.is_frame) {
    throw NotAFrame("lower frame bound A=" + show(bounds.A) +
                    " is not above the frame tolerance");
  }
  const CorrelationFamily G = correlations(g, g, lat);
  const LinearMap S = walnut_map(G);
  const int dim = g.length() * g.channels();
  int cap = options.max_iter > 0 ? options.max_iter : 10 * dim;
  SolveResult solve;
  if (options.method == DualMethod::kConjugateGradient) {
    solve = conjugate_gradient(S, g.flat(), options.tol, cap);
  } else {
    if (options.max_iter <= 0) cap *= 100;
    solve = frame_algorithm(S, g.flat(), bounds.A, bounds.B, options.tol, cap);
  }
  if (!solve.converged) {
    throw NoConvergence("dual window solve stopped after " +
                        std::to_string(solve.iterations) +
                        " iterations at relative residual " +
                        show(solve.relative_residual));
  }
  return DualWindow{VectorSignal::from_flat(g.length(), g.channels(), solve.x),
                    bounds, solve.iterations, solve.relative_residual};
}

VectorSignal dual_window(const VectorSignal& g, const GaborLattice& lat,
                         double tol) {
  DualOptions options;
  options.tol = tol;
  return compute_dual_window(g, lat, options).window;
}

int support_length(const VectorSignal& f) {
  const int L = f.length();
  std::vector<bool> zero(static_cast<std::size_t>(L));
  bool any = false;
  for (int l = 0; l < L; ++l) {
    zero[l] = f.at(l).isZero(0.0);
    any = any || !zero[l];
  }
  if (!any) return 0;
  // Longest cyclic run of zeros; the support fits in the complement.
  int best = 0;
  int run = 0;
  for (int t = 0; t < 2 * L; ++t) {
    run = zero[t % L] ? run + 1 : 0;
    best = std::max(best, std::min(run, L));
  }
  return L - best;
}

VectorSignal painless_dual(const VectorSignal& g, const GaborLattice& lat) {
  require_compatible(g, g, lat, "painless_dual");
  const int width = support_length(g);
  if (width > lat.shift_length()) {
    throw SupportTooWide("window support " + std::to_string(width) +
                         " exceeds L/b=" + std::to_string(lat.shift_length()));
  }
  const CorrelationFamily G = correlations(g, g, lat);
  const int L = g.length();
  const int n = g.channels();
  const double scale = static_cast<double>(lat.shift_length());
  std::vector<Complex> out(static_cast<std::size_t>(L) * n);
  for (int l = 0; l < L; ++l) {
    HMatrix D = scale * G.G[0][l];
    D = (0.5 * (D + D.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<HMatrix> eig(D);
    if (eig.eigenvalues()(0) <= kFrameTol) {
      throw SingularWeight("diagonal weight is singular at l=" + std::to_string(l));
    }
    const HVector gl = g.at(l);
    const HVector x = eig.eigenvectors() *
                      (eig.eigenvalues().cwiseInverse().asDiagonal() *
                       (eig.eigenvectors().adjoint() * gl));
    for (int i = 0; i < n; ++i) out[l * n + i] = x(i);
  }
  return VectorSignal(L, n, std::move(out));
}

ConvergenceProfile truncation_error_profile(const VectorSignal& f,
                                            const VectorSignal& g,
                                            const VectorSignal& gamma,
                                            const GaborLattice& lat, double p,
                                            double q, const Weight& v,
                                            double dual_tol) {
  require_compatible(f, g, lat, "truncation_error_profile");
  require_compatible(g, gamma, lat, "truncation_error_profile");
  const WexlerRazResult wr = wexler_raz_check(g, gamma, lat, dual_tol);
  if (!wr.pass) {
    throw NotDualPair("windows are not a dual pair (Wexler-Raz deviation " +
                      show(wr.max_dev) + ")");
  }
  const AmalgamParams prm{p, q, lat.a(), v};
  const GaborCoefficients full = analyze(f, g, lat);
  const int N = lat.translates();
  const int M = lat.modulations();
  const int radius = std::max(N / 2, M / 2);
  ConvergenceProfile profile;
  for (int r = 0; r <= radius; ++r) {
    const int K = std::min(r, N / 2);
    const int Nm = std::min(r, M / 2);
    GaborCoefficients box{lat, Eigen::MatrixXcd::Zero(N, M)};
    for (int k = 0; k < N; ++k) {
      if (wrap_distance(k, N) > K) continue;
      for (int m = 0; m < M; ++m) {
        if (wrap_distance(m, M) <= Nm) box.c(k, m) = full.c(k, m);
      }
    }
    const VectorSignal partial = synthesize(box, gamma);
    profile.push_back({K, Nm, amalgam_norm(f - partial, prm)});
  }
  return profile;
}

InverseApply inverse_frame_apply_checked(const VectorSignal& g,
                                         const GaborLattice& lat,
                                         const VectorSignal& f, double tol) {
  require_compatible(f, g, lat, "inverse_frame_apply");
  if (!(tol > 0.0)) throw InvalidParameter("inverse_frame_apply: tol must be > 0");
  DualOptions options;
  options.tol = kInternalSolveTol;
  const DualWindow dual = compute_dual_window(g, lat, options);

  const CorrelationFamily G = correlations(g, g, lat);
  const int dim = f.length() * f.channels();
  const SolveResult solve =
      conjugate_gradient(walnut_map(G), f.flat(), kInternalSolveTol, 10 * dim);
  if (!solve.converged) {
    throw NoConvergence("inverse frame solve did not converge");
  }
  const VectorSignal direct = VectorSignal::from_flat(f.length(), f.channels(), solve.x);
  const VectorSignal via_dual =
      walnut_apply(correlations(dual.window, dual.window, lat), f);

  InverseApply out{direct, 0.0, dual.bounds};
  const double scale = std::max(direct.norm(), std::numeric_limits<double>::min());
  out.route_gap = direct.norm() == 0.0 && via_dual.norm() == 0.0
                      ? 0.0
                      : (direct - via_dual).norm() / scale;
  if (out.route_gap > tol) {
    throw ConsistencyError("inverse frame routes disagree by " +
                           show(out.route_gap));
  }
  return out;
}

VectorSignal inverse_frame_apply(const VectorSignal& g, const GaborLattice& lat,
                                 const VectorSignal& f, double tol) {
  return inverse_frame_apply_checked(g, lat, f, tol).result;
}

}  // namespace gabor_super
