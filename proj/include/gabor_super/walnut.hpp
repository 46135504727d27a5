#pragma once

// Walnut and Janssen representations of the mixed frame operator
//   S_{g,gamma} f = sum_{k,m} <f, M_{mb} T_{ka} g> M_{mb} T_{ka} gamma.
//
// Walnut: S f(l) = (L/b) sum_{n<b} G_n(l) f(l - n L/b) with
//   G_n(l) = sum_k gamma(l - k a) (.) g(l - k a - n L/b).
// Janssen: S = sum_{j<a, n<b} B(j, n) M_{j L/a} T_{n L/b}, with the bracket
//   B(j, n) = (L / (a b)) sum_l gamma(l) (.) (M_{j L/a} T_{n L/b} g)(l).

#include <span>
#include <vector>

#include "gabor_super/amalgam.hpp"
#include "gabor_super/core.hpp"
#include "gabor_super/lattice.hpp"

namespace gabor_super {

struct CorrelationFamily {
  GaborLattice lattice;
  /// G[n][l] for n = 0..b-1; each field has length L.
  std::vector<MatrixField> G;

  int channels() const { return G.front().dim(); }
};

CorrelationFamily correlations(const VectorSignal& g, const VectorSignal& gamma,
                               const GaborLattice& lat);

/// O(L b n^2) application of the frame operator.
VectorSignal walnut_apply(const CorrelationFamily& G, const VectorSignal& f);

/// Dense matrix of the Walnut operator (cheap; no atom sums).
DenseOperator walnut_dense(const CorrelationFamily& G);

/// sum_n (max_l |G_n(l)|) w(n L/b).
double correlation_weight_sum(const CorrelationFamily& G, const Weight& w);

struct JanssenTable {
  GaborLattice lattice;
  int channels;
  /// Row-major a x b, entry (j, n) at j * b + n.
  std::vector<HMatrix> B;

  const HMatrix& at(int j, int n) const {
    return B[static_cast<std::size_t>(j) * lattice.b() + n];
  }
};

JanssenTable janssen_coeffs(const VectorSignal& g, const VectorSignal& gamma,
                            const GaborLattice& lat);

/// sum_{j,n} B(j, n) (M_{j L/a} T_{n L/b} f).
VectorSignal janssen_apply(const JanssenTable& table, const VectorSignal& f);

struct WexlerRazResult {
  bool pass = false;
  double max_dev = 0.0;
};

/// Deviation of the bracket table from delta_{j0} delta_{n0} I in operator
/// norm; passes when the deviation is at most `tol`.
WexlerRazResult wexler_raz_check(const VectorSignal& g, const VectorSignal& gamma,
                                 const GaborLattice& lat, double tol);

/// One summand of a multi-window system: scalar window, its partner window,
/// and the lattice it lives on.
struct ChannelSystem {
  VectorSignal window;
  VectorSignal dual;
  GaborLattice lattice;
};

/// Applies S^{Lambda_i}_{g_i, gamma_i} to channel i of f and stacks the
/// outputs: the frame operator of a system with one lattice per channel.
VectorSignal multiwindow_apply(std::span<const ChannelSystem> systems,
                               const VectorSignal& f);

}  // namespace gabor_super
