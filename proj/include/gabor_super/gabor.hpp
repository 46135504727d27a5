#pragma once

// Analysis and synthesis operators of H-valued Gabor systems, and the dense
// frame operator built atom by atom.

#include "gabor_super/amalgam.hpp"
#include "gabor_super/core.hpp"
#include "gabor_super/lattice.hpp"

namespace gabor_super {

/// c(k, m) = <f, M_{m b} T_{k a} g>, an N x M array (N = L/a, M = L/b).
struct GaborCoefficients {
  GaborLattice lattice;
  Eigen::MatrixXcd c;
};

/// Throws unless f and g share L and n and the lattice is built for that L.
void require_compatible(const VectorSignal& f, const VectorSignal& g,
                        const GaborLattice& lat, const char* what);

/// The atom M_{m b} T_{k a} g.
VectorSignal gabor_atom(const VectorSignal& g, const GaborLattice& lat, int k,
                        int m);

GaborCoefficients analyze(const VectorSignal& f, const VectorSignal& g,
                          const GaborLattice& lat);

/// sum_{k,m} c(k, m) M_{m b} T_{k a} g. Adjoint of `analyze`.
VectorSignal synthesize(const GaborCoefficients& c, const VectorSignal& g);

/// Dense matrix of f -> sum_{k,m} <f, M T g> M T gamma, accumulated one
/// rank-one atom product at a time. O(N M (L n)^2); meant as a reference
/// at small L.
DenseOperator frame_operator_direct(const VectorSignal& g,
                                    const VectorSignal& gamma,
                                    const GaborLattice& lat);

/// Norm of the coefficient space S^{p,q}_v. Row k is turned into the
/// trigonometric polynomial m_k(x) = sum_m c(k, m) exp(2 pi i m x / M) on
/// x = 0..M-1; the block norm is the l^p norm for the normalized counting
/// measure on that block, and the rows are combined in l^q with v(a k).
///
/// With that normalization the p = q = 2, v = 1 case equals the l^2 norm of
/// the coefficient array exactly.
double coeff_norm_spq(const GaborCoefficients& c, double p, double q,
                      const Weight& v);

}  // namespace gabor_super
