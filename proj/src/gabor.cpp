#include "gabor_super/gabor.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "gabor_super/errors.hpp"

namespace gabor_super {

GaborLattice::GaborLattice(int a, int b, int length)
    : a_(a), b_(b), length_(length) {
  if (length < 1) throw LatticeError("lattice length must be positive");
  if (a < 1 || b < 1) throw LatticeError("lattice steps must be positive");
  if (length % a != 0 || length % b != 0) {
    throw LatticeError("lattice steps a=" + std::to_string(a) +
                       " b=" + std::to_string(b) +
                       " must divide L=" + std::to_string(length));
  }
}

void require_compatible(const VectorSignal& f, const VectorSignal& g,
                        const GaborLattice& lat, const char* what) {
  if (f.length() != g.length() || f.channels() != g.channels()) {
    throw DimensionError(std::string(what) + ": signal and window shapes differ");
  }
  if (lat.length() != f.length()) {
    throw DimensionError(std::string(what) + ": lattice built for L=" +
                         std::to_string(lat.length()) + " but signal has L=" +
                         std::to_string(f.length()));
  }
}

namespace {

// Row k of the coefficient array as the trigonometric polynomial
// m_k(x) = sum_m c(k, m) exp(2 pi i m x / M), x = 0..M-1.
std::vector<Complex> row_polynomial(const Eigen::MatrixXcd& c, int k) {
  const long M = c.cols();
  std::vector<Complex> out(static_cast<std::size_t>(M));
  for (long x = 0; x < M; ++x) {
    Complex s{};
    for (long m = 0; m < M; ++m) s += c(k, m) * unit_root(m * x, M);
    out[x] = s;
  }
  return out;
}

void require_coefficients(const GaborCoefficients& c) {
  if (c.c.rows() != c.lattice.translates() ||
      c.c.cols() != c.lattice.modulations()) {
    throw DimensionError("coefficient array is " + std::to_string(c.c.rows()) +
                         "x" + std::to_string(c.c.cols()) + ", lattice expects " +
                         std::to_string(c.lattice.translates()) + "x" +
                         std::to_string(c.lattice.modulations()));
  }
}

}  // namespace

VectorSignal gabor_atom(const VectorSignal& g, const GaborLattice& lat, int k,
                        int m) {
  return modulate(translate(g, static_cast<long>(k) * lat.a()),
                  static_cast<long>(m) * lat.b());
}

GaborCoefficients analyze(const VectorSignal& f, const VectorSignal& g,
                          const GaborLattice& lat) {
  require_compatible(f, g, lat, "analyze");
  const int L = lat.length();
  const int N = lat.translates();
  const int M = lat.modulations();
  GaborCoefficients out{lat, Eigen::MatrixXcd::Zero(N, M)};

  // exp(2 pi i m b l / L) depends on l only through l mod M, so the
  // pointwise products are folded onto Z_M before the frequency sum.
  std::vector<Complex> fold(static_cast<std::size_t>(M));
  for (int k = 0; k < N; ++k) {
    std::fill(fold.begin(), fold.end(), Complex{});
    const long shift = static_cast<long>(k) * lat.a();
    for (int l = 0; l < L; ++l) {
      fold[l % M] += g.at(l - shift).dot(f.at(l));
    }
    for (int m = 0; m < M; ++m) {
      Complex s{};
      for (int r = 0; r < M; ++r) {
        s += fold[r] * unit_root(-static_cast<long>(m) * r, M);
      }
      out.c(k, m) = s;
    }
  }
  return out;
}

VectorSignal synthesize(const GaborCoefficients& c, const VectorSignal& g) {
  require_coefficients(c);
  const GaborLattice& lat = c.lattice;
  if (g.length() != lat.length()) {
    throw DimensionError("synthesize: window length differs from lattice length");
  }
  const int L = lat.length();
  const int n = g.channels();
  const int M = lat.modulations();
  std::vector<Complex> out(static_cast<std::size_t>(L) * n);
  for (int k = 0; k < lat.translates(); ++k) {
    const std::vector<Complex> poly = row_polynomial(c.c, k);
    const long shift = static_cast<long>(k) * lat.a();
    for (int l = 0; l < L; ++l) {
      const Complex s = poly[l % M];
      for (int i = 0; i < n; ++i) out[l * n + i] += s * g(l - shift, i);
    }
  }
  return VectorSignal(L, n, std::move(out));
}

DenseOperator frame_operator_direct(const VectorSignal& g,
                                    const VectorSignal& gamma,
                                    const GaborLattice& lat) {
  require_compatible(g, gamma, lat, "frame_operator_direct");
  const Eigen::Index dim = static_cast<Eigen::Index>(g.length()) * g.channels();
  DenseOperator S = DenseOperator::Zero(dim, dim);
  for (int k = 0; k < lat.translates(); ++k) {
    for (int m = 0; m < lat.modulations(); ++m) {
      const Eigen::VectorXcd gk = gabor_atom(g, lat, k, m).flat();
      const Eigen::VectorXcd hk = gabor_atom(gamma, lat, k, m).flat();
      S.noalias() += hk * gk.adjoint();
    }
  }
  return S;
}

double coeff_norm_spq(const GaborCoefficients& c, double p, double q,
                      const Weight& v) {
  validate_exponent(p, "p");
  validate_exponent(q, "q");
  require_coefficients(c);
  const GaborLattice& lat = c.lattice;
  if (v.length() != lat.length()) {
    throw DimensionError("coeff_norm_spq: weight length differs from L");
  }
  const int M = lat.modulations();
  const double measure = std::isinf(p) ? 1.0 : std::pow(static_cast<double>(M), -1.0 / p);
  std::vector<double> rows(static_cast<std::size_t>(lat.translates()));
  std::vector<double> mags(static_cast<std::size_t>(M));
  for (int k = 0; k < lat.translates(); ++k) {
    const std::vector<Complex> poly = row_polynomial(c.c, k);
    for (int x = 0; x < M; ++x) mags[x] = std::abs(poly[x]);
    rows[k] = measure * lp_norm(mags, p) * v(static_cast<long>(k) * lat.a());
  }
  return lp_norm(rows, q);
}

}  // namespace gabor_super
