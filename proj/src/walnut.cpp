#include "gabor_super/walnut.hpp"

#include <string>

#include "gabor_super/errors.hpp"
#include "gabor_super/gabor.hpp"

namespace gabor_super {

namespace {

inline Complex mul(Complex x, Complex y) {
  return {x.real() * y.real() - x.imag() * y.imag(), x.real() * y.imag() + x.imag() * y.real()};
}

}  // namespace

CorrelationFamily correlations(const VectorSignal& g, const VectorSignal& gamma,
                               const GaborLattice& lat) {
  require_compatible(g, gamma, lat, "correlations");
  const int L = lat.length();
  const int n = g.channels();
  const long a = lat.a();
  const long shift = lat.shift_length();
  CorrelationFamily out{lat, {}};
  out.G.reserve(static_cast<std::size_t>(lat.b()));
  for (int s = 0; s < lat.b(); ++s) {
    MatrixField field(L, n);
    // G_s is a-periodic, so only one period is summed and then copied.
    for (long l = 0; l < a; ++l) {
      HMatrix acc = HMatrix::Zero(n, n);
      for (long k = 0; k < lat.translates(); ++k) {
        acc.noalias() += gamma.at(l - k * a) * g.at(l - k * a - s * shift).adjoint();
      }
      for (long r = l; r < L; r += a) field.mutable_at(r) = acc;
    }
    out.G.push_back(std::move(field));
  }
  return out;
}

VectorSignal walnut_apply(const CorrelationFamily& G, const VectorSignal& f) {
  const GaborLattice& lat = G.lattice;
  const int L = lat.length();
  const int n = G.channels();
  if (f.length() != L || f.channels() != n) {
    throw DimensionError("walnut_apply: signal shape does not match correlations");
  }
  const long shift = lat.shift_length();
  const double scale = static_cast<double>(shift);
  std::vector<Complex> out(static_cast<std::size_t>(L) * n);
  Eigen::Map<Eigen::VectorXcd> result(out.data(), static_cast<Eigen::Index>(out.size()));
  if (n == 1) {
    const Complex* src = f.data().data();
    for (int s = 0; s < lat.b(); ++s) {
      const Complex* g = G.G[s][0].data();
      const long offset = wrap(-s * shift, L);
      const long split = L - offset;
      for (long l = 0; l < split; ++l) out[l] += mul(g[l], src[l + offset]);
      for (long l = split; l < L; ++l) out[l] += mul(g[l], src[l + offset - L]);
    }
  } else {
    for (int s = 0; s < lat.b(); ++s) {
      const MatrixField& field = G.G[s];
      for (long l = 0; l < L; ++l) {
        result.segment(l * n, n).noalias() += field[l] * f.at(l - s * shift);
      }
    }
  }
  result *= scale;
  return VectorSignal(L, n, std::move(out));
}

DenseOperator walnut_dense(const CorrelationFamily& G) {
  const GaborLattice& lat = G.lattice;
  const long L = lat.length();
  const long n = G.channels();
  const long shift = lat.shift_length();
  DenseOperator S = DenseOperator::Zero(L * n, L * n);
  for (long s = 0; s < lat.b(); ++s) {
    for (long l = 0; l < L; ++l) {
      const long col = wrap(l - s * shift, L);
      S.block(l * n, col * n, n, n) += static_cast<double>(shift) * G.G[s][l];
    }
  }
  return S;
}

double correlation_weight_sum(const CorrelationFamily& G, const Weight& w) {
  const GaborLattice& lat = G.lattice;
  if (w.length() != lat.length()) {
    throw DimensionError("correlation_weight_sum: weight length differs from L");
  }
  double total = 0.0;
  for (int s = 0; s < lat.b(); ++s) {
    total += G.G[s].sup_norm() * w(static_cast<long>(s) * lat.shift_length());
  }
  return total;
}

JanssenTable janssen_coeffs(const VectorSignal& g, const VectorSignal& gamma,
                            const GaborLattice& lat) {
  require_compatible(g, gamma, lat, "janssen_coeffs");
  const long L = lat.length();
  const int n = g.channels();
  const long a = lat.a();
  const long b = lat.b();
  const long shift = lat.shift_length();
  const double scale = static_cast<double>(L) / static_cast<double>(a * b);
  JanssenTable table{lat, n, {}};
  table.B.reserve(static_cast<std::size_t>(a * b));
  for (long j = 0; j < a; ++j) {
    for (long s = 0; s < b; ++s) {
      HMatrix acc = HMatrix::Zero(n, n);
      for (long l = 0; l < L; ++l) {
        // (M_{jL/a} T_{s L/b} g)(l) = exp(2 pi i j l / a) g(l - s L/b); the
        // rank-one product conjugates that phase.
        const Complex phase = std::conj(unit_root(j * l, a));
        acc.noalias() += phase * (gamma.at(l) * g.at(l - s * shift).adjoint());
      }
      table.B.push_back(scale * acc);
    }
  }
  return table;
}

VectorSignal janssen_apply(const JanssenTable& table, const VectorSignal& f) {
  const GaborLattice& lat = table.lattice;
  const long L = lat.length();
  const int n = table.channels;
  if (f.length() != L || f.channels() != n) {
    throw DimensionError("janssen_apply: signal shape does not match table");
  }
  const long shift = lat.shift_length();
  std::vector<Complex> out(static_cast<std::size_t>(L) * n);
  Eigen::Map<Eigen::VectorXcd> result(out.data(), static_cast<Eigen::Index>(out.size()));
  for (long j = 0; j < lat.a(); ++j) {
    for (long s = 0; s < lat.b(); ++s) {
      const HMatrix& B = table.at(static_cast<int>(j), static_cast<int>(s));
      for (long l = 0; l < L; ++l) {
        result.segment(l * n, n).noalias() +=
            unit_root(j * l, lat.a()) * (B * f.at(l - s * shift));
      }
    }
  }
  return VectorSignal(static_cast<int>(L), n, std::move(out));
}

WexlerRazResult wexler_raz_check(const VectorSignal& g, const VectorSignal& gamma,
                                 const GaborLattice& lat, double tol) {
  const JanssenTable table = janssen_coeffs(g, gamma, lat);
  const int n = table.channels;
  WexlerRazResult out;
  for (int j = 0; j < lat.a(); ++j) {
    for (int s = 0; s < lat.b(); ++s) {
      HMatrix dev = table.at(j, s);
      if (j == 0 && s == 0) dev -= HMatrix::Identity(n, n);
      out.max_dev = std::max(out.max_dev, operator_norm(dev));
    }
  }
  out.pass = out.max_dev <= tol;
  return out;
}

VectorSignal multiwindow_apply(std::span<const ChannelSystem> systems,
                               const VectorSignal& f) {
  int total = 0;
  for (const auto& sys : systems) {
    if (sys.window.length() != f.length()) {
      throw DimensionError("multiwindow_apply: window length differs from signal");
    }
    total += sys.window.channels();
  }
  if (systems.empty() || total != f.channels()) {
    throw DimensionError("multiwindow_apply: signal has " +
                         std::to_string(f.channels()) +
                         " channels but the windows cover " + std::to_string(total));
  }
  std::vector<VectorSignal> parts;
  parts.reserve(systems.size());
  int offset = 0;
  for (const auto& sys : systems) {
    const int width = sys.window.channels();
    std::vector<VectorSignal> slice;
    for (int i = 0; i < width; ++i) slice.push_back(f.channel(offset + i));
    const VectorSignal fi = direct_sum(slice);
    parts.push_back(walnut_apply(correlations(sys.window, sys.dual, sys.lattice), fi));
    offset += width;
  }
  return direct_sum(parts);
}

}  // namespace gabor_super
