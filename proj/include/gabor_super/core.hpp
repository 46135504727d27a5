#pragma once

// Signal types on the cyclic group Z_L with values in H = C^n, and the
// elementary time-frequency operators acting on them.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace gabor_super {

using Complex = std::complex<double>;
using HVector = Eigen::VectorXcd;
using HMatrix = Eigen::MatrixXcd;
/// (L*n) x (L*n) matrix acting on flattened signals, index l*n + i.
using DenseOperator = Eigen::MatrixXcd;

using MatrixView = Eigen::Map<const HMatrix>;
using MutableMatrixView = Eigen::Map<HMatrix>;
using VectorView = Eigen::Map<const HVector>;

inline constexpr double kPi = 3.14159265358979323846;

/// Reduces x into [0, L).
inline long wrap(long x, long L) {
  const long r = x % L;
  return r < 0 ? r + L : r;
}

/// Cyclic distance of x to 0 on Z_L.
inline long wrap_distance(long x, long L) {
  const long r = wrap(x, L);
  return std::min(r, L - r);
}

/// exp(2 pi i k / L) with the exponent reduced mod L before evaluation.
Complex unit_root(long k, long L);

/// A function Z_L -> C^n. Immutable after construction.
class VectorSignal {
 public:
  /// Zero signal.
  VectorSignal(int length, int channels);
  /// `data` is row-major: data[l * channels + i] is channel i at time l.
  VectorSignal(int length, int channels, std::vector<Complex> data);

  static VectorSignal scalar(std::vector<Complex> values);
  static VectorSignal from_flat(int length, int channels,
                                const Eigen::Ref<const Eigen::VectorXcd>& flat);

  int length() const { return length_; }
  int channels() const { return channels_; }

  /// Value of channel i at time l (l taken mod L).
  Complex operator()(long l, int i) const {
    return data_[static_cast<std::size_t>(wrap(l, length_) * channels_ + i)];
  }
  /// The point value f(l) in H.
  VectorView at(long l) const {
    return VectorView(data_.data() + wrap(l, length_) * channels_, channels_);
  }

  std::span<const Complex> data() const { return data_; }
  Eigen::VectorXcd flat() const;

  double norm() const;
  /// Channel i as a scalar signal.
  VectorSignal channel(int i) const;

  friend VectorSignal operator+(const VectorSignal& f, const VectorSignal& g);
  friend VectorSignal operator-(const VectorSignal& f, const VectorSignal& g);
  friend VectorSignal operator*(Complex s, const VectorSignal& f);

 private:
  int length_;
  int channels_;
  std::vector<Complex> data_;
};

/// Stacks r scalar (or vector) signals of equal length into one signal whose
/// channel count is the sum of the parts.
VectorSignal direct_sum(std::span<const VectorSignal> parts);

/// max_{l,i} |f(l)_i - g(l)_i|.
double max_abs_diff(const VectorSignal& f, const VectorSignal& g);

/// A field of n x n matrices over Z_L, stored contiguously (column-major per
/// matrix). Used for Walnut correlation functions and shift-operator symbols.
class MatrixField {
 public:
  MatrixField(int length, int dim);

  int length() const { return length_; }
  int dim() const { return dim_; }

  MatrixView operator[](long l) const {
    return MatrixView(data_.data() + offset(l), dim_, dim_);
  }
  MutableMatrixView mutable_at(long l) {
    return MutableMatrixView(data_.data() + offset(l), dim_, dim_);
  }

  /// max_l of the spectral norm of the matrix at l.
  double sup_norm() const;
  bool is_zero() const;

  friend bool operator==(const MatrixField&, const MatrixField&) = default;

 private:
  std::size_t offset(long l) const {
    return static_cast<std::size_t>(wrap(l, length_)) * dim_ * dim_;
  }

  int length_;
  int dim_;
  std::vector<Complex> data_;
};

/// (T_x f)(l) = f(l - x).
VectorSignal translate(const VectorSignal& f, long x);
/// (M_m f)(l) = exp(2 pi i m l / L) f(l).
VectorSignal modulate(const VectorSignal& f, long m);
/// sum_l sum_i f(l)_i conj(g(l)_i); conjugate-linear in g.
Complex inner(const VectorSignal& f, const VectorSignal& g);

/// (x (.) y)(z) = <z, y> x.
HVector rank_one_apply(const HVector& x, const HVector& y, const HVector& z);
/// Matrix of x (.) y, i.e. x y^H.
HMatrix rank_one(const Eigen::Ref<const HVector>& x,
                 const Eigen::Ref<const HVector>& y);

/// Spectral norm (largest singular value).
double operator_norm(const Eigen::Ref<const HMatrix>& m);

}  // namespace gabor_super
