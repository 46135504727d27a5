#include "gabor_super/core.hpp"

#include <cmath>
#include <string>

#include "gabor_super/errors.hpp"

namespace gabor_super {

Complex unit_root(long k, long L) {
  const long r = wrap(k, L);
  return std::polar(1.0, 2.0 * kPi * static_cast<double>(r) /
                             static_cast<double>(L));
}

VectorSignal::VectorSignal(int length, int channels)
    : VectorSignal(length, channels,
                   std::vector<Complex>(
                       static_cast<std::size_t>(std::max(length, 0)) *
                       static_cast<std::size_t>(std::max(channels, 0)))) {}

VectorSignal::VectorSignal(int length, int channels, std::vector<Complex> data)
    : length_(length), channels_(channels), data_(std::move(data)) {
  if (length_ < 1 || channels_ < 1) {
    throw DimensionError("signal needs L >= 1 and n >= 1, got L=" +
                         std::to_string(length_) +
                         " n=" + std::to_string(channels_));
  }
  if (data_.size() != static_cast<std::size_t>(length_) * channels_) {
    throw DimensionError("signal data has " + std::to_string(data_.size()) +
                         " entries, expected L*n=" +
                         std::to_string(length_ * channels_));
  }
}

VectorSignal VectorSignal::scalar(std::vector<Complex> values) {
  const int L = static_cast<int>(values.size());
  return VectorSignal(L, 1, std::move(values));
}

VectorSignal VectorSignal::from_flat(
    int length, int channels, const Eigen::Ref<const Eigen::VectorXcd>& flat) {
  return VectorSignal(length, channels,
                      std::vector<Complex>(flat.data(), flat.data() + flat.size()));
}

Eigen::VectorXcd VectorSignal::flat() const {
  return Eigen::Map<const Eigen::VectorXcd>(data_.data(),
                                            static_cast<Eigen::Index>(data_.size()));
}

double VectorSignal::norm() const {
  double s = 0.0;
  for (const Complex& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

VectorSignal VectorSignal::channel(int i) const {
  if (i < 0 || i >= channels_) throw DimensionError("channel index out of range");
  std::vector<Complex> out(static_cast<std::size_t>(length_));
  for (int l = 0; l < length_; ++l) out[l] = (*this)(l, i);
  return VectorSignal(length_, 1, std::move(out));
}

namespace {

void require_same_shape(const VectorSignal& f, const VectorSignal& g,
                        const char* what) {
  if (f.length() != g.length() || f.channels() != g.channels()) {
    throw DimensionError(std::string(what) + ": shape mismatch (" +
                         std::to_string(f.length()) + "x" +
                         std::to_string(f.channels()) + " vs " +
                         std::to_string(g.length()) + "x" +
                         std::to_string(g.channels()) + ")");
  }
}

}  // namespace

VectorSignal operator+(const VectorSignal& f, const VectorSignal& g) {
  require_same_shape(f, g, "operator+");
  std::vector<Complex> out(f.data_.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = f.data_[j] + g.data_[j];
  return VectorSignal(f.length_, f.channels_, std::move(out));
}

VectorSignal operator-(const VectorSignal& f, const VectorSignal& g) {
  require_same_shape(f, g, "operator-");
  std::vector<Complex> out(f.data_.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = f.data_[j] - g.data_[j];
  return VectorSignal(f.length_, f.channels_, std::move(out));
}

VectorSignal operator*(Complex s, const VectorSignal& f) {
  std::vector<Complex> out(f.data_.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = s * f.data_[j];
  return VectorSignal(f.length_, f.channels_, std::move(out));
}

VectorSignal direct_sum(std::span<const VectorSignal> parts) {
  if (parts.empty()) throw DimensionError("direct_sum of zero signals");
  const int L = parts.front().length();
  int n = 0;
  for (const auto& p : parts) {
    if (p.length() != L) throw DimensionError("direct_sum: lengths differ");
    n += p.channels();
  }
  std::vector<Complex> out(static_cast<std::size_t>(L) * n);
  for (int l = 0; l < L; ++l) {
    int col = 0;
    for (const auto& p : parts) {
      for (int i = 0; i < p.channels(); ++i) out[l * n + col++] = p(l, i);
    }
  }
  return VectorSignal(L, n, std::move(out));
}

double max_abs_diff(const VectorSignal& f, const VectorSignal& g) {
  require_same_shape(f, g, "max_abs_diff");
  double m = 0.0;
  for (std::size_t j = 0; j < f.data().size(); ++j) {
    m = std::max(m, std::abs(f.data()[j] - g.data()[j]));
  }
  return m;
}

MatrixField::MatrixField(int length, int dim)
    : length_(length), dim_(dim),
      data_(static_cast<std::size_t>(length) * dim * dim) {
  if (length < 1 || dim < 1) throw DimensionError("empty matrix field");
}

double MatrixField::sup_norm() const {
  double m = 0.0;
  for (int l = 0; l < length_; ++l) m = std::max(m, operator_norm((*this)[l]));
  return m;
}

bool MatrixField::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Complex& z) { return z == Complex{}; });
}

VectorSignal translate(const VectorSignal& f, long x) {
  const int L = f.length();
  const int n = f.channels();
  std::vector<Complex> out(static_cast<std::size_t>(L) * n);
  for (int l = 0; l < L; ++l) {
    for (int i = 0; i < n; ++i) out[l * n + i] = f(l - x, i);
  }
  return VectorSignal(L, n, std::move(out));
}

VectorSignal modulate(const VectorSignal& f, long m) {
  const int L = f.length();
  const int n = f.channels();
  const long mm = wrap(m, L);
  std::vector<Complex> out(static_cast<std::size_t>(L) * n);
  for (int l = 0; l < L; ++l) {
    const Complex phase = unit_root(mm * l, L);
    for (int i = 0; i < n; ++i) out[l * n + i] = phase * f(l, i);
  }
  return VectorSignal(L, n, std::move(out));
}

Complex inner(const VectorSignal& f, const VectorSignal& g) {
  require_same_shape(f, g, "inner");
  Complex s{};
  for (std::size_t j = 0; j < f.data().size(); ++j) {
    s += f.data()[j] * std::conj(g.data()[j]);
  }
  return s;
}

HVector rank_one_apply(const HVector& x, const HVector& y, const HVector& z) {
  if (x.size() != y.size() || y.size() != z.size()) {
    throw DimensionError("rank_one_apply: vector dimensions differ");
  }
  // <z, y> is linear in z, conjugate-linear in y.
  const Complex zy = y.dot(z);
  return zy * x;
}

HMatrix rank_one(const Eigen::Ref<const HVector>& x,
                 const Eigen::Ref<const HVector>& y) {
  if (x.size() != y.size()) throw DimensionError("rank_one: dimensions differ");
  return x * y.adjoint();
}

double operator_norm(const Eigen::Ref<const HMatrix>& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
  Eigen::JacobiSVD<HMatrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace gabor_super
