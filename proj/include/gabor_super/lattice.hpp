#pragma once

namespace gabor_super {

/// Separable lattice a Z_L x b Z_L on the cyclic group. Both steps divide L.
///
/// The system generated on it has `translates()` = L/a time shifts and
/// `modulations()` = L/b frequency shifts. The Walnut operator shifts by
/// multiples of `shift_length()` = L/b, the discrete counterpart of 1/beta.
class GaborLattice {
 public:
  GaborLattice(int a, int b, int length);

  int a() const { return a_; }
  int b() const { return b_; }
  int length() const { return length_; }

  int translates() const { return length_ / a_; }
  int modulations() const { return length_ / b_; }
  int shift_length() const { return length_ / b_; }
  /// Number of atoms N*M divided by L; below 1 the system cannot span.
  double density() const {
    return static_cast<double>(translates()) * modulations() / length_;
  }

  friend bool operator==(const GaborLattice&, const GaborLattice&) = default;

 private:
  int a_;
  int b_;
  int length_;
};

}  // namespace gabor_super
