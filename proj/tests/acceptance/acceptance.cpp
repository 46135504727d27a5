// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "gabor_super/duality.hpp"
#include "gabor_super/errors.hpp"
#include "gabor_super/gabor.hpp"
#include "gabor_super/shiftalg.hpp"
#include "gabor_super/walnut.hpp"
#include "support/oracles.hpp"

namespace gabor_super {
namespace {

using testing::max_abs;
using testing::random_signal;

// Tolerances and sizes, pinned.
constexpr double kOperatorTol = 1e-10;       // AC1, AC2
constexpr double kRuntimeBudget = 30.0;      // AC1, seconds
constexpr double kReconstructTol = 1e-8;     // AC3, relative to |f|
constexpr double kFrameFloor = 1e-8;         // AC3, lower bound A
constexpr double kUsableCondition = 1e6;
constexpr double kDualPassTol = 1e-10;       // AC4
constexpr double kPerturbation = 1e-3;
constexpr double kPerturbedFailTol = 1e-6;
constexpr double kPerturbedMinDeviation = 1e-4;
constexpr double kAnchorTol = 1e-10;         // AC5
constexpr double kBoundsRelTol = 1e-6;       // AC6
constexpr double kSuperTol = 1e-12;          // AC7
constexpr double kAlgebraTol = 1e-12;        // AC8
constexpr double kRoundTripTol = 1e-8;       // AC9
constexpr double kDecaySlack = 0.1;
constexpr double kInequalitySlack = 1e-12;   // AC10
constexpr double kMonotoneSlack = 1e-9;      // AC11
constexpr double kFullBoxTol = 1e-10;
constexpr double kMinSpeedup = 10.0;         // AC12

constexpr int kFamilySize = 200;
constexpr int kBoundsInstances = 50;
constexpr int kSpectralOperators = 50;
constexpr int kAlgebraOperators = 200;
constexpr int kInequalityDraws = 1000;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

VectorSignal dense_apply(const DenseOperator& S, const VectorSignal& f) {
  return VectorSignal::from_flat(f.length(), f.channels(), S * f.flat());
}

struct Instance {
  VectorSignal g;
  VectorSignal gamma;
  VectorSignal f;
  GaborLattice lat;
};

// Every (L, a, b) with L in {8, 16, 32} is visited; n cycles through 1..3.
std::vector<Instance> random_family() {
  std::vector<std::tuple<int, int, int>> shapes;
  for (int L : {8, 16, 32}) {
    for (const auto& [a, b] : testing::lattice_pairs(L)) shapes.emplace_back(L, a, b);
  }
  testing::Rng rng(20240601);
  std::vector<Instance> out;
  for (int i = 0; i < kFamilySize; ++i) {
    const auto [L, a, b] = shapes[static_cast<std::size_t>(i) % shapes.size()];
    const int n = 1 + i % 3;
    out.push_back({random_signal(rng, L, n), random_signal(rng, L, n), random_signal(rng, L, n),
                   GaborLattice(a, b, L)});
  }
  return out;
}

bool usable_frame(const VectorSignal& g, const GaborLattice& lat) {
  const FrameBounds fb = frame_bounds(g, lat);
  return fb.A > kFrameFloor && fb.condition() <= kUsableCondition;
}

Outcome walnut_equivalence(const std::vector<Instance>& family) {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const Instance& in : family) {
    const VectorSignal fast = walnut_apply(correlations(in.g, in.gamma, in.lat), in.f);
    const VectorSignal dense = dense_apply(frame_operator_direct(in.g, in.gamma, in.lat), in.f);
    worst = std::max(worst, max_abs_diff(fast, dense));
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= kOperatorTol && seconds < kRuntimeBudget,
          "max err " + fmt("%.2e", worst) + " over " + std::to_string(family.size()) +
              " instances in " + fmt("%.2f", seconds) + " s"};
}

Outcome janssen_equivalence(const std::vector<Instance>& family) {
  double worst = 0.0;
  for (const Instance& in : family) {
    const VectorSignal jan = janssen_apply(janssen_coeffs(in.g, in.gamma, in.lat), in.f);
    const VectorSignal dense = dense_apply(frame_operator_direct(in.g, in.gamma, in.lat), in.f);
    worst = std::max(worst, max_abs_diff(jan, dense));
  }
  return {worst <= kOperatorTol, "max err " + fmt("%.2e", worst)};
}

Outcome reconstruction(const std::vector<Instance>& family) {
  double worst = 0.0;
  int frames = 0;
  for (const Instance& in : family) {
    if (!usable_frame(in.g, in.lat)) continue;
    ++frames;
    const VectorSignal h = dual_window(in.g, in.lat);
    const VectorSignal one = synthesize(analyze(in.f, in.g, in.lat), h);
    const VectorSignal two = synthesize(analyze(in.f, h, in.lat), in.g);
    worst = std::max({worst, (one - in.f).norm() / in.f.norm(), (two - in.f).norm() / in.f.norm()});
  }
  return {frames > 0 && worst <= kReconstructTol,
          "max relative err " + fmt("%.2e", worst) + " on " + std::to_string(frames) + " frames"};
}

Outcome wexler_raz(const std::vector<Instance>& family) {
  testing::Rng rng(7);
  int frames = 0;
  int bad = 0;
  double min_dev = kInf;
  for (const Instance& in : family) {
    if (!usable_frame(in.g, in.lat)) continue;
    ++frames;
    const int L = in.lat.length();
    const int n = in.g.channels();
    const VectorSignal h = dual_window(in.g, in.lat);
    if (!wexler_raz_check(in.g, h, in.lat, kDualPassTol).pass) ++bad;
    const VectorSignal hp = h + random_signal(rng, L, n, kPerturbation);
    if (wexler_raz_check(in.g, hp, in.lat, kPerturbedFailTol).pass) ++bad;
    const double dev = max_abs(frame_operator_direct(in.g, hp, in.lat) -
                               DenseOperator::Identity(L * n, L * n));
    min_dev = std::min(min_dev, dev);
    if (dev < kPerturbedMinDeviation) ++bad;
  }
  return {frames > 0 && bad == 0,
          std::to_string(frames) + " pairs, " + std::to_string(bad) +
              " violations, min perturbed deviation " + fmt("%.2e", min_dev)};
}

Outcome anchors() {
  double worst = 0.0;
  const VectorSignal d = testing::real_signal({1, 0, 0, 0});
  const GaborLattice full(1, 1, 4);
  const FrameBounds fb = frame_bounds(d, full);
  worst = std::max({worst, std::abs(fb.A - 4.0), std::abs(fb.B - 4.0)});
  worst = std::max(worst, max_abs_diff(dual_window(d, full), Complex(0.25) * d));

  const VectorSignal g = testing::real_signal({1, 1, 0, 0});
  const GaborLattice half(2, 2, 4);
  worst = std::max(worst, max_abs(walnut_dense(correlations(g, g, half)) -
                                  2.0 * DenseOperator::Identity(4, 4)));
  worst = std::max(worst, max_abs(frame_operator_direct(g, g, half) -
                                  2.0 * DenseOperator::Identity(4, 4)));
  worst = std::max(worst, max_abs_diff(dual_window(g, half), Complex(0.5) * g));
  worst = std::max(worst, max_abs_diff(painless_dual(g, half), Complex(0.5) * g));
  return {worst <= kAnchorTol, "max err " + fmt("%.2e", worst)};
}

Outcome dual_bounds() {
  testing::Rng rng(11);
  const int lengths[] = {8, 12, 16};
  int done = 0;
  double worst = 0.0;
  while (done < kBoundsInstances) {
    const int L = lengths[rng() % 3];
    const auto pairs = testing::lattice_pairs(L);
    const auto [a, b] = pairs[rng() % pairs.size()];
    const GaborLattice lat(a, b, L);
    const VectorSignal g = random_signal(rng, L, 1 + static_cast<int>(rng() % 3));
    const FrameBounds fb = frame_bounds(g, lat);
    if (!fb.is_frame || fb.condition() > kUsableCondition) continue;
    ++done;
    const FrameBounds db = frame_bounds(dual_window(g, lat), lat);
    worst = std::max({worst, std::abs(db.A * fb.B - 1.0), std::abs(db.B * fb.A - 1.0)});
  }
  return {worst <= kBoundsRelTol,
          "max relative err " + fmt("%.2e", worst) + " on " + std::to_string(done) + " frames"};
}

Outcome superframes() {
  testing::Rng rng(13);
  double worst = 0.0;
  // Output channel j of the super operator is sum_i S_{g_i, gamma_j} f_i.
  const int L = 16;
  for (const auto& [a, b] : testing::lattice_pairs(L)) {
    const GaborLattice lat(a, b, L);
    std::vector<VectorSignal> g, h, f;
    for (int i = 0; i < 3; ++i) {
      g.push_back(random_signal(rng, L, 1));
      h.push_back(random_signal(rng, L, 1));
      f.push_back(random_signal(rng, L, 1));
    }
    const VectorSignal super =
        walnut_apply(correlations(direct_sum(g), direct_sum(h), lat), direct_sum(f));
    for (int j = 0; j < 3; ++j) {
      VectorSignal expect(L, 1);
      for (int i = 0; i < 3; ++i) {
        expect = expect + dense_apply(testing::frame_operator_oracle(g[i], h[j], a, b), f[i]);
      }
      worst = std::max(worst, max_abs_diff(super.channel(j), expect) / (1 + expect.norm()));
    }
  }
  // Disjoint painless supports: channel-wise.
  {
    const GaborLattice lat(2, 2, L);
    std::vector<Complex> d1(L), d2(L);
    for (int l = 0; l < 4; ++l) {
      d1[l] = 1.0 + 0.25 * l;
      d2[l + 4] = 2.0 - 0.3 * l;
    }
    const std::vector<VectorSignal> g{VectorSignal::scalar(d1), VectorSignal::scalar(d2)};
    const std::vector<VectorSignal> h{painless_dual(g[0], lat), painless_dual(g[1], lat)};
    const std::vector<VectorSignal> f{random_signal(rng, L, 1), random_signal(rng, L, 1)};
    const VectorSignal super =
        walnut_apply(correlations(direct_sum(g), direct_sum(h), lat), direct_sum(f));
    for (int i = 0; i < 2; ++i) {
      worst = std::max(worst, max_abs_diff(super.channel(i),
                                           walnut_apply(correlations(g[i], h[i], lat), f[i])));
    }
  }
  // One lattice per channel.
  {
    const int M = 24;
    const std::vector<std::pair<int, int>> lats{{2, 3}, {4, 2}, {3, 4}};
    std::vector<ChannelSystem> systems;
    std::vector<VectorSignal> parts;
    for (const auto& [a, b] : lats) {
      systems.push_back({random_signal(rng, M, 1), random_signal(rng, M, 1), GaborLattice(a, b, M)});
      parts.push_back(random_signal(rng, M, 1));
    }
    const VectorSignal out = multiwindow_apply(systems, direct_sum(parts));
    for (std::size_t i = 0; i < lats.size(); ++i) {
      const VectorSignal expect = dense_apply(
          testing::frame_operator_oracle(systems[i].window, systems[i].dual, lats[i].first,
                                         lats[i].second),
          parts[i]);
      worst = std::max(worst, max_abs_diff(out.channel(static_cast<int>(i)), expect) /
                                  (1 + expect.norm()));
    }
  }
  return {worst <= kSuperTol, "max relative err " + fmt("%.2e", worst)};
}

MatrixField random_field(testing::Rng& rng, int L, int n) {
  MatrixField out(L, n);
  const VectorSignal r = random_signal(rng, L, n * n);
  for (int l = 0; l < L; ++l) out.mutable_at(l) = Eigen::Map<const HMatrix>(r.at(l).data(), n, n);
  return out;
}

ShiftOperator random_operator(testing::Rng& rng, int L, int n, int max_terms) {
  const int terms = 1 + static_cast<int>(rng() % max_terms);
  std::vector<std::pair<long, MatrixField>> parts;
  for (int t = 0; t < terms; ++t) {
    parts.emplace_back(static_cast<long>(rng() % L), random_field(rng, L, n));
  }
  return ShiftOperator(L, n, parts);
}

Eigen::MatrixXcd dense_oracle(const ShiftOperator& A) {
  const int L = A.length();
  const int n = A.channels();
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(L * n, L * n);
  for (const auto& [x, m] : A.terms()) {
    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(L * n, L * n);
    for (int l = 0; l < L; ++l) diag.block(l * n, l * n, n, n) = m[l];
    D += diag * testing::dense_translation(L, n, x);
  }
  return D;
}

// Character average of D at shift x, written out with dense modulations.
Eigen::MatrixXcd character_average(const Eigen::MatrixXcd& D, int L, int n, int x) {
  Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(L * n, L * n);
  for (int y = 0; y < L; ++y) {
    avg += testing::dense_modulation(L, n, y) * D * testing::dense_modulation(L, n, -y) *
           std::exp(Complex(0, -2.0 * kPi * y * x / L));
  }
  return avg / static_cast<double>(L);
}

Outcome shift_algebra() {
  testing::Rng rng(17);
  double worst = 0.0;
  for (int trial = 0; trial < kAlgebraOperators; ++trial) {
    const int L = 2 + trial % 11;
    const int n = 1 + trial % 3;
    const ShiftOperator A = random_operator(rng, L, n, 5);
    const ShiftOperator B = random_operator(rng, L, n, 5);
    const Eigen::MatrixXcd DA = dense_oracle(A);
    worst = std::max(worst, max_abs(shift_compose(A, B).to_dense() - DA * dense_oracle(B)));
    worst = std::max(worst, max_abs(shift_involution(A).to_dense() - DA.adjoint()));
    const ShiftOperator E = extract_coeffs(DA, L, n);
    for (int x = 0; x < L; ++x) {
      Eigen::MatrixXcd diagonal = Eigen::MatrixXcd::Zero(L * n, L * n);
      if (const MatrixField* m = E.term(x)) diagonal = dense_oracle(ShiftOperator(L, n, {{x, *m}}));
      worst = std::max(worst, max_abs(character_average(DA, L, n, x) - diagonal));
    }
  }
  return {worst <= kAlgebraTol, "max err " + fmt("%.2e", worst) + " over " +
                                    std::to_string(kAlgebraOperators) + " operators"};
}

Outcome spectral() {
  testing::Rng rng(19);
  double worst = 0.0;
  int random_ops = 0;
  int walnut_ops = 0;
  while (random_ops + walnut_ops < kSpectralOperators) {
    ShiftOperator A(1, 1);
    int L = 0;
    if (random_ops <= walnut_ops) {
      L = 4 + static_cast<int>(rng() % 9);
      A = random_operator(rng, L, 1 + static_cast<int>(rng() % 3), 4);
      const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(dense_oracle(A));
      if (svd.singularValues()(0) > kUsableCondition * svd.singularValues().tail(1)(0)) continue;
      ++random_ops;
    } else {
      L = 16;
      const auto pairs = testing::lattice_pairs(L);
      const auto [a, b] = pairs[rng() % pairs.size()];
      const GaborLattice lat(a, b, L);
      const VectorSignal g = random_signal(rng, L, 1 + static_cast<int>(rng() % 2));
      if (!usable_frame(g, lat)) continue;
      A = from_correlations(correlations(g, g, lat));
      ++walnut_ops;
    }
    worst = std::max(worst, spectral_invert(A, Weight::polynomial(L, 1.0)).roundtrip_error);
  }
  int decaying = 0;
  int gaussians = 0;
  const int L = 32;
  for (const auto& [a, b] : std::vector<std::pair<int, int>>{{2, 4}, {4, 4}, {4, 2}, {2, 8}}) {
    const GaborLattice lat(a, b, L);
    const SpectralInverse inv = spectral_invert(
        from_correlations(correlations(testing::gaussian(L, 5.66, 0.5), testing::gaussian(L, 5.66, 0.5), lat)),
        Weight::polynomial(L, 1.0));
    worst = std::max(worst, inv.roundtrip_error);
    ++gaussians;
    if (decays_in_wrap_distance(inv.decay, L, lat.shift_length(), kDecaySlack)) ++decaying;
  }
  return {worst <= kRoundTripTol && decaying == gaussians,
          "max round trip " + fmt("%.2e", worst) + " on " + std::to_string(random_ops) +
              " random + " + std::to_string(walnut_ops) + " Walnut operators; " +
              std::to_string(decaying) + "/" + std::to_string(gaussians) +
              " Gaussian inverses decay"};
}

Outcome amalgam_inequalities() {
  testing::Rng rng(23);
  const double ps[] = {1.0, 1.5, 2.0, 4.0, kInf};
  int failures = 0;
  for (int trial = 0; trial < kInequalityDraws; ++trial) {
    const int a = 1 << (trial % 4);
    const VectorSignal g = random_signal(rng, 32, 1 + trial % 2);
    const BoundCheck c = periodization_bound_check(g, a);
    if (c.lhs > c.rhs * (1 + kInequalitySlack)) ++failures;
  }
  for (int trial = 0; trial < kInequalityDraws; ++trial) {
    const int block = 1 << (trial % 4);
    const Weight v = Weight::polynomial(32, 0.5 * (trial % 3));
    const Weight w = Weight::polynomial(32, 0.5 * (trial % 3) + 0.5 * (trial % 2));
    const AmalgamParams prm{ps[trial % 5], ps[(trial / 5) % 5], block, v};
    const long x = block * static_cast<long>(rng() % (32 / block));
    const BoundCheck c = translation_norm_check(random_signal(rng, 32, 2), x, prm, w);
    if (c.lhs > c.rhs * (1 + kInequalitySlack)) ++failures;
  }
  for (int trial = 0; trial < kInequalityDraws; ++trial) {
    const double p = ps[trial % 5];
    const double q = ps[(trial / 5) % 5];
    const int block = 1 << (trial % 3);
    const Weight v = Weight::polynomial(16, 0.5 * (trial % 4));
    const VectorSignal f = random_signal(rng, 16, 2);
    const VectorSignal g = random_signal(rng, 16, 2);
    const double bound =
        amalgam_norm(f, {p, q, block, v}) *
        amalgam_norm(g, {conjugate_exponent(p), conjugate_exponent(q), block, v.reciprocal()});
    if (std::abs(inner(f, g)) > bound * (1 + kInequalitySlack)) ++failures;
  }
  return {failures == 0, std::to_string(failures) + " violations in " +
                             std::to_string(3 * kInequalityDraws) + " draws"};
}

Outcome truncation() {
  const int L = 64;
  const GaborLattice lat(8, 8, L);
  const VectorSignal g = testing::gaussian(L, 8.0, 0.5);
  const VectorSignal h = dual_window(g, lat);
  double worst_rise = 0.0;
  double worst_final = 0.0;
  for (double width : {3.0, 6.0, 12.0}) {
    const VectorSignal f = testing::gaussian(L, width, 0.0);
    for (double p : {1.0, 2.0, kInf}) {
      const ConvergenceProfile prof =
          truncation_error_profile(f, g, h, lat, p, 2, Weight::polynomial(L, 1.0));
      for (std::size_t i = 1; i < prof.size(); ++i) {
        worst_rise = std::max(worst_rise, prof[i].err - prof[i - 1].err);
      }
      worst_final = std::max(worst_final, prof.back().err);
    }
  }
  return {worst_rise <= kMonotoneSlack && worst_final <= kFullBoxTol,
          "largest rise " + fmt("%.2e", worst_rise) + ", full-box err " +
              fmt("%.2e", worst_final)};
}

Outcome performance() {
  std::ostringstream out, err;
  const int code = cli::run({"bench", "--sizes", "4096", "--a", "16", "--b", "16", "--repeats",
                             "20", "--format", "csv"},
                            out, err);
  if (code != cli::kOk) return {false, "bench exited " + std::to_string(code) + ": " + err.str()};
  std::istringstream lines(out.str());
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  long L = 0;
  double walnut = 0.0, dense = 0.0;
  if (std::sscanf(row.c_str(), "%ld,%lf,%lf", &L, &walnut, &dense) != 3 || walnut <= 0.0) {
    return {false, "unparsable bench row '" + row + "'"};
  }
  const double speedup = dense / walnut;
  return {speedup >= kMinSpeedup, "L=" + std::to_string(L) + " b=16 speedup " +
                                      fmt("%.1f", speedup) + "x"};
}

}  // namespace
}  // namespace gabor_super

int main() {
  using namespace gabor_super;
  const std::vector<Instance> family = random_family();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 walnut vs dense", [&] { return walnut_equivalence(family); }},
      {"AC2 janssen vs dense", [&] { return janssen_equivalence(family); }},
      {"AC3 reconstruction", [&] { return reconstruction(family); }},
      {"AC4 wexler-raz", [&] { return wexler_raz(family); }},
      {"AC5 closed-form anchors", anchors},
      {"AC6 dual frame bounds", dual_bounds},
      {"AC7 superframes", superframes},
      {"AC8 shift algebra", shift_algebra},
      {"AC9 spectral round trip", spectral},
      {"AC10 amalgam inequalities", amalgam_inequalities},
      {"AC11 truncation", truncation},
      {"AC12 performance", performance},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r = {false, std::string("threw: ") + e.what()};
    }
    if (!r.pass) ++failed;
    std::printf("%s %s: %s\n", r.pass ? "PASS" : "FAIL", name, r.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
