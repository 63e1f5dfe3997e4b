#include <cmath>

#include "ssi/harness.hpp"

namespace ssi::harness {

namespace {

struct Variant {
  SeqStructSpec spec;
  bool needs_lattice_base = false;  // reserved; every base here is a lattice
};

std::vector<SeqStructSpec> deterministic_variants() {
  return {SeqStructSpec::lp(1.0),         SeqStructSpec::lp(2.0),
          SeqStructSpec::lp(4.0),         SeqStructSpec::lp(kInf),
          SeqStructSpec::fourier_lp(1.0), SeqStructSpec::fourier_lp(2.0),
          SeqStructSpec::fourier_c(),     SeqStructSpec::rademacher(1.0),
          SeqStructSpec::rademacher(2.0), SeqStructSpec::lattice_lq(1.0),
          SeqStructSpec::lattice_lq(2.0), SeqStructSpec::lattice_lq(kInf)};
}

std::vector<SeqStructSpec> monte_carlo_variants(std::uint64_t seed) {
  return {SeqStructSpec::gaussian(2.0, 8000, seed), SeqStructSpec::gaussian(1.0, 8000, seed ^ 1),
          SeqStructSpec::rademacher_mc(2.0, 8000, seed ^ 2)};
}

}  // namespace

// Axioms (2.1)-(2.3): delta-norm identity, translation invariance, coordinate
// contraction. Exact to 1e-9 for deterministic structures, within 3 CI
// half-widths for Monte Carlo ones.
VerificationReport suite_axioms(std::uint64_t seed, int cases) {
  VerificationReport rep;
  Gen gen(seed);
  const double tol = 1e-9;
  auto variants = deterministic_variants();
  auto mc = monte_carlo_variants(seed);
  variants.insert(variants.end(), mc.begin(), mc.end());

  for (int c = 0; c < cases; ++c) {
    std::size_t n = gen.dim(4);
    auto base = gen.space(n);
    SparseSeq s = gen.seq(n, -3, 3);
    CVec x = gen.nonzero_vec(n);
    int k = static_cast<int>(gen.rng.next_below(9)) - 4;
    int shift = static_cast<int>(gen.rng.next_below(7)) - 3;
    for (const auto& spec : variants) {
      CaseRecord r;
      r.digest = gen.digest(c) + "-" + spec.name();
      double worst = 0.0;
      double allowance = tol;
      // (2.1): ‖(…,0,x,0,…)‖ = ‖x‖
      NormEstimate d = seq_norm(spec, base, SparseSeq::delta(k, x));
      double nb = base.norm(x);
      worst = std::max(worst, std::abs(d.value - nb) / std::max(1.0, nb));
      if (spec.monte_carlo()) allowance = std::max(allowance, 3.0 * d.half_width() / std::max(1.0, nb));
      // (2.2): translation invariance
      NormEstimate v0 = seq_norm(spec, base, s);
      NormEstimate v1 = seq_norm(spec, base, s.translated(shift));
      double scale = std::max(1.0, v0.value);
      worst = std::max(worst, std::abs(v1.value - v0.value) / scale);
      if (spec.monte_carlo())
        allowance = std::max(allowance, 3.0 * (v0.half_width() + v1.half_width()) / scale);
      // (2.3): ‖x_n‖ ≤ ‖s‖
      for (const auto& [kk, b] : s.entries())
        worst = std::max(worst, (base.norm(b) - v0.value) / scale);
      r.ratio = worst;
      r.bound = allowance;
      rep.add(r);
    }
  }
  return rep;
}

// ℓ¹/ℓ∞ sandwich with constant 1 (quadrature intervals and Monte Carlo CIs
// widen the allowance on their side).
VerificationReport suite_sandwich(std::uint64_t seed, int cases) {
  VerificationReport rep;
  Gen gen(seed);
  const double tol = 1e-9;
  auto variants = deterministic_variants();
  auto mc = monte_carlo_variants(seed);
  variants.insert(variants.end(), mc.begin(), mc.end());

  for (int c = 0; c < cases; ++c) {
    std::size_t n = gen.dim(4);
    auto base = gen.space(n);
    SparseSeq s = gen.seq(n, -3, 3);
    double l1 = seq_norm(SeqStructSpec::lp(1.0), base, s).value;
    double linf = seq_norm(SeqStructSpec::lp(kInf), base, s).value;
    double scale = std::max(1.0, l1);
    for (const auto& spec : variants) {
      CaseRecord r;
      r.digest = gen.digest(c) + "-" + spec.name();
      NormEstimate e = seq_norm(spec, base, s);
      double widen = spec.monte_carlo() ? 3.0 * e.half_width() : (e.hi - e.value) + (e.value - e.lo);
      double upper_violation = (e.value - l1) / scale;
      double lower_violation = (linf - e.value) / scale;
      r.ratio = std::max(upper_violation, lower_violation);
      r.bound = tol + widen / scale;
      rep.add(r);
    }
  }
  return rep;
}

// Cesàro boundedness (contraction) plus convergence; truncation recovery is
// exact once the window covers the support.
VerificationReport suite_cesaro(std::uint64_t seed, int cases) {
  VerificationReport rep;
  Gen gen(seed);
  for (int c = 0; c < cases; ++c) {
    std::size_t n = gen.dim(4);
    auto base = gen.space(n);
    SparseSeq s = gen.seq(n, -3, 3);
    int radius = std::max(std::abs(s.min_index()), std::abs(s.max_index()));
    double l1 = seq_norm(SeqStructSpec::lp(1.0), base, s).value;
    for (const auto& spec : deterministic_variants()) {
      CaseRecord r;
      r.digest = gen.digest(c) + "-" + spec.name();
      NormEstimate v = seq_norm(spec, base, s);
      bool fourier = spec.kind == StructKind::FourierLp || spec.kind == StructKind::FourierC;
      double tol = fourier ? 1e-6 : 1e-9;
      double worst = 0.0;
      double scale = std::max(1.0, v.value);
      for (int m : {0, 1, 2, 5, 9}) {
        NormEstimate cv = seq_norm(spec, base, cesaro(m, s));
        double widen = (cv.hi - cv.value) + (v.hi - v.value);
        worst = std::max(worst, (cv.value - v.value - widen) / scale);
      }
      // convergence: the residual obeys the explicit triangular-deficiency
      // bound ‖C_m s − s‖_𝔖 ≤ (radius/(m+1))·‖s‖_{ℓ¹} and the truncation
      // operator recovers s exactly
      for (int m : {2 * radius, 8 * radius + 4}) {
        NormEstimate resid = seq_norm(spec, base, cesaro(m, s).minus(s));
        double bound = (static_cast<double>(radius) / (m + 1.0)) * l1;
        worst = std::max(worst, (resid.value - bound - (resid.hi - resid.value)) / scale);
      }
      NormEstimate trunc = seq_norm(spec, base, s.truncated(-radius, radius));
      worst = std::max(worst, std::abs(trunc.value - v.value) / scale);
      r.ratio = worst;
      r.bound = tol;
      rep.add(r);
    }
  }
  return rep;
}

// γ²(ℤ;H) on a Hilbert base has the closed form √(Σ‖x_k‖²); the Monte Carlo
// estimate must agree within 3 CI half-widths.
VerificationReport suite_gaussian_hilbert(std::uint64_t seed, int cases) {
  VerificationReport rep;
  Gen gen(seed);
  for (int c = 0; c < cases; ++c) {
    std::size_t n = gen.dim(4);
    auto base = NormedSpace::weighted_lp(2.0, gen.weights(n));
    SparseSeq s = gen.seq(n, -2, 2);
    double closed = seq_norm(SeqStructSpec::lp(2.0), base, s).value;
    NormEstimate mc = seq_norm(SeqStructSpec::gaussian(2.0, 12000, seed ^ (c * 977)), base, s);
    CaseRecord r;
    r.digest = gen.digest(c);
    double scale = std::max(1.0, closed);
    r.ratio = std::abs(mc.value - closed) / scale;
    r.bound = (3.0 * mc.half_width() + 1e-9) / scale;
    r.note = "closed=" + std::to_string(closed);
    rep.add(r);
  }
  return rep;
}

}  // namespace ssi::harness
