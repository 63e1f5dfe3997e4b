#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ssi/normed_space.hpp"
#include "ssi/sparse_seq.hpp"

namespace ssi {

/// Value with a bracketing interval for the true quantity. Deterministic
/// evaluations report degenerate or quadrature-width intervals; Monte Carlo
/// evaluations report a 99% confidence interval.
struct NormEstimate {
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;

  double half_width() const { return std::max(hi - value, value - lo); }
  static NormEstimate exact(double v) { return {v, v, v}; }
};

enum class StructKind { Lp, FourierLp, FourierC, Rademacher, Gaussian, LatticeLq };

enum class RademacherMode { Exact, MonteCarlo };

/// Descriptor of a sequence structure 𝔖 on a base space X:
///   Lp         — ℓᵖ(ℤ;X)
///   FourierLp  — Fourier coefficients of Lᵖ(𝕋;X), p < ∞
///   FourierC   — Fourier coefficients of C(𝕋;X)
///   Rademacher — εᵖ(ℤ;X), p < ∞ (exact sign enumeration or Monte Carlo)
///   Gaussian   — γᵖ(ℤ;X), p < ∞ (Monte Carlo with a frozen sample set)
///   LatticeLq  — X(ℓ^q(ℤ)), Krivine calculus taken coordinatewise
struct SeqStructSpec {
  StructKind kind = StructKind::Lp;
  double p = 2.0;                      // Lp / FourierLp / Rademacher / Gaussian
  double q = 2.0;                      // LatticeLq
  int quad_nodes = 0;                  // Fourier variants; 0 = automatic (64 × support width)
  RademacherMode mode = RademacherMode::Exact;
  int samples = 20000;                 // Monte Carlo sample count
  std::uint64_t seed = 1;              // Monte Carlo stream seed

  static SeqStructSpec lp(double p);
  static SeqStructSpec fourier_lp(double p, int quad_nodes = 0);
  static SeqStructSpec fourier_c(int quad_nodes = 0);
  static SeqStructSpec rademacher(double p);
  static SeqStructSpec rademacher_mc(double p, int samples, std::uint64_t seed);
  static SeqStructSpec gaussian(double p, int samples = 20000, std::uint64_t seed = 1);
  static SeqStructSpec lattice_lq(double q);

  bool deterministic() const {
    return kind == StructKind::Lp || kind == StructKind::FourierLp ||
           kind == StructKind::FourierC || kind == StructKind::LatticeLq ||
           (kind == StructKind::Rademacher && mode == RademacherMode::Exact);
  }

  bool monte_carlo() const { return !deterministic(); }

  std::string name() const;
  void validate() const;
};

/// ‖s‖_𝔖 for the given structure over the base space.
NormEstimate seq_norm(const SeqStructSpec& spec, const NormedSpace& base, const SparseSeq& s);

/// Weight a^{exponent·k} applied blockwise before evaluating, i.e. ‖s‖_{𝔖(a^exponent)}.
struct WeightedEval {
  double base = 2.718281828459045235;
  double exponent = 0.0;
};

NormEstimate weighted_seq_norm(const SeqStructSpec& spec, const NormedSpace& base,
                               const WeightedEval& w, const SparseSeq& s);

/// Rescaled copy (base^{exponent·k} x_k)_k; throws if a factor overflows 1e300.
SparseSeq apply_weight(const WeightedEval& w, const SparseSeq& s);

/// Automatic exact/Monte-Carlo switch threshold for Rademacher enumeration.
inline constexpr std::size_t kRademacherEnumLimit = std::size_t{1} << 20;

/// (E|γ|^p)^{1/p} for a standard real Gaussian; equals 1 at p = 2.
inline double gaussian_lp_moment(double p) {
  return std::sqrt(2.0) *
         std::exp((std::lgamma((p + 1.0) / 2.0) - std::lgamma(0.5)) / p);
}

}  // namespace ssi
