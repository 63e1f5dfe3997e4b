#pragma once

#include <cstdint>
#include <vector>

#include "ssi/seq_struct.hpp"

namespace ssi {

struct SolverConfig {
  double rel_tol = 1e-7;
  int max_iters = 50000;
  /// Softmax / modulus smoothing temperatures, strictly decreasing. Empty
  /// means an automatic geometric schedule ending below rel_tol.
  std::vector<double> smoothing_schedule;
  int restarts = 4;
  std::uint64_t seed = 1;
  /// Torus nodes used inside iterations for Fourier terms (final values are
  /// always re-evaluated at the structure's own evaluation grid). 0 = auto.
  int solver_quad_nodes = 0;

  SolverConfig with_seed(std::uint64_t s) const {
    SolverConfig c = *this;
    c.seed = s;
    return c;
  }
};

/// One norm objective ‖(base_weight^{exponent·k} s_k)_k‖_𝔖 over a base space.
struct StructTerm {
  SeqStructSpec spec;
  NormedSpace base;
  double weight_base = 2.718281828459045235;
  double weight_exponent = 0.0;
};

struct InterpSolution {
  double value = 0.0;
  double lower_hint = 0.0;
  SparseSeq certificate;   // decomposition sequence (sum problems: side-0 blocks)
  SparseSeq certificate2;  // sum problems: side-1 blocks
  long iterations = 0;
  bool converged = false;
  double err_lo = 0.0;  // interval bracketing the true infimum
  double err_hi = 0.0;
  bool window_warning = false;
};

/// Constant contributions of pinned tail blocks, already weight-scaled.
/// `scalar_terms` enter an ℓᵖ-type aggregate as extra members; `coord_qpow`
/// enters a lattice term as per-coordinate additions to Σ_k |·|^q (stored as
/// plain magnitudes; the evaluator raises them to q).
struct TailContribution {
  std::vector<double> scalar_terms;
  std::vector<double> coord_mags;
};

/// min over sequences s supported in the window of max over sides/terms of
/// the structure norms, subject to Σ_k s_k = target. The block at index 0 is
/// eliminated, so the constraint holds exactly. `terms` holds one or more
/// norm objectives per side; the objective is the max over all of them.
InterpSolution minimize_max(const std::vector<std::vector<StructTerm>>& terms,
                            const CVec& target, int window, const SolverConfig& cfg,
                            const std::vector<SparseSeq>& extra_starts = {});

/// min of f0(s⁰) + f1(s¹) over blockwise splittings s⁰_k + s¹_k = target for
/// every k. Outside the window s⁰ is pinned to 0 (k < −N) and to the target
/// (k > N); the pinned contributions are supplied in closed form via tails.
InterpSolution minimize_sum(const StructTerm& term0, const StructTerm& term1,
                            const CVec& target, int window, const SolverConfig& cfg,
                            const TailContribution& tail0 = {},
                            const TailContribution& tail1 = {});

/// min of f0^{1−θ}·f1^θ over the same feasible set as minimize_max, run as a
/// log-sum descent with multistart (the product objective is not convex).
InterpSolution minimize_product(const std::vector<std::vector<StructTerm>>& terms,
                                double theta, const CVec& target, int window,
                                const SolverConfig& cfg,
                                const std::vector<SparseSeq>& extra_starts = {});

/// min of f0(s⁰) + f1(s¹) over splittings s⁰_k + s¹_k = target_k of a finitely
/// supported sequence (the norm of the sequence in 𝔖₀-weighted + 𝔖₁-weighted).
InterpSolution minimize_sum_seq(const StructTerm& term0, const StructTerm& term1,
                                const SparseSeq& target, const SolverConfig& cfg);

/// inf { ‖v₀‖₀ + ‖v−v₀‖₁ } — the single-pair sum norm behind ‖·‖_{X₀+X₁}
/// and the K-functional.
InterpSolution sum_norm_pair(const NormedSpace& space0, const NormedSpace& space1,
                             const CVec& v, const SolverConfig& cfg);

}  // namespace ssi
