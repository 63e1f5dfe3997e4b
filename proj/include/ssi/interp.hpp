#pragma once

#include "ssi/solver.hpp"

namespace ssi {

/// Discrete interpolation problem for a compatible couple: structures 𝔖₀, 𝔖₁
/// over the two spaces, parameter θ ∈ (0,1), base number b > 1, and the
/// window [−N, N] that decompositions are supported in.
struct InterpProblem {
  Couple couple;
  SeqStructSpec struct0;
  SeqStructSpec struct1;
  double theta = 0.5;
  double base = 2.718281828459045235;
  int window = 8;
  SolverConfig solver;
  /// Re-solve at 2N and flag the solution when the value drifts by >= 1%.
  bool check_window = true;
  /// Populate lower_hint from the sum-norm geometric-series bound.
  bool with_lower_hint = true;

  void validate() const;
  std::vector<std::vector<StructTerm>> side_terms() const;
};

/// ‖v‖_{X₀+X₁}: infimum of ‖v₀‖₀ + ‖v₁‖₁ over v = v₀ + v₁.
InterpSolution sum_norm(const Couple& couple, const CVec& v, const SolverConfig& cfg);

/// The interpolation norm: inf over decompositions Σ x_k = x supported in the
/// window of max_j ‖(b^{k(j−θ)}x_k)‖_{𝔖_j}.
InterpSolution interp_norm(const InterpProblem& prob, const CVec& x);

/// Same feasible set, objective ‖·‖₀^{1−θ}·‖·‖₁^θ.
InterpSolution logconvex_norm(const InterpProblem& prob, const CVec& x);

/// First mean-method norm: inf of Σ_j ‖(b^{k(j−θ)}x_k^j)‖_{𝔖_j} over blockwise
/// splittings x = x_k⁰ + x_k¹, with the geometric tails pinned and added in
/// closed form. Only Lp and LatticeLq structures are supported.
InterpSolution mean_norm(const InterpProblem& prob, const CVec& x);

/// K(t,x) = inf(‖x₀‖₀ + t‖x₁‖₁) and J(t,x) = max(‖x‖₀, t‖x‖₁).
InterpSolution k_functional(const Couple& couple, double t, const CVec& x,
                            const SolverConfig& cfg);
double j_functional(const Couple& couple, double t, const CVec& x);

/// Discrete Lions–Peetre K-method norm: ℓᵖ over k ∈ [−W, W] of b^{−θk}K(bᵏ,x),
/// with the geometric tails folded into the reported interval.
NormEstimate discrete_real_norm(const Couple& couple, double theta, double p, const CVec& x,
                                int window, double base, const SolverConfig& cfg);

/// Analytic view of a decomposition: f(z) = Σ_k base^{k(z−θ)} x_k on the
/// closed strip; boundary_coeffs(j) are the weighted sequences whose structure
/// norms define ‖f‖.
class AnalyticView {
 public:
  AnalyticView(SparseSeq seq, double theta, double base)
      : seq_(std::move(seq)), theta_(theta), base_(base) {}

  CVec eval_at(Cplx z) const;
  SparseSeq boundary_coeffs(int j) const;
  const SparseSeq& coefficients() const { return seq_; }
  double theta() const { return theta_; }
  double base() const { return base_; }

 private:
  SparseSeq seq_;
  double theta_;
  double base_;
};

struct FiniteRepResult {
  SparseSeq decomposition;
  /// Proof-assembled bound on max_j weighted-norm / interp value.
  double constant = 0.0;
  double norm_ratio = 0.0;  // measured max_j ‖·‖ / interp value
};

/// Constructive finite decomposition: Cesàro average of a near-optimal
/// certificate plus the two tail lumps, reproducing x exactly with weighted
/// norms within constant(θ, b)·slack of the interpolation norm. Deterministic
/// structures only.
FiniteRepResult finite_rep(const InterpProblem& prob, const CVec& x, double slack);

/// Exact reindexing maps between base numbers a and b = a^δ: for δ < 1 blocks
/// move to ⌊k/δ⌋, for δ > 1 the ⌊δ⌋+1 interleaved subsequences are summed.
SparseSeq change_base_reindex(const SparseSeq& seq, double a, double b);

/// Calderón–Lozanovskii product norm: inf ‖x₀‖₀^{1−θ}‖x₁‖₁^θ over pointwise
/// factorizations |x| ≤ |x₀|^{1−θ}|x₁|^θ (coordinates with x_i = 0 impose no
/// constraint).
InterpSolution calderon_lozanovskii_norm(const Couple& couple, double theta, const CVec& x,
                                         const SolverConfig& cfg);

/// Intersection-structure interpolation norm: side 1 carries several
/// structure terms at once (norm = max over them); used for couples whose
/// second space is an intersection Y ∩ Z.
InterpSolution interp_norm_multi(const std::vector<StructTerm>& side0,
                                 const std::vector<StructTerm>& side1, double theta, double base,
                                 int window, const CVec& x, const SolverConfig& cfg,
                                 const std::vector<SparseSeq>& extra_starts = {});

}  // namespace ssi
