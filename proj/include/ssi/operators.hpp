#pragma once

#include <map>

#include "ssi/seq_struct.hpp"
#include "ssi/solver.hpp"

namespace ssi {

/// (𝔖,𝔗)-bound of the constant operator sequence (…,T,T,T,…). For every
/// implemented structure the diagonal action reduces to the operator norm
/// between the base spaces; computed exactly for 2→2 / 1→1 / ∞→∞ and by
/// multistart sphere maximization otherwise (a lower estimate).
struct OperatorBound {
  double value = 0.0;
  bool exact = false;   // closed-form route (singular value / row / column sums)
  int multistarts = 0;  // diagnostics when estimated
};

OperatorBound operator_struct_bound(const CMat& t, const SeqStructSpec& spec,
                                    const NormedSpace& space_in, const NormedSpace& space_out,
                                    const SolverConfig& cfg);

/// Analytic operator family T(z) = Σ_m e^{mz} A_m on the closed strip,
/// 2πi-periodic by construction.
struct LaurentOperatorFamily {
  std::map<int, CMat> coeffs;

  std::size_t rows() const { return coeffs.empty() ? 0 : coeffs.begin()->second.rows; }
  std::size_t cols() const { return coeffs.empty() ? 0 : coeffs.begin()->second.cols; }
  void validate() const;

  /// T(z)x.
  CVec apply_at(Cplx z, const CVec& x) const;
};

/// Fourier coefficients of t ↦ Σ_k e^{ikt} T(j+it) x_k for a Laurent family:
/// the k-th block is the finite convolution Σ_m e^{mj} A_m x_{k−m}.
SparseSeq stein_boundary_coeffs(const LaurentOperatorFamily& fam, int j, const SparseSeq& s);

/// Diagonal resolvent family of A = diag(a), a > 0: S_k = A(eᵏ+A)⁻¹ and
/// T_k = eᵏ(eᵏ+A)⁻¹, so S_k + T_k = I exactly.
class ResolventFamily {
 public:
  explicit ResolventFamily(std::vector<double> a);

  const std::vector<double>& diagonal() const { return a_; }
  CMat s_k(int k) const;
  CMat t_k(int k) const;

  /// sup over k ∈ [k_lo, k_hi] of the diagonal family's structure bound,
  /// max_i eᵏ/(eᵏ+aᵢ); diagonal operators on a fixed weighted ℓᵖ space have
  /// operator norm max_i |dᵢ| for every p, so the structure is immaterial.
  double struct_bound(int k_lo, int k_hi) const;

 private:
  std::vector<double> a_;
};

}  // namespace ssi
