#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ssi/complex_la.hpp"

namespace ssi {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Finite-dimensional Banach space on ℂⁿ. The only concrete family is the
/// weighted ℓᵖ norm ‖v‖ = (Σ (wᵢ|vᵢ|)ᵖ)^{1/p} (max for p = ∞); the class is
/// the norm oracle the rest of the library talks to, so further families can
/// be added without touching callers.
class NormedSpace {
 public:
  NormedSpace() = default;
  static NormedSpace weighted_lp(double p, std::vector<double> weights);
  static NormedSpace unweighted_lp(double p, std::size_t dim) {
    return weighted_lp(p, std::vector<double>(dim, 1.0));
  }

  std::size_t dim() const { return weights_.size(); }
  double p() const { return p_; }
  const std::vector<double>& weights() const { return weights_; }

  double norm(const CVec& v) const;

  /// Norm of v acting as a functional ⟨·,v⟩, i.e. weighted ℓ^{p'} with
  /// reciprocal weights, 1/p + 1/p' = 1.
  double dual_norm(const CVec& v) const;

  NormedSpace dual() const { return weighted_lp(conjugate_exponent(p_), reciprocal(weights_)); }

  /// Same norm with every weight multiplied by s (s > 0).
  NormedSpace scaled(double s) const;

  bool same_as(const NormedSpace& o) const {
    return p_ == o.p_ && weights_ == o.weights_;
  }

  static double conjugate_exponent(double p) {
    if (p == 1.0) return kInf;
    if (p == kInf) return 1.0;
    return p / (p - 1.0);
  }

 private:
  static std::vector<double> reciprocal(const std::vector<double>& w) {
    std::vector<double> r(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r[i] = 1.0 / w[i];
    return r;
  }

  double p_ = 2.0;
  std::vector<double> weights_;
};

/// Weighted ℓᵖ norm of a vector of nonnegative magnitudes.
double lp_aggregate(double p, const std::vector<double>& values);

/// Compatible couple: two norms on the same ℂⁿ (the ambient Hausdorff space).
struct Couple {
  NormedSpace space0;
  NormedSpace space1;

  std::size_t dim() const { return space0.dim(); }
  void validate() const;

  /// ‖v‖_{X₀∩X₁} = max of the two norms.
  double intersection_norm(const CVec& v) const;
};

}  // namespace ssi
