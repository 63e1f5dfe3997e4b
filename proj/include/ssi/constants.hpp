#pragma once

#include <algorithm>
#include <cmath>

namespace ssi::constants {

/// Σ_{k≤0} b^{kθ} + Σ_{k>0} b^{−k(1−θ)}: the geometric-series factor that
/// bounds ‖x‖_{X₀+X₁} by the interpolation norm.
inline double geometric_sum(double theta, double b) {
  double bt = std::pow(b, theta), bu = std::pow(b, 1.0 - theta);
  return bt / (bt - 1.0) + 1.0 / (bu - 1.0);
}

/// Translation constant: the max-form infimum exceeds the log-convex-product
/// form by at most b^θ.
inline double logconvex(double theta, double b) { return std::pow(b, theta); }

/// mean-method norm ≤ mean_forward(θ,b) · interpolation norm.
inline double mean_forward(double theta, double b) {
  double bt = std::pow(b, theta), bu = std::pow(b, 1.0 - theta);
  return 2.0 * (bt / (bt - 1.0) + bu / (bu - 1.0));
}

/// interpolation norm ≤ mean_reverse(θ,b) · mean-method norm.
inline double mean_reverse(double theta, double b) {
  return 2.0 * (1.0 + std::pow(b, theta));
}

/// Finite-decomposition construction: Cesàro part (1) + the two tail-lump
/// estimates, per side j with h = θ or 1−θ; the n-threshold rule turns the
/// 1/(n+1)·‖x‖_{X_j} remainder into one more b^h/(b^h−1) factor.
inline double finite_rep(double theta, double b) {
  auto side = [&](double h) {
    double bh = std::pow(b, h);
    return 1.0 + (2.0 * bh + 1.0) / (bh - 1.0);
  };
  return std::max(side(theta), side(1.0 - theta));
}

/// Operator interpolation carries b^θ on top of M₀^{1−θ}M₁^θ; it drops to 1
/// when M₀/M₁ is an exact power of b.
inline double operator_factor(double theta, double b) { return std::pow(b, theta); }

/// Calderón–Lozanovskii → lattice-ℓ¹ interpolation embedding, per side.
inline double bfs_side(double h, double b) {
  double bh = std::pow(b, h);
  return bh + 1.0 / bh + bh / (bh - 1.0);
}

inline double bfs(double theta, double b) {
  return std::max(bfs_side(theta, b), bfs_side(1.0 - theta, b));
}

/// Base change a → b = a^δ: ⌊δ⌋+1 interleaved copies (δ > 1) times the
/// multiplier bound b^{θ·frac} < b^θ.
inline double base_change(double theta, double a, double b) {
  double delta = std::log(b) / std::log(a);
  double copies = delta > 1.0 ? std::floor(delta) + 1.0 : 1.0;
  return copies * std::pow(b, theta);
}

/// Composite reiteration parameter ω = (1−θ)θ₀ + θθ₁.
inline double reiteration_omega(double theta, double theta0, double theta1) {
  return (1.0 - theta) * theta0 + theta * theta1;
}

}  // namespace ssi::constants
