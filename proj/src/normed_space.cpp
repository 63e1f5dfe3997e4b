#include "ssi/normed_space.hpp"

#include <algorithm>
#include <stdexcept>

namespace ssi {

NormedSpace NormedSpace::weighted_lp(double p, std::vector<double> weights) {
  if (!(p >= 1.0))
    throw std::invalid_argument("NormedSpace: p must satisfy p >= 1 or p = inf");
  if (weights.empty()) throw std::invalid_argument("NormedSpace: dim must be positive");
  for (double w : weights)
    if (!(w > 0.0)) throw std::invalid_argument("NormedSpace: weights must be strictly positive");
  NormedSpace s;
  s.p_ = p;
  s.weights_ = std::move(weights);
  return s;
}

double lp_aggregate(double p, const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  if (p == kInf) {
    double m = 0.0;
    for (double v : values) m = std::max(m, v);
    return m;
  }
  // Scale out the max to dodge overflow for large p.
  double m = 0.0;
  for (double v : values) m = std::max(m, v);
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double v : values) s += std::pow(v / m, p);
  return m * std::pow(s, 1.0 / p);
}

double NormedSpace::norm(const CVec& v) const {
  if (v.size() != weights_.size())
    throw std::invalid_argument("NormedSpace::norm: dimension mismatch");
  std::vector<double> mags(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) mags[i] = weights_[i] * std::abs(v[i]);
  return lp_aggregate(p_, mags);
}

double NormedSpace::dual_norm(const CVec& v) const {
  if (v.size() != weights_.size())
    throw std::invalid_argument("NormedSpace::dual_norm: dimension mismatch");
  std::vector<double> mags(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) mags[i] = std::abs(v[i]) / weights_[i];
  return lp_aggregate(conjugate_exponent(p_), mags);
}

NormedSpace NormedSpace::scaled(double s) const {
  if (!(s > 0.0)) throw std::invalid_argument("NormedSpace::scaled: factor must be positive");
  std::vector<double> w = weights_;
  for (double& x : w) x *= s;
  return weighted_lp(p_, std::move(w));
}

void Couple::validate() const {
  if (space0.dim() != space1.dim())
    throw std::invalid_argument("Couple: spaces must share one ambient dimension");
}

double Couple::intersection_norm(const CVec& v) const {
  return std::max(space0.norm(v), space1.norm(v));
}

}  // namespace ssi
