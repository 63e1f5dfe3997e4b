#include "ssi/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "ssi/rng.hpp"

namespace ssi {

namespace {

/// Projected multistart ascent of ‖Tx‖_out / ‖x‖_in on the unit sphere.
/// Returns a certified-from-below estimate.
double sphere_max(const CMat& t, const NormedSpace& in, const NormedSpace& out, int starts,
                  std::uint64_t seed) {
  Rng rng(seed);
  double best = 0.0;
  const std::size_t n = t.cols;
  for (int s = 0; s < starts; ++s) {
    CVec x(n);
    if (s == 0)
      for (auto& z : x) z = Cplx(1.0, 0.0);
    else
      for (auto& z : x) z = Cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    double ratio = 0.0;
    for (int it = 0; it < 400; ++it) {
      double nx = in.norm(x);
      if (nx == 0) break;
      ratio = out.norm(t.apply(x)) / nx;
      // coordinate-wise multiplicative probing: cheap, derivative-free, exact
      // for diagonal instances and adequate as a lower estimate elsewhere
      bool improved = false;
      for (std::size_t i = 0; i < n; ++i) {
        for (double f : {1.25, 0.8, -1.0}) {
          CVec y = x;
          y[i] *= f;
          double ny = in.norm(y);
          if (ny == 0) continue;
          double r = out.norm(t.apply(y)) / ny;
          if (r > ratio * (1 + 1e-12)) {
            x = y;
            ratio = r;
            improved = true;
          }
        }
        // small complex rotation probe
        CVec y = x;
        y[i] *= std::polar(1.0, 0.3);
        double ny = in.norm(y);
        if (ny > 0) {
          double r = out.norm(t.apply(y)) / ny;
          if (r > ratio * (1 + 1e-12)) {
            x = y;
            ratio = r;
            improved = true;
          }
        }
      }
      if (!improved) break;
    }
    best = std::max(best, ratio);
  }
  return best;
}

}  // namespace

OperatorBound operator_struct_bound(const CMat& t, const SeqStructSpec& spec,
                                    const NormedSpace& space_in, const NormedSpace& space_out,
                                    const SolverConfig& cfg) {
  spec.validate();
  if (t.cols != space_in.dim() || t.rows != space_out.dim())
    throw std::invalid_argument("operator_struct_bound: shape mismatch");
  const auto& wi = space_in.weights();
  const auto& wo = space_out.weights();
  OperatorBound r;
  if (space_in.p() == 2.0 && space_out.p() == 2.0) {
    // weighted singular value: σ_max(W_out · T · W_in⁻¹)
    CMat m(t.rows, t.cols);
    for (std::size_t i = 0; i < t.rows; ++i)
      for (std::size_t j = 0; j < t.cols; ++j) m.at(i, j) = wo[i] * t.at(i, j) / wi[j];
    r.value = sigma_max(m);
    r.exact = true;
    return r;
  }
  if (space_in.p() == 1.0 && space_out.p() == 1.0) {
    double best = 0.0;
    for (std::size_t j = 0; j < t.cols; ++j) {
      double col = 0.0;
      for (std::size_t i = 0; i < t.rows; ++i) col += wo[i] * std::abs(t.at(i, j));
      best = std::max(best, col / wi[j]);
    }
    r.value = best;
    r.exact = true;
    return r;
  }
  if (space_in.p() == kInf && space_out.p() == kInf) {
    double best = 0.0;
    for (std::size_t i = 0; i < t.rows; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < t.cols; ++j) row += std::abs(t.at(i, j)) / wi[j];
      best = std::max(best, wo[i] * row);
    }
    r.value = best;
    r.exact = true;
    return r;
  }
  int starts = std::max(4, cfg.restarts * 2);
  r.value = sphere_max(t, space_in, space_out, starts, cfg.seed);
  r.exact = false;
  r.multistarts = starts;
  return r;
}

void LaurentOperatorFamily::validate() const {
  if (coeffs.empty()) throw std::invalid_argument("LaurentOperatorFamily: no coefficients");
  std::size_t r = rows(), c = cols();
  for (const auto& [m, a] : coeffs)
    if (a.rows != r || a.cols != c)
      throw std::invalid_argument("LaurentOperatorFamily: inconsistent shapes");
}

CVec LaurentOperatorFamily::apply_at(Cplx z, const CVec& x) const {
  validate();
  if (x.size() != cols()) throw std::invalid_argument("LaurentOperatorFamily: input dim mismatch");
  CVec out = zeros(rows());
  for (const auto& [m, a] : coeffs) {
    Cplx f = std::exp(Cplx(static_cast<double>(m), 0.0) * z);
    CVec ax = a.apply(x);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += f * ax[i];
  }
  return out;
}

SparseSeq stein_boundary_coeffs(const LaurentOperatorFamily& fam, int j, const SparseSeq& s) {
  fam.validate();
  if (j != 0 && j != 1) throw std::invalid_argument("stein_boundary_coeffs: j must be 0 or 1");
  if (s.dim() != fam.cols())
    throw std::invalid_argument("stein_boundary_coeffs: sequence dim mismatch");
  SparseSeq out(fam.rows());
  for (const auto& [m, a] : fam.coeffs) {
    double f = std::exp(static_cast<double>(m) * j);
    for (const auto& [k, b] : s.entries()) {
      CVec contrib = a.apply(b);
      for (auto& z : contrib) z *= f;
      out.set(k + m, add(out.block(k + m), contrib));
    }
  }
  return out;
}

ResolventFamily::ResolventFamily(std::vector<double> a) : a_(std::move(a)) {
  if (a_.empty()) throw std::invalid_argument("ResolventFamily: empty diagonal");
  for (double v : a_)
    if (!(v > 0)) throw std::invalid_argument("ResolventFamily: diagonal must be positive");
}

CMat ResolventFamily::s_k(int k) const {
  double ek = std::exp(static_cast<double>(k));
  std::vector<double> d(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) d[i] = a_[i] / (ek + a_[i]);
  return CMat::diagonal(d);
}

CMat ResolventFamily::t_k(int k) const {
  // exact complement of s_k so that S_k + T_k = I holds bitwise
  double ek = std::exp(static_cast<double>(k));
  std::vector<double> d(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) d[i] = 1.0 - a_[i] / (ek + a_[i]);
  return CMat::diagonal(d);
}

double ResolventFamily::struct_bound(int k_lo, int k_hi) const {
  double sup = 0.0;
  for (int k = k_lo; k <= k_hi; ++k) {
    double ek = std::exp(static_cast<double>(k));
    for (double a : a_) sup = std::max(sup, ek / (ek + a));
  }
  return sup;
}

}  // namespace ssi
