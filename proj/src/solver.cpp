#include "ssi/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "ssi/detail/descent.hpp"
#include "ssi/rng.hpp"

namespace ssi {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

// ---------------------------------------------------------------------------
// Weighted p-aggregation with smoothing, forward + backward.
//
// Finite p:  A = (Σ π_j y_j^p)^{1/p},  dA/dy_j = π_j (y_j/A)^{p-1}.
// p = ∞:     A = LSE_μ(y) = m + μ·ln Σ e^{(y_j-m)/μ}  (unweighted),
//            dA/dy_j = softmax_j.
// All y_j are ≥ 0; with modulus smoothing they are ≥ μ > 0 so finite-p
// aggregates are smooth.
// ---------------------------------------------------------------------------

struct AggScratch {
  std::vector<double> y;
  std::vector<double> w;      // π_j; empty = all ones
  double value = 0.0;
  double scale = 0.0;         // max y (for stable pow / softmax)
  double p = 2.0;
  double mu = 0.0;

  void reset(double p_, double mu_) {
    y.clear();
    w.clear();
    p = p_;
    mu = mu_;
  }
  void push(double yv) { y.push_back(yv); }
  void push(double yv, double wv) {
    y.push_back(yv);
    if (w.size() != y.size() - 1) throw std::logic_error("AggScratch: mixed weighted push");
    w.push_back(wv);
  }

  double forward() {
    if (y.empty()) {
      value = 0.0;
      return 0.0;
    }
    scale = 0.0;
    for (double v : y) scale = std::max(scale, v);
    if (p == kInf) {
      double z = 0.0;
      for (double v : y) z += std::exp((v - scale) / mu);
      value = scale + mu * std::log(z);
      return value;
    }
    if (scale == 0.0) {
      value = 0.0;
      return 0.0;
    }
    double acc = 0.0;
    if (p == 1.0) {
      for (std::size_t j = 0; j < y.size(); ++j) acc += (w.empty() ? 1.0 : w[j]) * (y[j] / scale);
    } else if (p == 2.0) {
      for (std::size_t j = 0; j < y.size(); ++j) {
        double r = y[j] / scale;
        acc += (w.empty() ? 1.0 : w[j]) * r * r;
      }
    } else {
      for (std::size_t j = 0; j < y.size(); ++j)
        acc += (w.empty() ? 1.0 : w[j]) * std::pow(y[j] / scale, p);
    }
    value = scale * std::pow(acc, 1.0 / p);
    return value;
  }

  // dA/dy_j, scaled by `upstream`.
  void backward(double upstream, std::vector<double>& grad_y) {
    grad_y.assign(y.size(), 0.0);
    if (y.empty() || upstream == 0.0) return;
    if (p == kInf) {
      double z = 0.0;
      for (double v : y) z += std::exp((v - scale) / mu);
      for (std::size_t j = 0; j < y.size(); ++j)
        grad_y[j] = upstream * std::exp((y[j] - scale) / mu) / z;
      return;
    }
    if (value <= 0.0) return;
    for (std::size_t j = 0; j < y.size(); ++j) {
      double pi = w.empty() ? 1.0 : w[j];
      double r = y[j] / value;
      double d = (p == 1.0) ? 1.0 : ((p == 2.0) ? r : std::pow(r, p - 1.0));
      grad_y[j] = upstream * pi * d;
    }
  }
};

inline double smooth_mag(double re, double im, double sigma, double mu) {
  return std::sqrt(sigma * sigma * (re * re + im * im) + mu * mu);
}

// ---------------------------------------------------------------------------
// One structure-norm objective compiled against a window.
// Variable layout: blocks for window positions w = 0..W-1, coordinates
// i = 0..n-1, flat reals v[2*(w*n+i)] = Re, v[2*(w*n+i)+1] = Im.
// ---------------------------------------------------------------------------

class TermEvaluator {
 public:
  TermEvaluator(const StructTerm& term, const std::vector<int>& window, int solver_quad_nodes,
                TailContribution tail)
      : term_(term), window_(window), tail_(std::move(tail)) {
    term_.spec.validate();
    n_ = term_.base.dim();
    W_ = window_.size();
    cw_.resize(W_);
    const double lnb = std::log(term_.weight_base);
    for (std::size_t w = 0; w < W_; ++w) {
      double le = term_.weight_exponent * window_[w] * lnb;
      if (le > 690.0) throw std::overflow_error("solver term: weight factor exceeds 1e300");
      cw_[w] = std::exp(le);
    }
    const auto& spec = term_.spec;
    switch (spec.kind) {
      case StructKind::Lp:
      case StructKind::LatticeLq:
        break;
      case StructKind::FourierLp:
      case StructKind::FourierC: {
        int width = static_cast<int>(window_.back() - window_.front() + 1);
        int nodes = solver_quad_nodes > 0 ? solver_quad_nodes : std::max(4 * width, 48);
        nodes = std::max(nodes, 4 * width);
        cos_.resize(nodes * W_);
        sin_.resize(nodes * W_);
        nodes_ = nodes;
        for (int q = 0; q < nodes; ++q) {
          double t = kTwoPi * q / nodes;
          for (std::size_t w = 0; w < W_; ++w) {
            cos_[q * W_ + w] = std::cos(window_[w] * t);
            sin_[q * W_ + w] = std::sin(window_[w] * t);
          }
        }
        break;
      }
      case StructKind::Rademacher: {
        if (spec.mode == RademacherMode::Exact &&
            (std::size_t{1} << W_) <= kRademacherEnumLimit) {
          std::size_t patterns = std::size_t{1} << (W_ - 1);
          rnd_.resize(patterns * W_);
          for (std::size_t b = 0; b < patterns; ++b)
            for (std::size_t w = 0; w < W_; ++w)
              rnd_[b * W_ + w] =
                  (w == 0) ? 1.0 : (((b >> (w - 1)) & 1u) ? -1.0 : 1.0);
          samples_ = patterns;
        } else {
          fill_random_matrix(/*gaussian=*/false);
        }
        break;
      }
      case StructKind::Gaussian:
        fill_random_matrix(/*gaussian=*/true);
        break;
    }
  }

  /// Smoothed objective; accumulates coeff * ∂/∂v into grad when non-null.
  double smooth(const std::vector<double>& v, double mu, std::vector<double>* grad,
                double coeff) const {
    switch (term_.spec.kind) {
      case StructKind::Lp: return smooth_lp(v, mu, grad, coeff);
      case StructKind::FourierLp: return smooth_fourier(v, mu, grad, coeff, term_.spec.p);
      case StructKind::FourierC: return smooth_fourier(v, mu, grad, coeff, kInf);
      case StructKind::Rademacher:
      case StructKind::Gaussian: return smooth_random_sum(v, mu, grad, coeff);
      case StructKind::LatticeLq: return smooth_lattice(v, mu, grad, coeff);
    }
    throw std::logic_error("TermEvaluator: unreachable");
  }

  /// Full-precision norm of the blocks (plus pinned tails), with interval.
  NormEstimate exact(const SparseSeq& s) const {
    WeightedEval we{term_.weight_base, term_.weight_exponent};
    NormEstimate e = weighted_seq_norm(term_.spec, term_.base, we, s);
    if (tail_.scalar_terms.empty() && tail_.coord_mags.empty()) return e;
    return combine_tail(e, s);
  }

  SparseSeq to_seq(const std::vector<double>& v) const {
    SparseSeq s(n_);
    for (std::size_t w = 0; w < W_; ++w) {
      CVec b(n_);
      for (std::size_t i = 0; i < n_; ++i)
        b[i] = Cplx(v[2 * (w * n_ + i)], v[2 * (w * n_ + i) + 1]);
      s.set(window_[w], b);
    }
    return s;
  }

  const std::vector<int>& window() const { return window_; }
  std::size_t dim() const { return n_; }

 private:
  void fill_random_matrix(bool gaussian) {
    const auto& spec = term_.spec;
    samples_ = spec.samples;
    rnd_.resize(samples_ * W_);
    const double wnorm = gaussian ? 1.0 / gaussian_lp_moment(spec.p) : 1.0;
    for (std::size_t m = 0; m < samples_; ++m)
      for (std::size_t w = 0; w < W_; ++w) {
        std::uint64_t key = Rng::hash(
            spec.seed, m,
            static_cast<std::uint64_t>(static_cast<std::int64_t>(window_[w])) + 0x8000000000ull);
        rnd_[m * W_ + w] =
            wnorm * (gaussian ? keyed_gaussian(key) : static_cast<double>(keyed_sign(key)));
      }
  }

  NormEstimate combine_tail(const NormEstimate& e, const SparseSeq& s) const {
    const auto& spec = term_.spec;
    if (spec.kind == StructKind::Lp) {
      auto fold = [&](double v) {
        std::vector<double> parts{v};
        for (double t : tail_.scalar_terms) parts.push_back(t);
        return lp_aggregate(spec.p, parts);
      };
      return {fold(e.value), fold(e.lo), fold(e.hi)};
    }
    if (spec.kind == StructKind::LatticeLq) {
      // Rebuild the coordinatewise ℓ^q column sums with the tail magnitudes.
      CVec col(n_);
      for (std::size_t i = 0; i < n_; ++i) {
        std::vector<double> mags;
        for (const auto& [k, b] : s.entries())
          mags.push_back(std::abs(b[i]) * std::pow(term_.weight_base, term_.weight_exponent * k));
        if (!tail_.coord_mags.empty()) mags.push_back(tail_.coord_mags[i]);
        col[i] = lp_aggregate(spec.q, mags);
      }
      double v = term_.base.norm(col);
      return NormEstimate::exact(v);
    }
    throw std::invalid_argument("tail contributions are only defined for Lp / LatticeLq terms");
  }

  // --- ℓᵖ of blockwise base norms -----------------------------------------
  double smooth_lp(const std::vector<double>& v, double mu, std::vector<double>* grad,
                   double coeff) const {
    const auto& bw = term_.base.weights();
    const double pb = term_.base.p();
    std::vector<AggScratch>& inner = scratch_inner_;
    inner.resize(W_);
    AggScratch& outer = scratch_outer_;
    outer.reset(term_.spec.p, mu);
    for (std::size_t w = 0; w < W_; ++w) {
      inner[w].reset(pb, mu);
      for (std::size_t i = 0; i < n_; ++i) {
        double re = v[2 * (w * n_ + i)], im = v[2 * (w * n_ + i) + 1];
        inner[w].push(smooth_mag(re, im, cw_[w] * bw[i], mu));
      }
      outer.push(inner[w].forward());
    }
    for (double t : tail_.scalar_terms) outer.push(t);
    double f = outer.forward();
    if (grad) {
      std::vector<double>& gout = gbuf0_;
      outer.backward(coeff, gout);
      std::vector<double>& gin = gbuf1_;
      for (std::size_t w = 0; w < W_; ++w) {
        inner[w].backward(gout[w], gin);
        for (std::size_t i = 0; i < n_; ++i) {
          double re = v[2 * (w * n_ + i)], im = v[2 * (w * n_ + i) + 1];
          double sigma = cw_[w] * bw[i];
          double y = inner[w].y[i];
          double c = gin[i] * sigma * sigma / y;
          (*grad)[2 * (w * n_ + i)] += c * re;
          (*grad)[2 * (w * n_ + i) + 1] += c * im;
        }
      }
    }
    return f;
  }

  // --- Fourier: p-mean (or sup) over torus nodes of base norms -------------
  double smooth_fourier(const std::vector<double>& v, double mu, std::vector<double>* grad,
                        double coeff, double p) const {
    const auto& bw = term_.base.weights();
    const double pb = term_.base.p();
    const int Q = nodes_;
    // f_i(t_q) = Σ_w c_w e^{i k_w t_q} z_{w,i}
    std::vector<double>& fre = fre_;
    std::vector<double>& fim = fim_;
    fre.assign(Q * n_, 0.0);
    fim.assign(Q * n_, 0.0);
    for (int q = 0; q < Q; ++q) {
      for (std::size_t w = 0; w < W_; ++w) {
        double c = cw_[w], co = cos_[q * W_ + w], si = sin_[q * W_ + w];
        for (std::size_t i = 0; i < n_; ++i) {
          double re = v[2 * (w * n_ + i)], im = v[2 * (w * n_ + i) + 1];
          fre[q * n_ + i] += c * (co * re - si * im);
          fim[q * n_ + i] += c * (si * re + co * im);
        }
      }
    }
    std::vector<AggScratch>& inner = scratch_inner_;
    inner.resize(Q);
    AggScratch& outer = scratch_outer_;
    outer.reset(p, mu);
    const double piq = 1.0 / Q;
    for (int q = 0; q < Q; ++q) {
      inner[q].reset(pb, mu);
      for (std::size_t i = 0; i < n_; ++i)
        inner[q].push(smooth_mag(fre[q * n_ + i], fim[q * n_ + i], bw[i], mu));
      if (p == kInf)
        outer.push(inner[q].forward());
      else
        outer.push(inner[q].forward(), piq);
    }
    for (double t : tail_.scalar_terms) outer.push(t, 1.0);  // unused for Fourier
    double f = outer.forward();
    if (grad) {
      std::vector<double>& gout = gbuf0_;
      outer.backward(coeff, gout);
      std::vector<double>& gin = gbuf1_;
      for (int q = 0; q < Q; ++q) {
        if (gout[q] == 0.0) continue;
        inner[q].backward(gout[q], gin);
        for (std::size_t i = 0; i < n_; ++i) {
          double y = inner[q].y[i];
          double c = gin[i] * bw[i] * bw[i] / y;
          double dre = c * fre[q * n_ + i], dim = c * fim[q * n_ + i];
          for (std::size_t w = 0; w < W_; ++w) {
            double cc = cw_[w], co = cos_[q * W_ + w], si = sin_[q * W_ + w];
            (*grad)[2 * (w * n_ + i)] += cc * (co * dre + si * dim);
            (*grad)[2 * (w * n_ + i) + 1] += cc * (-si * dre + co * dim);
          }
        }
      }
    }
    return f;
  }

  // --- Rademacher / Gaussian: p-mean over sample rows of base norms --------
  double smooth_random_sum(const std::vector<double>& v, double mu, std::vector<double>* grad,
                           double coeff) const {
    const auto& bw = term_.base.weights();
    const double pb = term_.base.p();
    const std::size_t M = samples_;
    std::vector<double>& fre = fre_;
    std::vector<double>& fim = fim_;
    fre.assign(M * n_, 0.0);
    fim.assign(M * n_, 0.0);
    for (std::size_t m = 0; m < M; ++m) {
      for (std::size_t w = 0; w < W_; ++w) {
        double g = rnd_[m * W_ + w] * cw_[w];
        if (g == 0.0) continue;
        for (std::size_t i = 0; i < n_; ++i) {
          fre[m * n_ + i] += g * v[2 * (w * n_ + i)];
          fim[m * n_ + i] += g * v[2 * (w * n_ + i) + 1];
        }
      }
    }
    std::vector<AggScratch>& inner = scratch_inner_;
    inner.resize(M);
    AggScratch& outer = scratch_outer_;
    outer.reset(term_.spec.p, mu);
    const double pim = 1.0 / static_cast<double>(M);
    for (std::size_t m = 0; m < M; ++m) {
      inner[m].reset(pb, mu);
      for (std::size_t i = 0; i < n_; ++i)
        inner[m].push(smooth_mag(fre[m * n_ + i], fim[m * n_ + i], bw[i], mu));
      outer.push(inner[m].forward(), pim);
    }
    double f = outer.forward();
    if (grad) {
      std::vector<double>& gout = gbuf0_;
      outer.backward(coeff, gout);
      std::vector<double>& gin = gbuf1_;
      for (std::size_t m = 0; m < M; ++m) {
        if (gout[m] == 0.0) continue;
        inner[m].backward(gout[m], gin);
        for (std::size_t i = 0; i < n_; ++i) {
          double y = inner[m].y[i];
          double c = gin[i] * bw[i] * bw[i] / y;
          double dre = c * fre[m * n_ + i], dim = c * fim[m * n_ + i];
          for (std::size_t w = 0; w < W_; ++w) {
            double g = rnd_[m * W_ + w] * cw_[w];
            (*grad)[2 * (w * n_ + i)] += g * dre;
            (*grad)[2 * (w * n_ + i) + 1] += g * dim;
          }
        }
      }
    }
    return f;
  }

  // --- lattice: base norm of coordinatewise ℓ^q over the window ------------
  double smooth_lattice(const std::vector<double>& v, double mu, std::vector<double>* grad,
                        double coeff) const {
    const auto& bw = term_.base.weights();
    const double pb = term_.base.p();
    const double q = term_.spec.q;
    std::vector<AggScratch>& inner = scratch_inner_;
    inner.resize(n_);
    AggScratch& outer = scratch_outer_;
    outer.reset(pb, mu);
    for (std::size_t i = 0; i < n_; ++i) {
      inner[i].reset(q, mu);
      for (std::size_t w = 0; w < W_; ++w) {
        double re = v[2 * (w * n_ + i)], im = v[2 * (w * n_ + i) + 1];
        inner[i].push(smooth_mag(re, im, cw_[w], mu));
      }
      if (!tail_.coord_mags.empty()) inner[i].push(tail_.coord_mags[i]);
      outer.push(bw[i] * inner[i].forward());
    }
    double f = outer.forward();
    if (grad) {
      std::vector<double>& gout = gbuf0_;
      outer.backward(coeff, gout);
      std::vector<double>& gin = gbuf1_;
      for (std::size_t i = 0; i < n_; ++i) {
        inner[i].backward(gout[i] * bw[i], gin);
        for (std::size_t w = 0; w < W_; ++w) {
          double re = v[2 * (w * n_ + i)], im = v[2 * (w * n_ + i) + 1];
          double y = inner[i].y[w];
          double c = gin[w] * cw_[w] * cw_[w] / y;
          (*grad)[2 * (w * n_ + i)] += c * re;
          (*grad)[2 * (w * n_ + i) + 1] += c * im;
        }
      }
    }
    return f;
  }

  StructTerm term_;
  std::vector<int> window_;
  TailContribution tail_;
  std::size_t n_ = 0, W_ = 0;
  std::vector<double> cw_;
  std::vector<double> cos_, sin_;
  int nodes_ = 0;
  std::vector<double> rnd_;
  std::size_t samples_ = 0;

  mutable std::vector<AggScratch> scratch_inner_;
  mutable AggScratch scratch_outer_;
  mutable std::vector<double> fre_, fim_, gbuf0_, gbuf1_;
};

// ---------------------------------------------------------------------------
// Generic smoothed first-order descent (FISTA with backtracking and adaptive
// restart), run over a decreasing temperature schedule.
// ---------------------------------------------------------------------------

// ---------------------------------------------------------------------------
// Problem adapters.
// ---------------------------------------------------------------------------

std::vector<int> make_window(int n) {
  std::vector<int> w;
  for (int k = -n; k <= n; ++k) w.push_back(k);
  return w;
}

/// max-of-terms objective on the constraint Σ s_k = target, with the k = 0
/// block eliminated so feasibility is exact by construction.
using detail::SmoothProblem;
using detail::DescentResult;
using detail::descend;

class MaxProblem : public SmoothProblem {
 public:
  MaxProblem(std::vector<const TermEvaluator*> terms, std::vector<StructTerm> raw_terms,
             const CVec& target, const std::vector<int>& window, bool log_product = false,
             double theta = 0.5)
      : terms_(std::move(terms)), target_(target), window_(window),
        log_product_(log_product), theta_(theta) {
    n_ = target.size();
    W_ = window.size();
    for (std::size_t w = 0; w < W_; ++w)
      if (window_[w] == 0) w0_ = w;
    full_.resize(2 * W_ * n_);
    gfull_.resize(2 * W_ * n_);
    // Diagonal preconditioner: variables carry the inverse of the largest
    // weight any term applies at that (position, coordinate); without it the
    // b^{±k} scaling makes far window positions numerically frozen.
    pre_.assign(2 * W_ * n_, 1.0);
    for (std::size_t w = 0; w < W_; ++w)
      for (std::size_t i = 0; i < n_; ++i) {
        double sens = 0.0;
        for (const auto& t : raw_terms)
          sens = std::max(sens, std::pow(t.weight_base, t.weight_exponent * window_[w]) *
                                    t.base.weights()[i]);
        double d = sens > 0 ? 1.0 / sens : 1.0;
        pre_[2 * (w * n_ + i)] = d;
        pre_[2 * (w * n_ + i) + 1] = d;
      }
  }

  std::size_t size() const override { return 2 * (W_ - 1) * n_; }

  // variables: preconditioned blocks at positions != w0
  void expand(const std::vector<double>& v, std::vector<double>& full) const {
    std::vector<double> acc(2 * n_, 0.0);
    std::size_t vi = 0;
    for (std::size_t w = 0; w < W_; ++w) {
      if (w == w0_) continue;
      for (std::size_t c = 0; c < 2 * n_; ++c) {
        double x = pre_[2 * w * n_ + c] * v[vi];
        full[2 * w * n_ + c] = x;
        acc[c] += x;
        ++vi;
      }
    }
    for (std::size_t i = 0; i < n_; ++i) {
      full[2 * (w0_ * n_ + i)] = target_[i].real() - acc[2 * i];
      full[2 * (w0_ * n_ + i) + 1] = target_[i].imag() - acc[2 * i + 1];
    }
  }

  double eval(const std::vector<double>& v, double mu, std::vector<double>* grad) const override {
    expand(v, full_);
    double f;
    if (!log_product_) {
      // LSE over the terms' smoothed values.
      std::vector<double> fs(terms_.size());
      double m = -kInf;
      for (std::size_t t = 0; t < terms_.size(); ++t) {
        fs[t] = terms_[t]->smooth(full_, mu, nullptr, 0.0);
        m = std::max(m, fs[t]);
      }
      double z = 0.0;
      for (double fv : fs) z += std::exp((fv - m) / mu);
      f = m + mu * std::log(z);
      if (grad) {
        std::fill(gfull_.begin(), gfull_.end(), 0.0);
        for (std::size_t t = 0; t < terms_.size(); ++t) {
          double wgt = std::exp((fs[t] - m) / mu) / z;
          if (wgt > 1e-300) terms_[t]->smooth(full_, mu, &gfull_, wgt);
        }
        collapse(grad);
      }
    } else {
      double f0 = terms_[0]->smooth(full_, mu, nullptr, 0.0);
      double f1 = terms_[1]->smooth(full_, mu, nullptr, 0.0);
      f = (1.0 - theta_) * std::log(f0 + 1e-300) + theta_ * std::log(f1 + 1e-300);
      if (grad) {
        std::fill(gfull_.begin(), gfull_.end(), 0.0);
        terms_[0]->smooth(full_, mu, &gfull_, (1.0 - theta_) / (f0 + 1e-300));
        terms_[1]->smooth(full_, mu, &gfull_, theta_ / (f1 + 1e-300));
        collapse(grad);
      }
    }
    return f;
  }

  void collapse(std::vector<double>* grad) const {
    std::size_t vi = 0;
    const double* g0 = &gfull_[2 * w0_ * n_];
    for (std::size_t w = 0; w < W_; ++w) {
      if (w == w0_) continue;
      for (std::size_t c = 0; c < 2 * n_; ++c) {
        (*grad)[vi] += pre_[2 * w * n_ + c] * (gfull_[2 * w * n_ + c] - g0[c]);
        ++vi;
      }
    }
  }

  std::vector<double> variables_from_seq(const SparseSeq& s) const {
    std::vector<double> v(size(), 0.0);
    std::size_t vi = 0;
    for (std::size_t w = 0; w < W_; ++w) {
      if (w == w0_) continue;
      CVec b = s.block(window_[w]);
      for (std::size_t i = 0; i < n_; ++i) {
        v[vi] = b[i].real() / pre_[2 * (w * n_ + i)];
        v[vi + 1] = b[i].imag() / pre_[2 * (w * n_ + i) + 1];
        vi += 2;
      }
    }
    return v;
  }

  SparseSeq seq_from_variables(const std::vector<double>& v) const {
    expand(v, full_);
    SparseSeq s(n_);
    for (std::size_t w = 0; w < W_; ++w) {
      CVec b(n_);
      for (std::size_t i = 0; i < n_; ++i)
        b[i] = Cplx(full_[2 * (w * n_ + i)], full_[2 * (w * n_ + i) + 1]);
      s.set(window_[w], b);
    }
    return s;
  }

 private:
  std::vector<const TermEvaluator*> terms_;
  CVec target_;
  std::vector<int> window_;
  bool log_product_;
  double theta_;
  std::size_t n_ = 0, W_ = 0, w0_ = 0;
  std::vector<double> pre_;
  mutable std::vector<double> full_, gfull_;
};

/// f0(s⁰) + f1(target − s⁰), blockwise.
class SumProblem : public SmoothProblem {
 public:
  SumProblem(const TermEvaluator* t0, const TermEvaluator* t1, const StructTerm& raw0,
             const StructTerm& raw1, std::vector<CVec> targets, const std::vector<int>& window)
      : t0_(t0), t1_(t1), targets_(std::move(targets)), window_(window) {
    n_ = targets_.front().size();
    W_ = window.size();
    blocks_.resize(2 * W_ * n_);
    comp_.resize(2 * W_ * n_);
    g0_.resize(2 * W_ * n_);
    g1_.resize(2 * W_ * n_);
    pre_.assign(2 * W_ * n_, 1.0);
    for (std::size_t w = 0; w < W_; ++w)
      for (std::size_t i = 0; i < n_; ++i) {
        double sens = std::max(
            std::pow(raw0.weight_base, raw0.weight_exponent * window_[w]) * raw0.base.weights()[i],
            std::pow(raw1.weight_base, raw1.weight_exponent * window_[w]) * raw1.base.weights()[i]);
        double d = sens > 0 ? 1.0 / sens : 1.0;
        pre_[2 * (w * n_ + i)] = d;
        pre_[2 * (w * n_ + i) + 1] = d;
      }
  }

  std::size_t size() const override { return 2 * W_ * n_; }

  void split(const std::vector<double>& v, std::vector<double>& side0,
             std::vector<double>& side1) const {
    for (std::size_t w = 0; w < W_; ++w)
      for (std::size_t i = 0; i < n_; ++i) {
        std::size_t c = 2 * (w * n_ + i);
        side0[c] = pre_[c] * v[c];
        side0[c + 1] = pre_[c + 1] * v[c + 1];
        side1[c] = targets_[w][i].real() - side0[c];
        side1[c + 1] = targets_[w][i].imag() - side0[c + 1];
      }
  }

  double eval(const std::vector<double>& v, double mu, std::vector<double>* grad) const override {
    split(v, blocks_, comp_);
    if (!grad)
      return t0_->smooth(blocks_, mu, nullptr, 0.0) + t1_->smooth(comp_, mu, nullptr, 0.0);
    std::fill(g0_.begin(), g0_.end(), 0.0);
    std::fill(g1_.begin(), g1_.end(), 0.0);
    double f = t0_->smooth(blocks_, mu, &g0_, 1.0) + t1_->smooth(comp_, mu, &g1_, 1.0);
    for (std::size_t d = 0; d < g0_.size(); ++d) (*grad)[d] += pre_[d] * (g0_[d] - g1_[d]);
    return f;
  }

  std::vector<double> variables_from_blocks(const std::vector<double>& blocks) const {
    std::vector<double> v(blocks.size());
    for (std::size_t d = 0; d < blocks.size(); ++d) v[d] = blocks[d] / pre_[d];
    return v;
  }

 private:
  const TermEvaluator* t0_;
  const TermEvaluator* t1_;
  std::vector<CVec> targets_;
  std::vector<int> window_;
  std::size_t n_ = 0, W_ = 0;
  std::vector<double> pre_;
  mutable std::vector<double> blocks_, comp_, g0_, g1_;
};

double exact_max_objective(const std::vector<const TermEvaluator*>& terms, const SparseSeq& s,
                           double* err_hi) {
  double v = 0.0, hi = 0.0;
  for (const TermEvaluator* t : terms) {
    NormEstimate e = t->exact(s);
    v = std::max(v, e.value);
    hi = std::max(hi, e.hi);
  }
  if (err_hi) *err_hi = hi;
  return v;
}

}  // namespace

InterpSolution minimize_max(const std::vector<std::vector<StructTerm>>& term_groups,
                            const CVec& target, int window, const SolverConfig& cfg,
                            const std::vector<SparseSeq>& extra_starts) {
  if (window < 0) throw std::invalid_argument("minimize_max: window must be >= 0");
  const std::size_t n = target.size();
  InterpSolution sol;
  if (is_zero(target)) {
    sol.certificate = SparseSeq(n);
    sol.converged = true;
    return sol;
  }
  auto win = make_window(window);
  std::vector<TermEvaluator> evals;
  std::vector<StructTerm> raw;
  for (const auto& group : term_groups)
    for (const auto& t : group) {
      evals.emplace_back(t, win, cfg.solver_quad_nodes, TailContribution{});
      raw.push_back(t);
    }
  std::vector<const TermEvaluator*> ptrs;
  for (const auto& e : evals) ptrs.push_back(&e);

  MaxProblem prob(ptrs, raw, target, win);

  // Unit scale from the delta decomposition (always feasible).
  SparseSeq delta = SparseSeq::delta(0, target);
  double delta_hi = 0.0;
  double unit = exact_max_objective(ptrs, delta, &delta_hi);
  if (unit == 0.0) unit = 1.0;

  auto schedule = detail::default_schedule(unit, cfg.rel_tol, cfg.smoothing_schedule);
  const int restarts = std::max(1, cfg.restarts);
  long per_restart = std::max<long>(50, cfg.max_iters / (restarts + static_cast<int>(extra_starts.size())));

  Rng rng(cfg.seed);
  std::vector<std::vector<double>> starts;
  starts.push_back(std::vector<double>(prob.size(), 0.0));  // delta at k = 0
  for (int r = 1; r < restarts; ++r) {
    // Spread the target across the window with random nonnegative profile.
    std::vector<double> profile(win.size());
    double tot = 0.0;
    for (std::size_t w = 0; w < win.size(); ++w) {
      double base = (r == 1) ? std::exp(-std::abs(win[w]) * 0.5) : rng.next_double();
      profile[w] = base;
      tot += base;
    }
    SparseSeq s(n);
    for (std::size_t w = 0; w < win.size(); ++w) {
      CVec b(n);
      for (std::size_t i = 0; i < n; ++i) {
        Cplx phase{1.0, 0.0};
        if (r >= 3) phase = std::polar(1.0, rng.uniform(0.0, kTwoPi) * 0.2);
        b[i] = target[i] * (profile[w] / tot) * phase;
      }
      s.set(win[w], b);
    }
    starts.push_back(prob.variables_from_seq(s));
  }
  for (const SparseSeq& s : extra_starts) starts.push_back(prob.variables_from_seq(s));

  double best_val = unit;  // delta decomposition is feasible
  double best_hi = delta_hi;
  SparseSeq best_cert = delta;
  long iters = 0;
  bool converged = false;
  auto consider = [&](const SparseSeq& cert, bool conv) {
    double hi = 0.0;
    double val = exact_max_objective(ptrs, cert, &hi);
    if (val < best_val) {
      best_val = val;
      best_hi = hi;
      best_cert = cert;
      converged = conv;
    }
  };
  // descent may drift off a supplied certificate, so score the starts as-is
  // (only when they are feasible for this window)
  for (const SparseSeq& s : extra_starts)
    if (s.min_index() >= -window && s.max_index() <= window &&
        max_abs(sub(s.sum_blocks(), target)) <= 1e-9 * (1.0 + max_abs(target)))
      consider(s, true);
  for (const auto& s0 : starts) {
    DescentResult dr = descend(prob, s0, schedule, unit, cfg.rel_tol, per_restart);
    iters += dr.iterations;
    consider(prob.seq_from_variables(dr.v), dr.converged);
  }
  sol.value = best_val;
  sol.certificate = best_cert;
  sol.iterations = iters;
  sol.converged = converged || best_val <= unit;
  sol.err_lo = 0.0;
  sol.err_hi = best_hi;
  return sol;
}

InterpSolution minimize_product(const std::vector<std::vector<StructTerm>>& term_groups,
                                double theta, const CVec& target, int window,
                                const SolverConfig& cfg,
                                const std::vector<SparseSeq>& extra_starts) {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("minimize_product: theta must lie in (0,1)");
  std::vector<StructTerm> flat;
  for (const auto& g : term_groups)
    for (const auto& t : g) flat.push_back(t);
  if (flat.size() != 2)
    throw std::invalid_argument("minimize_product: exactly two norm objectives expected");
  const std::size_t n = target.size();
  InterpSolution sol;
  if (is_zero(target)) {
    sol.certificate = SparseSeq(n);
    sol.converged = true;
    return sol;
  }
  auto win = make_window(window);
  TermEvaluator e0(flat[0], win, cfg.solver_quad_nodes, {});
  TermEvaluator e1(flat[1], win, cfg.solver_quad_nodes, {});
  std::vector<const TermEvaluator*> ptrs{&e0, &e1};
  MaxProblem prob(ptrs, flat, target, win, /*log_product=*/true, theta);

  auto product_of = [&](const SparseSeq& s, double* hi_out) {
    NormEstimate a = e0.exact(s), b = e1.exact(s);
    if (hi_out) *hi_out = std::pow(a.hi, 1.0 - theta) * std::pow(b.hi, theta);
    return std::pow(a.value, 1.0 - theta) * std::pow(b.value, theta);
  };

  SparseSeq delta = SparseSeq::delta(0, target);
  double delta_hi = 0.0;
  double unit = product_of(delta, &delta_hi);
  double scale_unit = std::max(unit, 1e-300);
  auto schedule = detail::default_schedule(scale_unit, cfg.rel_tol, cfg.smoothing_schedule);

  const int restarts = std::max(1, cfg.restarts);
  long per_restart = std::max<long>(50, cfg.max_iters / (restarts + static_cast<int>(extra_starts.size())));

  Rng rng(cfg.seed ^ 0x5bf03635ull);
  std::vector<std::vector<double>> starts;
  starts.push_back(std::vector<double>(prob.size(), 0.0));
  for (int r = 1; r < restarts; ++r) {
    std::vector<double> profile(win.size());
    double tot = 0.0;
    for (std::size_t w = 0; w < win.size(); ++w) {
      profile[w] = (r == 1) ? std::exp(-std::abs(win[w]) * 0.5) : rng.next_double();
      tot += profile[w];
    }
    SparseSeq s(n);
    for (std::size_t w = 0; w < win.size(); ++w) {
      CVec b(n);
      for (std::size_t i = 0; i < n; ++i) b[i] = target[i] * (profile[w] / tot);
      s.set(win[w], b);
    }
    starts.push_back(prob.variables_from_seq(s));
  }
  for (const SparseSeq& s : extra_starts) starts.push_back(prob.variables_from_seq(s));

  double best_val = unit, best_hi = delta_hi;
  SparseSeq best_cert = delta;
  long iters = 0;
  bool converged = false;
  auto consider = [&](const SparseSeq& cert, bool conv) {
    double hi = 0.0;
    double val = product_of(cert, &hi);
    if (val < best_val) {
      best_val = val;
      best_hi = hi;
      best_cert = cert;
      converged = conv;
    }
  };
  for (const SparseSeq& s : extra_starts)
    if (s.min_index() >= -window && s.max_index() <= window &&
        max_abs(sub(s.sum_blocks(), target)) <= 1e-9 * (1.0 + max_abs(target)))
      consider(s, true);
  for (const auto& s0 : starts) {
    DescentResult dr = descend(prob, s0, schedule, 1.0, cfg.rel_tol, per_restart);
    iters += dr.iterations;
    consider(prob.seq_from_variables(dr.v), dr.converged);
  }
  InterpSolution out;
  out.value = best_val;
  out.certificate = best_cert;
  out.iterations = iters;
  out.converged = converged || best_val <= unit;
  out.err_hi = best_hi;
  return out;
}

InterpSolution minimize_sum(const StructTerm& term0, const StructTerm& term1, const CVec& target,
                            int window, const SolverConfig& cfg, const TailContribution& tail0,
                            const TailContribution& tail1) {
  if (window < 0) throw std::invalid_argument("minimize_sum: window must be >= 0");
  const std::size_t n = target.size();
  InterpSolution sol;
  if (is_zero(target)) {
    sol.certificate = SparseSeq(n);
    sol.certificate2 = SparseSeq(n);
    sol.converged = true;
    return sol;
  }
  auto win = make_window(window);
  TermEvaluator e0(term0, win, cfg.solver_quad_nodes, tail0);
  TermEvaluator e1(term1, win, cfg.solver_quad_nodes, tail1);
  SumProblem prob(&e0, &e1, term0, term1, std::vector<CVec>(win.size(), target), win);

  auto value_of = [&](const std::vector<double>& v, double* hi_out, SparseSeq* c0, SparseSeq* c1) {
    std::vector<double> side0(v.size()), side1(v.size());
    prob.split(v, side0, side1);
    SparseSeq s0 = e0.to_seq(side0), s1 = e1.to_seq(side1);
    NormEstimate a = e0.exact(s0), b = e1.exact(s1);
    if (hi_out) *hi_out = a.hi + b.hi;
    if (c0) *c0 = s0;
    if (c1) *c1 = s1;
    return a.value + b.value;
  };

  // Canonical start: step split (side 0 takes everything past the pivot).
  auto step_start = [&](int pivot) {
    std::vector<double> blocks(prob.size(), 0.0);
    for (std::size_t w = 0; w < win.size(); ++w)
      if (win[w] > pivot)
        for (std::size_t i = 0; i < n; ++i) {
          blocks[2 * (w * n + i)] = target[i].real();
          blocks[2 * (w * n + i) + 1] = target[i].imag();
        }
    return prob.variables_from_blocks(blocks);
  };

  std::vector<double> s0 = step_start(0);
  double unit_hi = 0.0;
  double unit = value_of(s0, &unit_hi, nullptr, nullptr);
  if (unit == 0.0) unit = 1.0;
  auto schedule = detail::default_schedule(unit, cfg.rel_tol, cfg.smoothing_schedule);

  const int restarts = std::max(1, cfg.restarts);
  long per_restart = std::max<long>(50, cfg.max_iters / restarts);

  Rng rng(cfg.seed ^ 0x9cc2f7ull);
  std::vector<std::vector<double>> starts{s0};
  if (restarts > 1) starts.push_back(step_start(-1));
  for (int r = 2; r < restarts; ++r) {
    std::vector<double> blocks(prob.size(), 0.0);
    for (std::size_t w = 0; w < win.size(); ++w) {
      double frac = 1.0 / (1.0 + std::exp(-(win[w] + rng.uniform(-1.5, 1.5))));
      for (std::size_t i = 0; i < n; ++i) {
        blocks[2 * (w * n + i)] = target[i].real() * frac;
        blocks[2 * (w * n + i) + 1] = target[i].imag() * frac;
      }
    }
    starts.push_back(prob.variables_from_blocks(blocks));
  }

  double best_val = unit;
  std::vector<double> best_v = s0;
  (void)unit_hi;
  long iters = 0;
  bool converged = false;
  for (const auto& v0 : starts) {
    DescentResult dr = descend(prob, v0, schedule, unit, cfg.rel_tol, per_restart);
    iters += dr.iterations;
    double hi = 0.0;
    double val = value_of(dr.v, &hi, nullptr, nullptr);
    if (val <= best_val) {
      best_val = val;
      best_v = dr.v;
      converged = dr.converged;
    }
  }
  double hi = 0.0;
  SparseSeq c0(n), c1(n);
  sol.value = value_of(best_v, &hi, &c0, &c1);
  sol.certificate = c0;
  sol.certificate2 = c1;
  sol.iterations = iters;
  sol.converged = converged || sol.value <= unit;
  sol.err_hi = hi;
  return sol;
}

InterpSolution minimize_sum_seq(const StructTerm& term0, const StructTerm& term1,
                                const SparseSeq& target, const SolverConfig& cfg) {
  const std::size_t n = target.dim();
  InterpSolution sol;
  if (target.empty()) {
    sol.certificate = SparseSeq(n);
    sol.certificate2 = SparseSeq(n);
    sol.converged = true;
    return sol;
  }
  std::vector<int> win;
  for (int k = target.min_index(); k <= target.max_index(); ++k) win.push_back(k);
  TermEvaluator e0(term0, win, cfg.solver_quad_nodes, {});
  TermEvaluator e1(term1, win, cfg.solver_quad_nodes, {});
  std::vector<CVec> targets;
  for (int k : win) targets.push_back(target.block(k));
  SumProblem prob(&e0, &e1, term0, term1, targets, win);

  auto value_of = [&](const std::vector<double>& v, double* hi_out, SparseSeq* c0, SparseSeq* c1) {
    std::vector<double> side0(v.size()), side1(v.size());
    prob.split(v, side0, side1);
    SparseSeq s0 = e0.to_seq(side0), s1 = e1.to_seq(side1);
    NormEstimate a = e0.exact(s0), b = e1.exact(s1);
    if (hi_out) *hi_out = a.hi + b.hi;
    if (c0) *c0 = s0;
    if (c1) *c1 = s1;
    return a.value + b.value;
  };

  // Starts: all on side 0 / all on side 1 / index-sigmoid mixtures.
  Rng rng(cfg.seed ^ 0x77aa01ull);
  std::vector<std::vector<double>> starts;
  {
    std::vector<double> blocks(prob.size(), 0.0);
    starts.push_back(prob.variables_from_blocks(blocks));  // all on side 1
    for (std::size_t w = 0; w < win.size(); ++w)
      for (std::size_t i = 0; i < n; ++i) {
        blocks[2 * (w * n + i)] = targets[w][i].real();
        blocks[2 * (w * n + i) + 1] = targets[w][i].imag();
      }
    starts.push_back(prob.variables_from_blocks(blocks));  // all on side 0
  }
  for (int r = 2; r < std::max(2, cfg.restarts); ++r) {
    std::vector<double> blocks(prob.size(), 0.0);
    for (std::size_t w = 0; w < win.size(); ++w) {
      double frac = 1.0 / (1.0 + std::exp(-(win[w] + rng.uniform(-2.0, 2.0))));
      for (std::size_t i = 0; i < n; ++i) {
        blocks[2 * (w * n + i)] = targets[w][i].real() * frac;
        blocks[2 * (w * n + i) + 1] = targets[w][i].imag() * frac;
      }
    }
    starts.push_back(prob.variables_from_blocks(blocks));
  }

  double unit_hi = 0.0;
  double unit = value_of(starts[1], &unit_hi, nullptr, nullptr);
  if (unit == 0.0) unit = 1.0;
  auto schedule = detail::default_schedule(unit, cfg.rel_tol, cfg.smoothing_schedule);
  long per_restart = std::max<long>(50, cfg.max_iters / static_cast<long>(starts.size()));

  double best_val = kInf;
  std::vector<double> best_v;
  long iters = 0;
  bool converged = false;
  for (const auto& v0 : starts) {
    DescentResult dr = descend(prob, v0, schedule, unit, cfg.rel_tol, per_restart);
    iters += dr.iterations;
    double hi = 0.0;
    double val = value_of(dr.v, &hi, nullptr, nullptr);
    if (val < best_val) {
      best_val = val;
      best_v = dr.v;
      converged = dr.converged;
    }
  }
  double hi = 0.0;
  SparseSeq c0(n), c1(n);
  sol.value = value_of(best_v, &hi, &c0, &c1);
  sol.certificate = c0;
  sol.certificate2 = c1;
  sol.iterations = iters;
  sol.converged = converged;
  sol.err_hi = hi;
  return sol;
}

InterpSolution sum_norm_pair(const NormedSpace& space0, const NormedSpace& space1, const CVec& v,
                             const SolverConfig& cfg) {
  StructTerm t0{SeqStructSpec::lp(1.0), space0, 2.718281828459045235, 0.0};
  StructTerm t1{SeqStructSpec::lp(1.0), space1, 2.718281828459045235, 0.0};
  InterpSolution s = minimize_sum(t0, t1, v, 0, cfg);
  return s;
}

}  // namespace ssi
