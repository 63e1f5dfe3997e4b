#include "ssi/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ssi/constants.hpp"
#include "ssi/detail/descent.hpp"
#include "ssi/rng.hpp"

namespace ssi {

namespace {

/// Certified lower bound for ‖v‖_{X₀+X₁} via dual vectors:
/// |⟨v,x*⟩| ≤ ‖v‖_{X₀+X₁} · max(‖x*‖₀*, ‖x*‖₁*).
double sum_norm_lower(const Couple& c, const CVec& v) {
  auto value = [&](const CVec& xs) {
    double d = std::max(c.space0.dual_norm(xs), c.space1.dual_norm(xs));
    return d > 0 ? std::abs(inner(v, xs)) / d : 0.0;
  };
  double best = value(v);
  CVec sign(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double m = std::abs(v[i]);
    sign[i] = m > 0 ? v[i] / m : Cplx{0, 0};
  }
  best = std::max(best, value(sign));
  return best;
}

double tail_factor(double ratio, int window, double p) {
  // (Σ_{k>N} ratio^{kp})^{1/p} for ratio < 1; sup for p = ∞.
  double r = std::pow(ratio, window + 1);
  if (p == kInf) return r;
  return r / std::pow(1.0 - std::pow(ratio, p), 1.0 / p);
}

}  // namespace

void InterpProblem::validate() const {
  couple.validate();
  struct0.validate();
  struct1.validate();
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("InterpProblem: theta must lie in (0,1)");
  if (!(base > 1.0)) throw std::invalid_argument("InterpProblem: base must exceed 1");
  if (window < 1) throw std::invalid_argument("InterpProblem: window must be >= 1");
}

std::vector<std::vector<StructTerm>> InterpProblem::side_terms() const {
  return {{StructTerm{struct0, couple.space0, base, -theta}},
          {StructTerm{struct1, couple.space1, base, 1.0 - theta}}};
}

InterpSolution sum_norm(const Couple& couple, const CVec& v, const SolverConfig& cfg) {
  couple.validate();
  if (v.size() != couple.dim()) throw std::invalid_argument("sum_norm: dimension mismatch");
  InterpSolution s = sum_norm_pair(couple.space0, couple.space1, v, cfg);
  s.lower_hint = sum_norm_lower(couple, v);
  s.err_lo = std::min(s.lower_hint, s.value);
  return s;
}

InterpSolution interp_norm(const InterpProblem& prob, const CVec& x) {
  prob.validate();
  if (x.size() != prob.couple.dim()) throw std::invalid_argument("interp_norm: dimension mismatch");
  auto terms = prob.side_terms();
  InterpSolution sol = minimize_max(terms, x, prob.window, prob.solver);
  if (prob.with_lower_hint && !is_zero(x)) {
    // ‖x‖_{X₀+X₁} ≤ C_θ(b)·‖x‖_θ with the geometric-series constant.
    sol.lower_hint =
        sum_norm_lower(prob.couple, x) / constants::geometric_sum(prob.theta, prob.base);
    sol.err_lo = std::min(sol.lower_hint, sol.value);
  }
  if (prob.check_window && !is_zero(x)) {
    InterpProblem wide = prob;
    wide.check_window = false;
    wide.with_lower_hint = false;
    wide.window = 2 * prob.window;
    InterpSolution ws = minimize_max(wide.side_terms(), x, wide.window, wide.solver);
    if (sol.value > 0 && std::abs(ws.value - sol.value) >= 0.01 * sol.value)
      sol.window_warning = true;
    if (ws.value < sol.value) {
      ws.lower_hint = sol.lower_hint;
      ws.err_lo = sol.err_lo;
      ws.window_warning = sol.window_warning;
      sol = ws;
    }
  }
  return sol;
}

InterpSolution logconvex_norm(const InterpProblem& prob, const CVec& x) {
  prob.validate();
  if (x.size() != prob.couple.dim())
    throw std::invalid_argument("logconvex_norm: dimension mismatch");
  auto terms = prob.side_terms();
  // Seed with the max-form certificate so value ≤ interp norm holds hard.
  InterpSolution seed = minimize_max(terms, x, prob.window, prob.solver);
  return minimize_product(terms, prob.theta, x, prob.window, prob.solver, {seed.certificate});
}

InterpSolution mean_norm(const InterpProblem& prob, const CVec& x) {
  prob.validate();
  if (x.size() != prob.couple.dim()) throw std::invalid_argument("mean_norm: dimension mismatch");
  auto supported = [](const SeqStructSpec& s) {
    return s.kind == StructKind::Lp || s.kind == StructKind::LatticeLq;
  };
  if (!supported(prob.struct0) || !supported(prob.struct1))
    throw std::invalid_argument(
        "mean_norm: unsupported structure (geometric tails are closed-form for Lp/LatticeLq only)");

  StructTerm t0{prob.struct0, prob.couple.space0, prob.base, -prob.theta};
  StructTerm t1{prob.struct1, prob.couple.space1, prob.base, 1.0 - prob.theta};

  // Pinned tails: side 0 equals x for k > N, side 1 equals x for k < −N; both
  // decay geometrically with ratio b^{−θ} and b^{−(1−θ)} respectively.
  auto tail_for = [&](const SeqStructSpec& spec, const NormedSpace& sp, double ratio) {
    TailContribution tc;
    if (spec.kind == StructKind::Lp) {
      tc.scalar_terms = {sp.norm(x) * tail_factor(ratio, prob.window, spec.p)};
    } else {
      double g = tail_factor(ratio, prob.window, spec.q);
      tc.coord_mags.resize(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) tc.coord_mags[i] = std::abs(x[i]) * g;
    }
    return tc;
  };
  TailContribution tail0 =
      tail_for(prob.struct0, prob.couple.space0, std::pow(prob.base, -prob.theta));
  TailContribution tail1 =
      tail_for(prob.struct1, prob.couple.space1, std::pow(prob.base, -(1.0 - prob.theta)));
  return minimize_sum(t0, t1, x, prob.window, prob.solver, tail0, tail1);
}

InterpSolution k_functional(const Couple& couple, double t, const CVec& x,
                            const SolverConfig& cfg) {
  if (!(t > 0)) throw std::invalid_argument("k_functional: t must be positive");
  couple.validate();
  Couple scaled{couple.space0, couple.space1.scaled(t)};
  InterpSolution s = sum_norm_pair(scaled.space0, scaled.space1, x, cfg);
  s.lower_hint = sum_norm_lower(scaled, x);
  s.err_lo = std::min(s.lower_hint, s.value);
  return s;
}

double j_functional(const Couple& couple, double t, const CVec& x) {
  if (!(t > 0)) throw std::invalid_argument("j_functional: t must be positive");
  return std::max(couple.space0.norm(x), t * couple.space1.norm(x));
}

NormEstimate discrete_real_norm(const Couple& couple, double theta, double p, const CVec& x,
                                int window, double base, const SolverConfig& cfg) {
  couple.validate();
  if (!(theta > 0 && theta < 1)) throw std::invalid_argument("discrete_real_norm: bad theta");
  if (is_zero(x)) return NormEstimate::exact(0.0);
  std::vector<double> vals;
  for (int k = -window; k <= window; ++k) {
    double t = std::pow(base, k);
    vals.push_back(std::pow(base, -theta * k) * k_functional(couple, t, x, cfg).value);
  }
  double trunc = lp_aggregate(p, vals);
  // Omitted tails only add: k > W has K(bᵏ,x) ≤ ‖x‖₀ and k < −W has
  // K(bᵏ,x) ≤ bᵏ‖x‖₁, both summing geometrically.
  double up_hi = couple.space0.norm(x) * tail_factor(std::pow(base, -theta), window, p);
  double dn_hi = couple.space1.norm(x) * tail_factor(std::pow(base, -(1.0 - theta)), window, p);
  return {trunc, trunc, lp_aggregate(p, {trunc, up_hi, dn_hi})};
}

CVec AnalyticView::eval_at(Cplx z) const {
  CVec out = zeros(seq_.dim());
  const double lnb = std::log(base_);
  for (const auto& [k, b] : seq_.entries()) {
    Cplx f = std::exp(Cplx(static_cast<double>(k) * lnb, 0.0) * (z - theta_));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += f * b[i];
  }
  return out;
}

SparseSeq AnalyticView::boundary_coeffs(int j) const {
  return apply_weight({base_, static_cast<double>(j) - theta_}, seq_);
}

FiniteRepResult finite_rep(const InterpProblem& prob, const CVec& x, double slack) {
  prob.validate();
  if (!(slack > 1.0)) throw std::invalid_argument("finite_rep: slack must exceed 1");
  if (prob.struct0.monte_carlo() || prob.struct1.monte_carlo())
    throw std::invalid_argument("finite_rep: Monte Carlo structures are not supported");
  FiniteRepResult res;
  res.constant = constants::finite_rep(prob.theta, prob.base);
  if (is_zero(x)) {
    res.decomposition = SparseSeq(prob.couple.dim());
    return res;
  }
  InterpProblem p = prob;
  p.check_window = false;
  p.with_lower_hint = false;
  InterpSolution sol = interp_norm(p, x);
  const SparseSeq& y = sol.certificate;
  const double v = sol.value;

  // n-threshold rule of the construction: n+1 ≥ max_j ‖x‖_{X_j} / ‖x‖_θ.
  double need = std::max(prob.couple.space0.norm(x), prob.couple.space1.norm(x)) / v;
  int n = static_cast<int>(std::ceil(need));

  SparseSeq w = cesaro(n, y);
  const double inv = 1.0 / (n + 1.0);
  for (int m = 0; m <= n; ++m) {
    CVec plus = zeros(x.size()), minus = zeros(x.size());
    for (const auto& [k, b] : y.entries()) {
      if (k > m)
        for (std::size_t i = 0; i < plus.size(); ++i) plus[i] += inv * b[i];
      if (k < -m)
        for (std::size_t i = 0; i < minus.size(); ++i) minus[i] += inv * b[i];
    }
    if (!is_zero(plus)) w.set(m, add(w.block(m), plus));
    if (!is_zero(minus)) w.set(-m, add(w.block(-m), minus));
  }
  double r0 =
      weighted_seq_norm(prob.struct0, prob.couple.space0, {prob.base, -prob.theta}, w).value;
  double r1 =
      weighted_seq_norm(prob.struct1, prob.couple.space1, {prob.base, 1.0 - prob.theta}, w).value;
  res.decomposition = w;
  res.norm_ratio = std::max(r0, r1) / v;
  return res;
}

SparseSeq change_base_reindex(const SparseSeq& seq, double a, double b) {
  if (!(a > 1.0) || !(b > 1.0))
    throw std::invalid_argument("change_base_reindex: bases must exceed 1");
  const double delta = std::log(b) / std::log(a);
  if (std::abs(delta - 1.0) < 1e-14) return seq;
  // δ < 1: strictly increasing placement k ↦ ⌊k/δ⌋ (stars elsewhere);
  // δ > 1: ⌊k/δ⌋ is the surjection whose interleaved sections get summed.
  SparseSeq out(seq.dim());
  for (const auto& [k, blk] : seq.entries()) {
    int n = static_cast<int>(std::floor(static_cast<double>(k) / delta));
    out.set(n, add(out.block(n), blk));
  }
  return out;
}

namespace {

/// Log-domain Calderón–Lozanovskii objective over the nonzero coordinates:
/// u_i = e^{τ_i}, |x₁_i| = (|x_i| / u_i^{1−θ})^{1/θ}; the objective
/// (1−θ)·log‖u‖₀ + θ·log‖x₁‖₁ is convex in τ (weighted log-sum-exp).
class CLProblem : public detail::SmoothProblem {
 public:
  CLProblem(const Couple& c, double theta, const CVec& x) : couple_(c), theta_(theta) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (std::abs(x[i]) > 0.0) {
        idx_.push_back(i);
        logx_.push_back(std::log(std::abs(x[i])));
      }
  }

  std::size_t size() const override { return idx_.size(); }
  const std::vector<std::size_t>& active() const { return idx_; }

  /// log of the weighted ℓᵖ norm of e^{t_j}, as a log-sum-exp; the smoothing
  /// temperature doubles as the softened-max width for p = ∞.
  static double log_norm(const NormedSpace& sp, const std::vector<std::size_t>& idx,
                         const std::vector<double>& t, double mu, std::vector<double>* grad,
                         double coeff) {
    const double p = sp.p();
    double m = -kInf;
    std::vector<double> e(idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) {
      e[j] = t[j] + std::log(sp.weights()[idx[j]]);
      m = std::max(m, e[j]);
    }
    const double width = (p == kInf) ? std::max(mu, 1e-9) : 1.0 / p;
    double z = 0.0;
    for (double ev : e) z += std::exp((ev - m) / width);
    double val = m + width * std::log(z);
    if (grad)
      for (std::size_t j = 0; j < idx.size(); ++j)
        (*grad)[j] += coeff * std::exp((e[j] - m) / width) / z;
    return val;
  }

  double eval(const std::vector<double>& tau, double mu,
              std::vector<double>* grad) const override {
    std::vector<double> t1(idx_.size());
    for (std::size_t j = 0; j < idx_.size(); ++j)
      t1[j] = (logx_[j] - (1.0 - theta_) * tau[j]) / theta_;
    std::vector<double> g0, g1;
    if (grad) {
      g0.assign(idx_.size(), 0.0);
      g1.assign(idx_.size(), 0.0);
    }
    double l0 = log_norm(couple_.space0, idx_, tau, mu, grad ? &g0 : nullptr, 1.0);
    double l1 = log_norm(couple_.space1, idx_, t1, mu, grad ? &g1 : nullptr, 1.0);
    if (grad)
      for (std::size_t j = 0; j < idx_.size(); ++j)
        (*grad)[j] += (1.0 - theta_) * (g0[j] - g1[j]);
    return (1.0 - theta_) * l0 + theta_ * l1;
  }

 private:
  Couple couple_;
  double theta_;
  std::vector<std::size_t> idx_;
  std::vector<double> logx_;
};

}  // namespace

InterpSolution calderon_lozanovskii_norm(const Couple& couple, double theta, const CVec& x,
                                         const SolverConfig& cfg) {
  couple.validate();
  if (!(theta > 0 && theta < 1))
    throw std::invalid_argument("calderon_lozanovskii_norm: theta must lie in (0,1)");
  if (x.size() != couple.dim())
    throw std::invalid_argument("calderon_lozanovskii_norm: dimension mismatch");
  InterpSolution sol;
  CLProblem prob(couple, theta, x);
  if (prob.size() == 0) {
    sol.certificate = SparseSeq(x.size());
    sol.converged = true;
    return sol;
  }
  const auto& idx = prob.active();

  auto assemble = [&](const std::vector<double>& tau) {
    CVec x0 = zeros(x.size()), x1 = zeros(x.size());
    for (std::size_t j = 0; j < idx.size(); ++j) {
      double u = std::exp(tau[j]);
      x0[idx[j]] = u;
      x1[idx[j]] = std::pow(std::abs(x[idx[j]]) / std::pow(u, 1.0 - theta), 1.0 / theta);
    }
    return std::make_pair(x0, x1);
  };
  auto value_of = [&](const std::vector<double>& tau) {
    auto [x0, x1] = assemble(tau);
    return std::pow(couple.space0.norm(x0), 1.0 - theta) * std::pow(couple.space1.norm(x1), theta);
  };

  // Start at u = |x| (optimal when the two spaces coincide), plus tilts.
  std::vector<double> tau0(idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) tau0[j] = std::log(std::abs(x[idx[j]]));
  Rng rng(cfg.seed ^ 0xc1a5ull);
  std::vector<std::vector<double>> starts{tau0};
  for (int r = 1; r < std::max(1, cfg.restarts); ++r) {
    auto t = tau0;
    for (double& v : t) v += rng.uniform(-1.0, 1.0);
    starts.push_back(t);
  }

  const std::vector<double> schedule{1e-2, 1e-4, 1e-6, 1e-8};
  double best = kInf;
  std::vector<double> best_tau = tau0;
  long iters = 0;
  bool converged = false;
  for (const auto& s : starts) {
    auto dr = detail::descend(prob, s, schedule, 1.0, cfg.rel_tol,
                              std::max<long>(200, cfg.max_iters / std::max(1, cfg.restarts)));
    iters += dr.iterations;
    double v = value_of(dr.v);
    if (v < best) {
      best = v;
      best_tau = dr.v;
      converged = dr.converged;
    }
  }
  auto [x0, x1] = assemble(best_tau);
  sol.value = best;
  sol.iterations = iters;
  sol.converged = converged;
  // certificate convention: factor x₀ at index 0, factor x₁ at index 1
  SparseSeq cert(x.size());
  cert.set(0, x0);
  cert.set(1, x1);
  sol.certificate = cert;
  sol.err_hi = best;
  return sol;
}

InterpSolution interp_norm_multi(const std::vector<StructTerm>& side0,
                                 const std::vector<StructTerm>& side1, double theta, double base,
                                 int window, const CVec& x, const SolverConfig& cfg,
                                 const std::vector<SparseSeq>& extra_starts) {
  if (!(theta > 0 && theta < 1)) throw std::invalid_argument("interp_norm_multi: bad theta");
  std::vector<std::vector<StructTerm>> groups(2);
  for (StructTerm t : side0) {
    t.weight_base = base;
    t.weight_exponent = -theta;
    groups[0].push_back(t);
  }
  for (StructTerm t : side1) {
    t.weight_base = base;
    t.weight_exponent = 1.0 - theta;
    groups[1].push_back(t);
  }
  return minimize_max(groups, x, window, cfg, extra_starts);
}

}  // namespace ssi
