#include "ssi/seq_struct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ssi/rng.hpp"

namespace ssi {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;
constexpr double kZ99 = 2.5758293035489004;  // 99% two-sided normal quantile

std::vector<std::pair<int, CVec>> support_of(const SparseSeq& s) {
  return {s.entries().begin(), s.entries().end()};
}

double lp_mean(double p, const std::vector<double>& vals) {
  // (mean of v^p)^{1/p}, overflow-guarded.
  double m = 0.0;
  for (double v : vals) m = std::max(m, v);
  if (m == 0.0) return 0.0;
  double acc = 0.0;
  for (double v : vals) acc += std::pow(v / m, p);
  return m * std::pow(acc / static_cast<double>(vals.size()), 1.0 / p);
}

/// Batch-means 99% CI around an L^p-mean estimator.
NormEstimate mc_estimate(double p, const std::vector<double>& norms) {
  const int blocks = 20;
  const std::size_t n = norms.size();
  double value = lp_mean(p, norms);
  if (n < static_cast<std::size_t>(2 * blocks)) return {value, 0.0, 2.0 * value};
  std::vector<double> block_vals;
  const std::size_t per = n / blocks;
  for (int b = 0; b < blocks; ++b) {
    std::vector<double> chunk(norms.begin() + b * per, norms.begin() + (b + 1) * per);
    block_vals.push_back(lp_mean(p, chunk));
  }
  double mean = 0.0;
  for (double v : block_vals) mean += v;
  mean /= blocks;
  double var = 0.0;
  for (double v : block_vals) var += (v - mean) * (v - mean);
  var /= (blocks - 1);
  double se = std::sqrt(var / blocks);
  double half = kZ99 * se;
  return {value, std::max(0.0, value - half), value + half};
}

NormEstimate lp_struct_norm(double p, const NormedSpace& base, const SparseSeq& s) {
  std::vector<double> block_norms;
  block_norms.reserve(s.support_size());
  for (const auto& [k, b] : s.entries()) block_norms.push_back(base.norm(b));
  return NormEstimate::exact(lp_aggregate(p, block_norms));
}

/// ‖Σ_k e^{ikt} x_k‖_X on a uniform torus grid.
std::vector<double> torus_profile(const NormedSpace& base, const SparseSeq& s, int nodes) {
  std::vector<double> vals(nodes);
  const auto sup = support_of(s);
  CVec f(base.dim());
  for (int q = 0; q < nodes; ++q) {
    double t = kTwoPi * q / nodes;
    std::fill(f.begin(), f.end(), Cplx{0, 0});
    for (const auto& [k, b] : sup) {
      Cplx e = std::polar(1.0, k * t);
      for (std::size_t i = 0; i < f.size(); ++i) f[i] += e * b[i];
    }
    vals[q] = base.norm(f);
  }
  return vals;
}

int auto_nodes(const SeqStructSpec& spec, const SparseSeq& s) {
  int width = std::max(1, s.support_width());
  int nodes = spec.quad_nodes > 0 ? spec.quad_nodes : 64 * width;
  if (nodes < 4 * width)
    throw std::invalid_argument("seq_norm: quadrature budget violated (need >= 4 x support width)");
  return nodes;
}

double trapezoid_lp(double p, const std::vector<double>& profile) {
  // Uniform grid on the full period: trapezoid = plain average.
  double m = 0.0;
  for (double v : profile) m = std::max(m, v);
  if (m == 0.0) return 0.0;
  double acc = 0.0;
  for (double v : profile) acc += std::pow(v / m, p);
  return m * std::pow(acc / static_cast<double>(profile.size()), 1.0 / p);
}

NormEstimate fourier_lp_norm(const SeqStructSpec& spec, const NormedSpace& base,
                             const SparseSeq& s) {
  if (s.empty()) return NormEstimate::exact(0.0);
  const int nodes = auto_nodes(spec, s);
  const int degree = std::max(std::abs(s.min_index()), std::abs(s.max_index()));
  const double p = spec.p;

  // For even integer p the integrand ‖f‖ᵖ (weighted ℓ² base power sums) is a
  // trigonometric polynomial of degree ≤ p·degree: trapezoid is exact once
  // nodes > p·degree. Elsewhere fall back to Richardson on a doubled grid.
  bool p_even_int = (p == 2.0 || p == 4.0 || p == 6.0 || p == 8.0) && base.p() == 2.0;
  if (p_even_int && nodes > static_cast<int>(p) * degree) {
    double v = trapezoid_lp(p, torus_profile(base, s, nodes));
    return NormEstimate::exact(v);
  }
  double v1 = trapezoid_lp(p, torus_profile(base, s, nodes));
  double v2 = trapezoid_lp(p, torus_profile(base, s, 2 * nodes));
  double err = 2.0 * std::abs(v2 - v1) + 1e-14 * v2;
  return {v2, v2 - err, v2 + err};
}

NormEstimate fourier_c_norm(const SeqStructSpec& spec, const NormedSpace& base,
                            const SparseSeq& s) {
  if (s.empty()) return NormEstimate::exact(0.0);
  const int nodes = auto_nodes(spec, s);
  auto profile = torus_profile(base, s, 2 * nodes);
  double m = 0.0;
  int arg = 0;
  for (int q = 0; q < static_cast<int>(profile.size()); ++q)
    if (profile[q] > m) m = profile[q], arg = q;
  // Local golden-section refinement around the best grid node.
  const auto eval = [&](double t) {
    CVec f(base.dim(), Cplx{0, 0});
    for (const auto& [k, b] : s.entries()) {
      Cplx e = std::polar(1.0, k * t);
      for (std::size_t i = 0; i < f.size(); ++i) f[i] += e * b[i];
    }
    return base.norm(f);
  };
  double h = kTwoPi / static_cast<double>(profile.size());
  double a = (arg - 1) * h, b = (arg + 1) * h;
  const double gr = 0.6180339887498949;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = eval(x1), f2 = eval(x2);
  for (int it = 0; it < 40; ++it) {
    if (f1 < f2) {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + gr * (b - a); f2 = eval(x2);
    } else {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - gr * (b - a); f1 = eval(x1);
    }
  }
  double v = std::max({m, f1, f2});
  // Grid sup underestimates the true sup by O((d·h)²) for a degree-d profile.
  int degree = std::max(std::abs(s.min_index()), std::abs(s.max_index()));
  double err = std::min(1.0, degree * degree * h * h) * v + 1e-14 * v;
  return {v, v, v + err};
}

NormEstimate rademacher_exact_norm(const SeqStructSpec& spec, const NormedSpace& base,
                                   const SparseSeq& s) {
  const auto sup = support_of(s);
  const std::size_t m = sup.size();
  if (m == 0) return NormEstimate::exact(0.0);
  if ((std::size_t{1} << m) > kRademacherEnumLimit)
    throw std::invalid_argument("seq_norm: Rademacher enumeration budget exceeded");
  // Sign symmetry σ ↔ −σ: pin the first sign to +1.
  const std::size_t patterns = std::size_t{1} << (m - 1);
  std::vector<double> norms;
  norms.reserve(patterns);
  CVec acc(base.dim());
  for (std::size_t bits = 0; bits < patterns; ++bits) {
    std::fill(acc.begin(), acc.end(), Cplx{0, 0});
    for (std::size_t j = 0; j < m; ++j) {
      double sgn = (j == 0) ? 1.0 : ((bits >> (j - 1)) & 1u ? -1.0 : 1.0);
      const CVec& b = sup[j].second;
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += sgn * b[i];
    }
    norms.push_back(base.norm(acc));
  }
  return NormEstimate::exact(lp_mean(spec.p, norms));
}

NormEstimate random_sum_mc_norm(const SeqStructSpec& spec, const NormedSpace& base,
                                const SparseSeq& s, bool gaussian_weights) {
  const auto sup = support_of(s);
  if (sup.empty()) return NormEstimate::exact(0.0);
  // Gaussian weights are moment-normalized so that single-block sequences
  // reproduce the base norm for every p, not just p = 2.
  const double wnorm = gaussian_weights ? 1.0 / gaussian_lp_moment(spec.p) : 1.0;
  std::vector<double> norms(spec.samples);
  CVec acc(base.dim());
  for (int ms = 0; ms < spec.samples; ++ms) {
    std::fill(acc.begin(), acc.end(), Cplx{0, 0});
    for (const auto& [k, b] : sup) {
      // Keyed by (seed, sample, absolute index): common random numbers.
      std::uint64_t key = Rng::hash(spec.seed, static_cast<std::uint64_t>(ms),
                                    static_cast<std::uint64_t>(static_cast<std::int64_t>(k)) + 0x8000000000ull);
      double g = wnorm * (gaussian_weights ? keyed_gaussian(key) : static_cast<double>(keyed_sign(key)));
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += g * b[i];
    }
    norms[ms] = base.norm(acc);
  }
  return mc_estimate(spec.p, norms);
}

NormEstimate lattice_lq_norm(const SeqStructSpec& spec, const NormedSpace& base,
                             const SparseSeq& s) {
  if (s.empty()) return NormEstimate::exact(0.0);
  // Coordinatewise Krivine calculus: v_i = (Σ_k |x_{k,i}|^q)^{1/q}.
  CVec v(base.dim(), Cplx{0, 0});
  std::vector<double> col(s.support_size());
  for (std::size_t i = 0; i < base.dim(); ++i) {
    std::size_t j = 0;
    for (const auto& [k, b] : s.entries()) col[j++] = std::abs(b[i]);
    v[i] = lp_aggregate(spec.q, col);
  }
  return NormEstimate::exact(base.norm(v));
}

}  // namespace

SeqStructSpec SeqStructSpec::lp(double p) {
  SeqStructSpec s;
  s.kind = StructKind::Lp;
  s.p = p;
  s.validate();
  return s;
}

SeqStructSpec SeqStructSpec::fourier_lp(double p, int quad_nodes) {
  SeqStructSpec s;
  s.kind = StructKind::FourierLp;
  s.p = p;
  s.quad_nodes = quad_nodes;
  s.validate();
  return s;
}

SeqStructSpec SeqStructSpec::fourier_c(int quad_nodes) {
  SeqStructSpec s;
  s.kind = StructKind::FourierC;
  s.quad_nodes = quad_nodes;
  s.validate();
  return s;
}

SeqStructSpec SeqStructSpec::rademacher(double p) {
  SeqStructSpec s;
  s.kind = StructKind::Rademacher;
  s.p = p;
  s.mode = RademacherMode::Exact;
  s.validate();
  return s;
}

SeqStructSpec SeqStructSpec::rademacher_mc(double p, int samples, std::uint64_t seed) {
  SeqStructSpec s;
  s.kind = StructKind::Rademacher;
  s.p = p;
  s.mode = RademacherMode::MonteCarlo;
  s.samples = samples;
  s.seed = seed;
  s.validate();
  return s;
}

SeqStructSpec SeqStructSpec::gaussian(double p, int samples, std::uint64_t seed) {
  SeqStructSpec s;
  s.kind = StructKind::Gaussian;
  s.p = p;
  s.samples = samples;
  s.seed = seed;
  s.validate();
  return s;
}

SeqStructSpec SeqStructSpec::lattice_lq(double q) {
  SeqStructSpec s;
  s.kind = StructKind::LatticeLq;
  s.q = q;
  s.validate();
  return s;
}

void SeqStructSpec::validate() const {
  switch (kind) {
    case StructKind::Lp:
      if (!(p >= 1.0)) throw std::invalid_argument("Lp structure: p must be in [1, inf]");
      break;
    case StructKind::FourierLp:
      if (!(p >= 1.0) || p == kInf)
        throw std::invalid_argument("FourierLp structure: p must be finite, >= 1");
      break;
    case StructKind::FourierC:
      break;
    case StructKind::Rademacher:
    case StructKind::Gaussian:
      if (!(p >= 1.0) || p == kInf)
        throw std::invalid_argument("Rademacher/Gaussian structure: p must be finite, >= 1");
      if (kind == StructKind::Gaussian || mode == RademacherMode::MonteCarlo)
        if (samples < 40) throw std::invalid_argument("Monte Carlo structure: too few samples");
      break;
    case StructKind::LatticeLq:
      if (!(q >= 1.0)) throw std::invalid_argument("LatticeLq structure: q must be in [1, inf]");
      break;
  }
}

std::string SeqStructSpec::name() const {
  auto num = [](double v) {
    if (v == kInf) return std::string("inf");
    std::string s = std::to_string(v);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  };
  switch (kind) {
    case StructKind::Lp: return "lp(" + num(p) + ")";
    case StructKind::FourierLp: return "fourier_lp(" + num(p) + ")";
    case StructKind::FourierC: return "fourier_c";
    case StructKind::Rademacher:
      return mode == RademacherMode::Exact ? "rademacher(" + num(p) + ")"
                                           : "rademacher_mc(" + num(p) + ")";
    case StructKind::Gaussian: return "gaussian(" + num(p) + ")";
    case StructKind::LatticeLq: return "lattice_lq(" + num(q) + ")";
  }
  return "?";
}

NormEstimate seq_norm(const SeqStructSpec& spec, const NormedSpace& base, const SparseSeq& s) {
  spec.validate();
  if (s.dim() != base.dim())
    throw std::invalid_argument("seq_norm: sequence/base dimension mismatch");
  switch (spec.kind) {
    case StructKind::Lp: return lp_struct_norm(spec.p, base, s);
    case StructKind::FourierLp: return fourier_lp_norm(spec, base, s);
    case StructKind::FourierC: return fourier_c_norm(spec, base, s);
    case StructKind::Rademacher:
      if (spec.mode == RademacherMode::Exact &&
          (std::size_t{1} << std::min<std::size_t>(s.support_size(), 63)) <= kRademacherEnumLimit)
        return rademacher_exact_norm(spec, base, s);
      return random_sum_mc_norm(spec, base, s, /*gaussian_weights=*/false);
    case StructKind::Gaussian: return random_sum_mc_norm(spec, base, s, /*gaussian_weights=*/true);
    case StructKind::LatticeLq: return lattice_lq_norm(spec, base, s);
  }
  throw std::logic_error("seq_norm: unreachable");
}

SparseSeq apply_weight(const WeightedEval& w, const SparseSeq& s) {
  if (!(w.base > 1.0)) throw std::invalid_argument("weighted eval: base must exceed 1");
  const double lnb = std::log(w.base);
  for (const auto& [k, b] : s.entries()) {
    double lo = w.exponent * k * lnb;
    if (lo > 690.0) throw std::overflow_error("weighted eval: weight factor exceeds 1e300");
  }
  return s.rescaled([&](int k) { return Cplx(std::exp(w.exponent * k * lnb), 0.0); });
}

NormEstimate weighted_seq_norm(const SeqStructSpec& spec, const NormedSpace& base,
                               const WeightedEval& w, const SparseSeq& s) {
  return seq_norm(spec, base, apply_weight(w, s));
}

}  // namespace ssi
