#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ssi/constants.hpp"
#include "ssi/interp.hpp"
#include "ssi/rng.hpp"

using namespace ssi;

namespace {

const double kE = std::exp(1.0);

CVec cv(std::initializer_list<double> re) {
  CVec v;
  for (double r : re) v.emplace_back(r, 0.0);
  return v;
}

SolverConfig fast_cfg(std::uint64_t seed = 1) {
  SolverConfig c;
  c.max_iters = 6000;
  c.restarts = 2;
  c.seed = seed;
  return c;
}

InterpProblem lp_problem(const Couple& c, double sp0, double sp1, double theta, int window = 6) {
  InterpProblem p;
  p.couple = c;
  p.struct0 = SeqStructSpec::lp(sp0);
  p.struct1 = SeqStructSpec::lp(sp1);
  p.theta = theta;
  p.window = window;
  p.solver = fast_cfg();
  p.check_window = false;
  p.with_lower_hint = true;
  return p;
}

/// Stein–Weiss weight: classical closed form for same-p weighted couples.
std::vector<double> sw_weight(const std::vector<double>& w0, const std::vector<double>& w1,
                              double theta) {
  std::vector<double> w(w0.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] = std::pow(w0[i], 1.0 - theta) * std::pow(w1[i], theta);
  return w;
}

/// Per-coordinate brute force for K(t,·) on diagonal ℓ¹ couples.
double k_oracle_l1(const std::vector<double>& w0, const std::vector<double>& w1, double t,
                   const CVec& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::min(w0[i], t * w1[i]) * std::abs(x[i]);
  return s;
}

/// Brute-force Calderón–Lozanovskii factorization on an n = 2 grid: minimize
/// ‖x₀‖^{1−θ}‖x₁‖^θ over positive u with |x₁| pinned by the binding constraint.
double cl_oracle_grid(const Couple& c, double theta, const CVec& x) {
  double best = kInf;
  auto norm_pair = [&](double u0, double u1) {
    CVec a = {Cplx(u0, 0), Cplx(u1, 0)};
    CVec b = {Cplx(std::pow(std::abs(x[0]) / std::pow(u0, 1 - theta), 1 / theta), 0),
              Cplx(std::pow(std::abs(x[1]) / std::pow(u1, 1 - theta), 1 / theta), 0)};
    return std::pow(c.space0.norm(a), 1 - theta) * std::pow(c.space1.norm(b), theta);
  };
  double c0 = std::abs(x[0]), c1 = std::abs(x[1]), span = 4.0;
  for (int level = 0; level < 5; ++level) {
    int n = 41;
    double b0 = c0, b1 = c1;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double u0 = c0 * std::exp(-span + 2 * span * i / (n - 1));
        double u1 = c1 * std::exp(-span + 2 * span * j / (n - 1));
        double v = norm_pair(u0, u1);
        if (v < best) {
          best = v;
          b0 = u0;
          b1 = u1;
        }
      }
    c0 = b0;
    c1 = b1;
    span *= 2.5 / (n - 1);
  }
  return best;
}

}  // namespace

TEST_CASE("interp_norm: trivial and bracketing examples") {
  Couple c{NormedSpace::weighted_lp(2.0, {1.0, 2.0}), NormedSpace::weighted_lp(1.0, {1.5, 0.7})};
  auto prob = lp_problem(c, 2.0, 2.0, 0.5);

  auto z = interp_norm(prob, zeros(2));
  CHECK(z.value == 0.0);

  CVec x = {Cplx(0.8, 0.3), Cplx(-0.5, 1.1)};
  auto sol = interp_norm(prob, x);
  CHECK(sol.value <= c.intersection_norm(x) * (1 + 1e-9));
  CHECK(sol.value > 0.0);
  CHECK(max_abs(sub(sol.certificate.sum_blocks(), x)) <= 1e-12);

  // geometric-series lower bound (Remark-style): sum ≤ C_θ · interp
  auto sn = sum_norm(c, x, prob.solver);
  double c_theta = constants::geometric_sum(prob.theta, prob.base);
  CHECK(sn.value <= c_theta * sol.value * (1 + 1e-5));
  CHECK(sol.lower_hint <= sol.value * (1 + 1e-9));

  // equal spaces: delta decomposition is optimal, value ≤ ‖x‖
  Couple same{c.space0, c.space0};
  auto ps = lp_problem(same, 1.0, 1.0, 0.3);
  auto se = interp_norm(ps, x);
  CHECK(se.value <= same.space0.norm(x) * (1 + 1e-9));
}

TEST_CASE("interp_norm: Hilbert couple tracks the Stein-Weiss weight") {
  // calibrate the discrete-vs-classical constant at n = 1, then require the
  // same two-sided band at n = 2 and 4
  Rng rng(31);
  const double theta = 0.5;
  double lo = kInf, hi = 0.0;
  {
    std::vector<double> w0{1.7}, w1{0.4};
    Couple c{NormedSpace::weighted_lp(2.0, w0), NormedSpace::weighted_lp(2.0, w1)};
    auto prob = lp_problem(c, 2.0, 2.0, theta, 8);
    auto sw = NormedSpace::weighted_lp(2.0, sw_weight(w0, w1, theta));
    for (int t = 0; t < 6; ++t) {
      CVec x = {Cplx(rng.uniform(-2, 2), rng.uniform(-2, 2))};
      if (std::abs(x[0]) < 0.2) continue;
      double r = interp_norm(prob, x).value / sw.norm(x);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  CHECK(hi / lo <= 1.0 + 1e-4);  // n = 1 ratio is essentially a constant
  for (std::size_t n : {2u, 4u}) {
    std::vector<double> w0(n), w1(n);
    for (std::size_t i = 0; i < n; ++i) {
      w0[i] = std::exp(rng.uniform(-1.5, 1.5));
      w1[i] = std::exp(rng.uniform(-1.5, 1.5));
    }
    Couple c{NormedSpace::weighted_lp(2.0, w0), NormedSpace::weighted_lp(2.0, w1)};
    auto prob = lp_problem(c, 2.0, 2.0, theta, 8);
    auto sw = NormedSpace::weighted_lp(2.0, sw_weight(w0, w1, theta));
    for (int t = 0; t < 4; ++t) {
      CVec x(n);
      for (auto& z : x) z = Cplx(rng.uniform(-2, 2), rng.uniform(-2, 2));
      double r = interp_norm(prob, x).value / sw.norm(x);
      CHECK(r <= hi * 1.02);
      CHECK(r >= lo * 0.98);
    }
  }
}

TEST_CASE("logconvex_norm: ordering and the e^theta constant") {
  Rng rng(7);
  Couple c{NormedSpace::weighted_lp(1.0, {1.0, 3.0}), NormedSpace::weighted_lp(2.0, {2.0, 0.5})};
  for (double theta : {0.25, 0.6}) {
    auto prob = lp_problem(c, 2.0, 1.0, theta);
    CHECK(logconvex_norm(prob, zeros(2)).value == 0.0);
    for (int t = 0; t < 4; ++t) {
      CVec x(2);
      for (auto& z : x) z = Cplx(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5));
      double vi = interp_norm(prob, x).value;
      double vl = logconvex_norm(prob, x).value;
      CHECK(vl <= vi * (1 + 1e-7) + 1e-12);
      CHECK(vi <= std::exp(theta) * vl * (1 + 1e-5) + 1e-12);
    }
  }
}

TEST_CASE("mean_norm: feasible step bound and the equivalence constants") {
  Rng rng(13);
  const double theta = 0.4;
  auto sp = NormedSpace::weighted_lp(2.0, {1.0, 1.3});
  Couple same{sp, sp};
  InterpProblem pinf = lp_problem(same, kInf, kInf, theta, 6);
  CVec x = cv({1.0, 2.0});
  CHECK(mean_norm(pinf, zeros(2)).value == 0.0);
  auto mi = mean_norm(pinf, x);
  CHECK(mi.value <= (1.0 + std::pow(kE, -(1.0 - theta))) * sp.norm(x) * (1 + 1e-6));

  Couple c{NormedSpace::weighted_lp(2.0, {1.0, 2.4}), NormedSpace::weighted_lp(2.0, {1.8, 0.5})};
  for (int t = 0; t < 5; ++t) {
    double th = 0.25 + 0.5 * rng.next_double();
    auto prob = lp_problem(c, 1.5, 3.0, th, 6);
    CVec v(2);
    for (auto& z : v) z = Cplx(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5));
    double vi = interp_norm(prob, v).value;
    double vm = mean_norm(prob, v).value;
    CHECK(vm <= constants::mean_forward(th, kE) * vi * (1 + 1e-5));
    CHECK(vi <= constants::mean_reverse(th, kE) * vm * (1 + 1e-5));
  }

  InterpProblem bad = lp_problem(c, 2.0, 2.0, 0.5);
  bad.struct1 = SeqStructSpec::fourier_lp(2.0);
  CHECK_THROWS_AS(mean_norm(bad, x), std::invalid_argument);
}

TEST_CASE("k and j functionals") {
  std::vector<double> w0{1.0, 5.0}, w1{4.0, 2.0};
  Couple c{NormedSpace::weighted_lp(1.0, w0), NormedSpace::weighted_lp(1.0, w1)};
  auto cfg = fast_cfg();
  CVec x = {Cplx(1.0, 0.2), Cplx(-0.5, 0.4)};

  CHECK(k_functional(c, 0.7, zeros(2), cfg).value == 0.0);
  CHECK(j_functional(c, 0.7, zeros(2)) == 0.0);
  CHECK_THROWS_AS(k_functional(c, -1.0, x, cfg), std::invalid_argument);

  for (double t : {0.3, 1.0, 4.7}) {
    double kv = k_functional(c, t, x, cfg).value;
    CHECK(kv == doctest::Approx(k_oracle_l1(w0, w1, t, x)).epsilon(1e-6));
  }

  // equal spaces: K(t,x) = min(1,t)·‖x‖
  Couple same{c.space0, c.space0};
  for (double t : {0.2, 1.0, 3.0}) {
    double kv = k_functional(same, t, x, cfg).value;
    CHECK(kv == doctest::Approx(std::min(1.0, t) * c.space0.norm(x)).epsilon(1e-6));
    CHECK(j_functional(same, t, x) ==
          doctest::Approx(std::max(1.0, t) * c.space0.norm(x)).epsilon(1e-12));
  }
}

TEST_CASE("discrete_real_norm: self-consistency and mean-method bracket") {
  auto sp = NormedSpace::weighted_lp(2.0, {1.0, 0.8});
  Couple same{sp, sp};
  auto cfg = fast_cfg();
  const double theta = 0.35, p = 2.0;
  CVec x = cv({0.9, -1.4});

  CHECK(discrete_real_norm(same, theta, p, zeros(2), 8, kE, cfg).value == 0.0);

  // equal spaces: K(t,·) = min(1,t)‖·‖, the series collapses to c(θ,p,b)‖x‖
  double expected = 0.0;
  for (int k = -8; k <= 8; ++k)
    expected += std::pow(std::exp(-theta * k) * std::min(1.0, std::exp(k)), p);
  expected = std::pow(expected, 1.0 / p) * sp.norm(x);
  auto est = discrete_real_norm(same, theta, p, x, 8, kE, cfg);
  CHECK(est.value == doctest::Approx(expected).epsilon(1e-5));
  CHECK(est.lo <= est.value);
  CHECK(est.hi >= est.value);

  // cross-check against interp_norm with ℓᵖ structures via the mean-method
  // constants: discreteK ≤ mean ≤ 2·discreteK and the criterion-6 factors
  Couple c{NormedSpace::weighted_lp(2.0, {1.0, 2.0}), NormedSpace::weighted_lp(2.0, {0.6, 1.1})};
  auto prob = lp_problem(c, p, p, theta, 8);
  CVec v = {Cplx(1.1, -0.2), Cplx(0.4, 0.8)};
  double vi = interp_norm(prob, v).value;
  auto dk = discrete_real_norm(c, theta, p, v, 10, kE, cfg);
  double fwd = 2.0 * constants::mean_forward(theta, kE);
  double rev = 2.0 * constants::mean_reverse(theta, kE);
  CHECK(dk.value <= fwd * vi * (1 + 1e-5));
  CHECK(vi <= rev * dk.hi * (1 + 1e-5));
}

TEST_CASE("analytic view: evaluation, boundary coefficients, isometry") {
  SparseSeq s(2);
  s.set(-1, cv({0.5, 1.0}));
  s.set(2, cv({-1.0, 0.25}));
  const double theta = 0.3;
  AnalyticView f(s, theta, kE);

  // eval_at(θ) = Σ_k x_k; delta view is constant
  CHECK(max_abs(sub(f.eval_at(Cplx(theta, 0.0)), s.sum_blocks())) <= 1e-12);
  AnalyticView d(SparseSeq::delta(0, cv({2.0, 1.0})), theta, kE);
  CHECK(max_abs(sub(d.eval_at(Cplx(0.9, 3.0)), cv({2.0, 1.0}))) <= 1e-12);

  // boundary coefficients at j are the weighted sequences; round-trip at the
  // θ-line reproduces the sequence exactly
  SparseSeq b1 = f.boundary_coeffs(1);
  for (const auto& [k, blk] : s.entries())
    CHECK(std::abs(b1.block(k)[0] - std::exp((1.0 - theta) * k) * blk[0]) <= 1e-12);

  auto base = NormedSpace::unweighted_lp(2.0, 2);
  for (auto spec : {SeqStructSpec::lp(1.5), SeqStructSpec::fourier_lp(2.0)}) {
    double via_boundary = std::max(seq_norm(spec, base, f.boundary_coeffs(0)).value,
                                   seq_norm(spec, base, f.boundary_coeffs(1)).value);
    double via_weight =
        std::max(weighted_seq_norm(spec, base, {kE, -theta}, s).value,
                 weighted_seq_norm(spec, base, {kE, 1.0 - theta}, s).value);
    CHECK(via_boundary == doctest::Approx(via_weight).epsilon(1e-12));
  }
}

TEST_CASE("finite_rep: exact reconstruction and the assembled constant") {
  Rng rng(41);
  Couple c{NormedSpace::weighted_lp(2.0, {1.0, 2.0}), NormedSpace::weighted_lp(1.0, {0.7, 1.1})};
  for (double theta : {0.3, 0.5, 0.7}) {
    auto prob = lp_problem(c, 2.0, 2.0, theta, 5);
    for (int t = 0; t < 5; ++t) {
      CVec x(2);
      for (auto& z : x) z = Cplx(rng.uniform(-2, 2), rng.uniform(-2, 2));
      auto fr = finite_rep(prob, x, 1.05);
      CHECK(max_abs(sub(fr.decomposition.sum_blocks(), x)) <= 1e-10);
      CHECK(fr.norm_ratio <= fr.constant * 1.05);
      CHECK(fr.constant == doctest::Approx(constants::finite_rep(theta, kE)));
    }
  }
  auto probmc = lp_problem(c, 2.0, 2.0, 0.5);
  probmc.struct0 = SeqStructSpec::gaussian(2.0, 500, 3);
  CHECK_THROWS_AS(finite_rep(probmc, cv({1.0, 1.0}), 1.1), std::invalid_argument);
  CHECK(finite_rep(lp_problem(c, 2.0, 2.0, 0.5), zeros(2), 1.1).decomposition.empty());
}

TEST_CASE("change_base_reindex: identity, delta=2 collapse, norm chain") {
  SparseSeq s(1);
  s.set(0, cv({1.0}));
  s.set(1, cv({2.0}));
  CHECK(change_base_reindex(s, 2.0, 2.0) == s);

  // b = a²: both blocks land at 0 (⌊0/2⌋ = ⌊1/2⌋ = 0), summed
  SparseSeq d2 = change_base_reindex(s, 2.0, 4.0);
  CHECK(d2.support_size() == 1);
  CHECK(d2.block(0)[0].real() == doctest::Approx(3.0));

  // δ < 1 places blocks injectively at ⌊k/δ⌋
  SparseSeq dh = change_base_reindex(s, 4.0, 2.0);
  CHECK(dh.block(0)[0].real() == doctest::Approx(1.0));
  CHECK(dh.block(2)[0].real() == doctest::Approx(2.0));

  // norm chain: ‖reindexed‖ at base b is within the proof constant of the
  // original weighted norm at base a
  Rng rng(3);
  auto base = NormedSpace::unweighted_lp(2.0, 1);
  const double theta = 0.4;
  for (auto [a, b] : std::vector<std::pair<double, double>>{{1.5, 4.0}, {4.0, 1.5}, {1.5, kE}}) {
    SparseSeq r(1);
    for (int k = -3; k <= 3; ++k) r.set(k, {Cplx(rng.uniform(-1, 1), rng.uniform(-1, 1))});
    SparseSeq rb = change_base_reindex(r, a, b);
    CHECK(max_abs(sub(rb.sum_blocks(), r.sum_blocks())) <= 1e-12);
    for (int j : {0, 1}) {
      double na = weighted_seq_norm(SeqStructSpec::lp(2.0), base, {a, j - theta}, r).value;
      double nb = weighted_seq_norm(SeqStructSpec::lp(2.0), base, {b, j - theta}, rb).value;
      CHECK(nb <= constants::base_change(theta, a, b) * na * (1 + 1e-9));
    }
  }
}

TEST_CASE("interp_norm: window sensitivity flag") {
  // Fourier structures keep improving as the window grows, so a width-1
  // window must trip the 1% drift warning; a generous window must not.
  auto sp = NormedSpace::unweighted_lp(2.0, 1);
  Couple c{sp, sp};
  InterpProblem p;
  p.couple = c;
  p.struct0 = SeqStructSpec::fourier_lp(2.0);
  p.struct1 = SeqStructSpec::fourier_lp(2.0);
  p.theta = 0.5;
  p.window = 1;
  p.solver = fast_cfg();
  p.check_window = true;
  CVec x = cv({1.0});
  auto narrow = interp_norm(p, x);
  CHECK(narrow.window_warning);

  p.window = 8;
  auto wide = interp_norm(p, x);
  CHECK_FALSE(wide.window_warning);
  CHECK(wide.value <= narrow.value * (1 + 1e-9));
}

TEST_CASE("calderon_lozanovskii_norm: trivial, same-space, grid oracle") {
  auto cfg = fast_cfg();
  auto sp = NormedSpace::weighted_lp(2.0, {1.0, 1.6});
  Couple same{sp, sp};
  CVec x = {Cplx(0.8, 0.6), Cplx(-1.2, 0.0)};

  CHECK(calderon_lozanovskii_norm(same, 0.5, zeros(2), cfg).value == 0.0);
  auto sv = calderon_lozanovskii_norm(same, 0.4, x, cfg);
  CHECK(sv.value == doctest::Approx(sp.norm(x)).epsilon(1e-6));

  // same p both sides: value = ℓᵖ norm with the Stein–Weiss weight
  Rng rng(9);
  for (double p : {1.0, 2.0, 3.0}) {
    for (double theta : {0.3, 0.6}) {
      std::vector<double> w0{1.2, 0.5}, w1{0.8, 2.2};
      Couple c{NormedSpace::weighted_lp(p, w0), NormedSpace::weighted_lp(p, w1)};
      CVec v = {Cplx(rng.uniform(0.3, 2), rng.uniform(-1, 1)), Cplx(rng.uniform(-2, -0.3), 0.4)};
      double got = calderon_lozanovskii_norm(c, theta, v, cfg).value;
      double closed = NormedSpace::weighted_lp(p, sw_weight(w0, w1, theta)).norm(v);
      double grid = cl_oracle_grid(c, theta, v);
      CHECK(got == doctest::Approx(closed).epsilon(1e-5));
      CHECK(got == doctest::Approx(grid).epsilon(1e-4));
    }
  }

  // zero coordinates impose no constraint
  Couple c{NormedSpace::weighted_lp(1.0, {1.0, 9.0}), NormedSpace::weighted_lp(2.0, {2.0, 9.0})};
  CVec xz = {Cplx(1.0, 0.0), Cplx(0.0, 0.0)};
  auto solz = calderon_lozanovskii_norm(c, 0.5, xz, cfg);
  CHECK(solz.value > 0.0);
  CHECK(std::abs(solz.certificate.block(0)[1]) == 0.0);
}
