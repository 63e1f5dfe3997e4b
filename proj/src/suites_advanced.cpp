#include <cmath>

#include "ssi/constants.hpp"
#include "ssi/harness.hpp"

namespace ssi::harness {

namespace {

const double kE = 2.718281828459045235;

InterpProblem base_problem(const Couple& c, const SeqStructSpec& s0, const SeqStructSpec& s1,
                           double theta, int window, std::uint64_t seed) {
  InterpProblem p;
  p.couple = c;
  p.struct0 = s0;
  p.struct1 = s1;
  p.theta = theta;
  p.window = window;
  p.solver = suite_solver(seed);
  p.check_window = false;
  p.with_lower_hint = false;
  return p;
}

/// ‖x⃗‖ in 𝔖₀(a^{e0}) ∩ 𝔖₁(a^{e1})-style max form, evaluated directly.
double max_weighted(const SeqStructSpec& s0, const NormedSpace& sp0, const SeqStructSpec& s1,
                    const NormedSpace& sp1, double base, double e0, double e1,
                    const SparseSeq& s) {
  return std::max(weighted_seq_norm(s0, sp0, {base, e0}, s).value,
                  weighted_seq_norm(s1, sp1, {base, e1}, s).value);
}

double geom_tail(double ratio, int window, double p) {
  double r = std::pow(ratio, window + 1);
  if (p == kInf) return r;
  return r / std::pow(1.0 - std::pow(ratio, p), 1.0 / p);
}

}  // namespace

// Duality for ℓᵖ structures: the support-function estimate of the dual norm
// against the dual-couple interpolation norm, two-sided within the product of
// the mean-method constants.
VerificationReport suite_duality_lp(std::uint64_t seed, int cases) {
  VerificationReport rep;
  Gen gen(seed);
  const double ps[] = {1.5, 2.0, 4.0};
  for (int c = 0; c < cases; ++c) {
    double p = ps[gen.rng.next_below(3)];
    double pd = NormedSpace::conjugate_exponent(p);
    std::size_t n = 1 + gen.rng.next_below(4);
    auto w0 = gen.weights(n), w1 = gen.weights(n);
    double theta = gen.theta();
    Couple cp{NormedSpace::weighted_lp(p, w0), NormedSpace::weighted_lp(p, w1)};
    Couple dual{cp.space0.dual(), cp.space1.dual()};
    auto prob = base_problem(cp, SeqStructSpec::lp(p), SeqStructSpec::lp(p), theta, 5,
                             seed ^ (c * 61));
    auto dprob = base_problem(dual, SeqStructSpec::lp(pd), SeqStructSpec::lp(pd), theta, 5,
                              seed ^ (c * 61) ^ 1);

    CVec xs = gen.nonzero_vec(n);
    double vd = interp_norm(dprob, xs).value;

    // support-function estimate: maximize |⟨x,x*⟩| / ‖x‖_θ over directions;
    // the Stein–Weiss norming vector seeds the search.
    std::vector<double> wsw(n);
    for (std::size_t i = 0; i < n; ++i)
      wsw[i] = std::pow(w0[i], 1.0 - theta) * std::pow(w1[i], theta);
    CVec guided(n);
    for (std::size_t i = 0; i < n; ++i) {
      double m = std::abs(xs[i]);
      if (m == 0) continue;
      double mag = p == 1.0 ? 1.0 : std::pow(m / wsw[i], pd - 1.0) / wsw[i];
      guided[i] = (xs[i] / m) * mag;
    }
    double est = 0.0;
    std::vector<CVec> dirs{guided};
    for (int d = 0; d < 9; ++d) dirs.push_back(gen.nonzero_vec(n));
    for (const CVec& dir : dirs) {
      double vp = interp_norm(prob, dir).value;
      if (vp > 0) est = std::max(est, std::abs(inner(dir, xs)) / vp);
    }

    double cprod = constants::mean_forward(theta, kE) * constants::mean_reverse(theta, kE);
    CaseRecord r;
    r.digest = gen.digest(c);
    r.ratio = std::max(est / (cprod * vd), vd / (cprod * est));
    r.bound = 1.0 + 1e-5;
    r.note = "p=" + std::to_string(p) + " Cprod=" + std::to_string(cprod);
    rep.add(r);
  }
  return rep;
}

// Lattice identity: lattice-ℓ¹ interpolation, Fourier-L¹ interpolation and
// the Calderón–Lozanovskii product agree — Fourier ≤ lattice and product ≤
// lattice at constant 1, lattice ≤ displayed-constant · product.
VerificationReport suite_bfs_identity(std::uint64_t seed, int cases) {
  VerificationReport rep;
  Gen gen(seed);
  for (int c = 0; c < cases; ++c) {
    std::size_t n = gen.dim(4);
    Couple cp = gen.couple(n);
    double theta = gen.theta();
    const int window = 6;
    SolverConfig cfg = suite_solver(seed ^ (c * 67));
    CVec x = gen.nonzero_vec(n);

    auto probA = base_problem(cp, SeqStructSpec::lattice_lq(1.0), SeqStructSpec::lattice_lq(1.0),
                              theta, window, seed ^ (c * 67));
    InterpSolution a = interp_norm(probA, x);

    std::vector<std::vector<StructTerm>> fterms{
        {StructTerm{SeqStructSpec::fourier_lp(1.0), cp.space0, kE, -theta}},
        {StructTerm{SeqStructSpec::fourier_lp(1.0), cp.space1, kE, 1.0 - theta}}};
    InterpSolution b = minimize_max(fterms, x, window, cfg, {a.certificate});

    InterpSolution cl = calderon_lozanovskii_norm(cp, theta, x, cfg);

    // Hölder direction at constant 1: the lattice certificate factors as
    // x₀ = Σ b^{-kθ}|y_k|, x₁ = Σ b^{k(1-θ)}|y_k| with |x| ≤ |x₀|^{1-θ}|x₁|^θ.
    CVec f0 = zeros(n), f1 = zeros(n);
    for (const auto& [k, blk] : a.certificate.entries())
      for (std::size_t i = 0; i < n; ++i) {
        f0[i] += std::exp(-theta * k) * std::abs(blk[i]);
        f1[i] += std::exp((1.0 - theta) * k) * std::abs(blk[i]);
      }
    double holder = std::pow(cp.space0.norm(f0), 1.0 - theta) * std::pow(cp.space1.norm(f1), theta);
    double cl_val = std::min(cl.value, holder);

    // displayed-constant direction: rebuild the ratio-level decomposition
    // from the factorization certificate, rescaled so both factor norms agree
    CVec x0 = cl.certificate.block(0), x1 = cl.certificate.block(1);
    double n0 = cp.space0.norm(x0), n1 = cp.space1.norm(x1);
    SparseSeq ek(n);
    if (n0 > 0 && n1 > 0) {
      double t = n1 / n0;
      for (std::size_t i = 0; i < n; ++i) x0[i] *= std::pow(t, theta);
      for (std::size_t i = 0; i < n; ++i) x1[i] *= std::pow(t, theta - 1.0);
      for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(x[i]) == 0.0) continue;
        double ratio = std::abs(x1[i]) / std::max(std::abs(x0[i]), 1e-300);
        int k = static_cast<int>(std::floor(std::log(ratio)));
        k = std::max(-window, std::min(window, k));
        CVec blk = ek.block(k);
        blk[i] += x[i];
        ek.set(k, blk);
      }
    }
    std::vector<SparseSeq> starts{ek};
    auto probA2 = probA;
    probA2.solver = cfg;
    std::vector<std::vector<StructTerm>> lterms{
        {StructTerm{SeqStructSpec::lattice_lq(1.0), cp.space0, kE, -theta}},
        {StructTerm{SeqStructSpec::lattice_lq(1.0), cp.space1, kE, 1.0 - theta}}};
    InterpSolution a2 = minimize_max(lterms, x, window, cfg, starts);
    double a_val = std::min(a.value, a2.value);

    double kdisp = constants::bfs(theta, kE);
    CaseRecord r;
    r.digest = gen.digest(c);
    double r_fourier = b.value / a_val;                  // ≤ 1: ℓ¹ ↪ Fourier-L¹
    double r_holder = cl_val / a_val;                    // ≤ 1: pointwise factorization
    double r_disp = a_val / (kdisp * cl_val);            // ≤ 1: displayed constant
    r.ratio = std::max({r_fourier, r_holder, r_disp});
    r.bound = 1.0 + 2e-4;
    r.note = "K=" + std::to_string(kdisp) + " fourier_gap=" + std::to_string(a_val / b.value);
    rep.add(r);
  }
  return rep;
}

// Operator interpolation on ℓ²-couples: ratio against b^θ·M₀^{1−θ}M₁^θ, and
// with the b^θ dropped when M₀/M₁ is snapped to an exact power of b.
VerificationReport suite_operator(std::uint64_t seed, int cases) {
  VerificationReport rep;
  Gen gen(seed);
  for (int c = 0; c < cases; ++c) {
    bool snapped = (c % 2) == 1;
    std::size_t n = 1 + gen.rng.next_below(4);
    double theta = gen.theta();
    Couple xc{NormedSpace::weighted_lp(2.0, gen.weights(n)),
              NormedSpace::weighted_lp(2.0, gen.weights(n))};
    Couple yc{NormedSpace::weighted_lp(2.0, gen.weights(n)),
              NormedSpace::weighted_lp(2.0, gen.weights(n))};
    CMat t(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        t.at(i, j) = Cplx(gen.rng.uniform(-1, 1), gen.rng.uniform(-1, 1));

    SolverConfig cfg = suite_solver(seed ^ (c * 71));
    auto spec = SeqStructSpec::lp(2.0);
    double m0 = operator_struct_bound(t, spec, xc.space0, yc.space0, cfg).value;
    double m1 = operator_struct_bound(t, spec, xc.space1, yc.space1, cfg).value;
    if (m0 <= 0 || m1 <= 0) continue;

    if (snapped) {
      // rescale Y₁ so that M₀/M₁ lands exactly on a power of the base
      int m = static_cast<int>(std::llround(std::log(m0 / m1)));
      double s = (m0 / m1) / std::exp(static_cast<double>(m));
      yc.space1 = yc.space1.scaled(s);
      m1 = operator_struct_bound(t, spec, xc.space1, yc.space1, cfg).value;
    }

    auto xprob = base_problem(xc, spec, spec, theta, 5, seed ^ (c * 71));
    CVec x = gen.nonzero_vec(n);
    InterpSolution sx = interp_norm(xprob, x);

    // proof construction: translate the certificate by n with eⁿ ≤ M₀/M₁ <
    // e^{n+1}, apply T blockwise
    int shift = static_cast<int>(std::floor(std::log(m0 / m1)));
    SparseSeq ty(n);
    for (const auto& [k, blk] : sx.certificate.entries()) ty.set(k + shift, t.apply(blk));
    CVec tx = t.apply(x);
    std::vector<std::vector<StructTerm>> yterms{
        {StructTerm{spec, yc.space0, kE, -theta}},
        {StructTerm{spec, yc.space1, kE, 1.0 - theta}}};
    double vtx = is_zero(tx) ? 0.0 : minimize_max(yterms, tx, 5 + std::abs(shift), cfg, {ty}).value;

    double factor = snapped ? 1.0 : constants::operator_factor(theta, kE);
    CaseRecord r;
    r.digest = gen.digest(c) + (snapped ? "-snap" : "");
    r.ratio = vtx / (factor * std::pow(m0, 1.0 - theta) * std::pow(m1, theta) * sx.value);
    r.bound = 1.0 + 1e-4;
    rep.add(r);
  }
  return rep;
}

// Stein interpolation for diagonal Laurent families: the measured ratio stays
// below b^θ relative to M₀^{1−θ}M₁^θ, with M_j the boundary-convolution norms
// measured on random inputs plus the certificate itself; the convolution is
// cross-checked against a torus quadrature oracle.
VerificationReport suite_stein(std::uint64_t seed, int cases) {
  VerificationReport rep;
  Gen gen(seed);
  for (int c = 0; c < cases; ++c) {
    std::size_t n = 1 + gen.rng.next_below(3);
    double theta = gen.theta();
    Couple xc{NormedSpace::weighted_lp(2.0, gen.weights(n)),
              NormedSpace::weighted_lp(2.0, gen.weights(n))};
    Couple yc = xc;  // same ambient pair keeps the family square
    LaurentOperatorFamily fam;
    for (int m = -1; m <= 1; ++m) {
      if (m != 0 && gen.rng.next_below(3) == 0) continue;
      CMat a(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          a.at(i, j) = Cplx(gen.rng.uniform(-0.8, 0.8), gen.rng.uniform(-0.8, 0.8));
      fam.coeffs[m] = a;
    }
    if (fam.coeffs.empty()) fam.coeffs[0] = CMat::identity(n);

    SolverConfig cfg = suite_solver(seed ^ (c * 73));
    auto spec = SeqStructSpec::lp(2.0);
    const int window = 5;
    auto xprob = base_problem(xc, spec, spec, theta, window, seed ^ (c * 73));
    CVec x = gen.nonzero_vec(n);
    InterpSolution sx = interp_norm(xprob, x);

    // hypothesis-(ii) bounds measured over random c₀₀ probes and the
    // weighted certificate sequences
    SparseSeq w0 = apply_weight({kE, -theta}, sx.certificate);
    SparseSeq w1 = apply_weight({kE, 1.0 - theta}, sx.certificate);
    double m0 = 0.0, m1 = 0.0;
    auto probe = [&](int j, const SparseSeq& s, double& m) {
      double den = seq_norm(spec, xc.space0, s).value;  // ℓ² structure over either space
      if (den <= 0) return;
      double num = seq_norm(spec, yc.space0, stein_boundary_coeffs(fam, j, s)).value;
      m = std::max(m, num / den);
    };
    for (int pr = 0; pr < 8; ++pr) {
      SparseSeq s = gen.seq(n, -2, 2, 0.7);
      probe(0, s, m0);
      probe(1, s, m1);
    }
    probe(0, w0, m0);
    probe(1, w1, m1);
    if (m0 <= 0 || m1 <= 0) continue;

    // boundary certificate for T(θ)x via the analytic view: the θ-line
    // coefficients of g(z) = e^{n(z-θ)}T(z)f(z)
    int shift = static_cast<int>(std::floor(std::log(m0 / m1)));
    SparseSeq conv0 = stein_boundary_coeffs(fam, 0, w0);
    SparseSeq gtheta(n);
    for (const auto& [k, blk] : conv0.entries()) {
      int kk = k + shift;
      CVec b = blk;
      for (auto& z : b) z *= std::exp(theta * kk - theta * shift);
      gtheta.set(kk, b);
    }
    CVec tx = fam.apply_at(Cplx(theta, 0.0), x);
    if (is_zero(tx)) continue;

    std::vector<std::vector<StructTerm>> yterms{
        {StructTerm{spec, yc.space0, kE, -theta}},
        {StructTerm{spec, yc.space1, kE, 1.0 - theta}}};
    double vtx =
        minimize_max(yterms, tx, window + std::abs(shift) + 1, cfg, {gtheta}).value;

    CaseRecord r;
    r.digest = gen.digest(c);
    r.ratio = vtx / (std::pow(m0, 1.0 - theta) * std::pow(m1, theta) * sx.value);
    r.bound = constants::operator_factor(theta, kE) * (1.0 + 2e-3);
    r.note = "C(theta)=" + std::to_string(constants::operator_factor(theta, kE));
    rep.add(r);

    // quadrature cross-check of the convolution on a subset
    if (c % 5 == 0) {
      SparseSeq s = gen.seq(n, -2, 2, 0.8);
      double worst = 0.0;
      for (int j : {0, 1}) {
        SparseSeq conv = stein_boundary_coeffs(fam, j, s);
        const int nodes = 256;
        for (int k = s.min_index() - 1; k <= s.max_index() + 1; ++k) {
          CVec acc = zeros(n);
          for (int q = 0; q < nodes; ++q) {
            double t = 2.0 * M_PI * q / nodes;
            CVec g = zeros(n);
            for (const auto& [kk, blk] : s.entries()) {
              CVec tb = fam.apply_at(Cplx(j, t), blk);
              Cplx e = std::polar(1.0, kk * t);
              for (std::size_t i = 0; i < n; ++i) g[i] += e * tb[i];
            }
            Cplx e = std::polar(1.0, -k * t);
            for (std::size_t i = 0; i < n; ++i) acc[i] += e * g[i] / static_cast<double>(nodes);
          }
          worst = std::max(worst, max_abs(sub(acc, conv.block(k))));
        }
      }
      CaseRecord q;
      q.digest = gen.digest(c) + "-quad";
      q.ratio = worst;
      q.bound = 1e-8;
      rep.add(q);
    }
  }
  return rep;
}

// J/K classes against the two structure embeddings. With the measurement
// grids matched to the proof constructions, both directions of each
// equivalence are certified at constant 1 (the continuous-parameter versions
// carry the extra a^θ / a^{1−θ} grid factors, which are recorded).
VerificationReport suite_jk_classes(std::uint64_t seed, int cases) {
  VerificationReport rep;
  Gen gen(seed);
  const double a = kE;
  const int kgrid = 3;
  for (int c = 0; c < cases; ++c) {
    std::size_t n = 1 + gen.rng.next_below(2);
    double p = (gen.rng.next_below(2) == 0) ? 1.0 : 2.0;
    double theta = gen.theta();
    Couple cp{NormedSpace::weighted_lp(p, gen.weights(n)),
              NormedSpace::weighted_lp(p, gen.weights(n))};
    SolverConfig cfg = suite_solver(seed ^ (c * 79));
    cfg.max_iters = 2500;
    auto prob = base_problem(cp, SeqStructSpec::lp(p), SeqStructSpec::lp(p), theta, 4,
                             seed ^ (c * 79));
    prob.solver = cfg;
    auto y_norm = [&](const CVec& v) { return is_zero(v) ? 0.0 : interp_norm(prob, v).value; };

    // shared blocks: every block that appears in a sequence below is also a
    // J/K sample, so the chains close without extra factors
    std::vector<CVec> blocks;
    for (int i = 0; i < 3; ++i) blocks.push_back(gen.nonzero_vec(n));
    std::vector<double> ynorms;
    for (const auto& v : blocks) ynorms.push_back(y_norm(v));

    // continuous J-constant (Hölder target) and its grid version
    double cj_cont = 0.0, cj_grid = 0.0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      double n0 = cp.space0.norm(blocks[i]), n1 = cp.space1.norm(blocks[i]);
      cj_cont = std::max(cj_cont, ynorms[i] / (std::pow(n0, 1.0 - theta) * std::pow(n1, theta)));
      double grid_inf = kInf;
      for (int k = -kgrid; k <= kgrid; ++k) {
        double t = std::pow(a, k);
        grid_inf = std::min(grid_inf, std::pow(t, -theta) * j_functional(cp, t, blocks[i]));
      }
      cj_grid = std::max(cj_grid, ynorms[i] / grid_inf);
    }

    // grid K-constant, keeping the split certificates for the embedding side
    double ck_grid = 0.0;
    std::vector<std::vector<std::pair<CVec, CVec>>> ksplits(blocks.size());
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      for (int k = -kgrid; k <= kgrid; ++k) {
        auto ks = k_functional(cp, std::pow(a, k), blocks[bi], cfg);
        ck_grid = std::max(ck_grid, std::pow(a, -theta * k) * ks.value / ynorms[bi]);
        ksplits[bi].push_back({ks.certificate.block(0), ks.certificate2.block(0)});
      }
    }

    // sequences: all grid deltas of all blocks, plus one mixed sequence
    struct SeqSample {
      SparseSeq s;
      std::vector<std::size_t> block_ids;  // per entry, aligned with s order
    };
    std::vector<SeqSample> seqs;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi)
      for (int k = -kgrid; k <= kgrid; ++k)
        seqs.push_back({SparseSeq::delta(k, blocks[bi]), {bi}});
    {
      SparseSeq s(n);
      std::vector<std::size_t> ids;
      for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        s.set(static_cast<int>(bi) - 1, blocks[bi]);
        ids.push_back(bi);
      }
      seqs.push_back({s, ids});
    }

    StructTerm t0{SeqStructSpec::lp(p), cp.space0, a, -theta};
    StructTerm t1{SeqStructSpec::lp(p), cp.space1, a, 1.0 - theta};
    double c_embj = 0.0, c_embk = 0.0;
    for (const auto& smp : seqs) {
      std::vector<double> yvals;
      SparseSeq s0(n), s1(n);
      std::size_t j = 0;
      for (const auto& [k, blk] : smp.s.entries()) {
        std::size_t bi = smp.block_ids[j++];
        yvals.push_back(ynorms[bi]);
        const auto& split = (k >= -kgrid && k <= kgrid)
                                ? ksplits[bi][k + kgrid]
                                : ksplits[bi][kgrid];
        s0.set(k, split.first);
        s1.set(k, split.second);
      }
      double ell_py = lp_aggregate(p, yvals);
      double den = max_weighted(SeqStructSpec::lp(p), cp.space0, SeqStructSpec::lp(p), cp.space1,
                                a, -theta, 1.0 - theta, smp.s);
      if (den > 0) c_embj = std::max(c_embj, ell_py / den);

      double constructed =
          weighted_seq_norm(SeqStructSpec::lp(p), cp.space0, {a, -theta}, s0).value +
          weighted_seq_norm(SeqStructSpec::lp(p), cp.space1, {a, 1.0 - theta}, s1).value;
      InterpSolution split = minimize_sum_seq(t0, t1, smp.s, cfg);
      double num = std::min(split.value, constructed);
      if (ell_py > 0) c_embk = std::max(c_embk, num / ell_py);
    }

    CaseRecord r;
    r.digest = gen.digest(c);
    double r1 = c_embj / cj_cont;         // ≤ 1: Hölder with matched exponents
    double r2 = cj_grid / c_embj;         // ≤ 1: grid deltas are in the sample set
    double r3 = c_embk / (2.0 * ck_grid); // ≤ 1: per-block K splits
    double r4 = ck_grid / c_embk;         // ≤ 1: delta sum-splits realize K
    r.ratio = std::max({r1, r2, r3, r4});
    r.bound = 1.0 + 1e-4;
    r.note = "C_J=" + std::to_string(cj_cont) + " C_K=" + std::to_string(ck_grid) +
             " grid_factors=[" + std::to_string(std::pow(a, theta)) + "," +
             std::to_string(std::pow(a, 1.0 - theta)) + "]";
    rep.add(r);
  }
  return rep;
}

// Real-method reiteration: (𝒴₀,𝒴₁)_{θ;b} against (𝒳₀,𝒳₁)_{ω;a} with
// b = a^{θ₁−θ₀}, two-sided within constants assembled from the measured
// embedding constants and the mean-method factors.
VerificationReport suite_reiteration_real(std::uint64_t seed, int cases) {
  VerificationReport rep;
  Gen gen(seed);
  for (int c = 0; c < cases; ++c) {
    std::size_t n = 1 + gen.rng.next_below(2);
    double p = (gen.rng.next_below(2) == 0) ? 1.0 : 2.0;
    double theta0 = gen.rng.uniform(0.15, 0.4);
    double theta1 = gen.rng.uniform(0.6, 0.85);
    double theta = gen.theta();
    double omega = constants::reiteration_omega(theta, theta0, theta1);
    double a = std::exp(1.0 / (theta1 - theta0));  // so that b = a^{θ₁−θ₀} = e
    auto w0 = gen.weights(n), w1 = gen.weights(n);
    Couple xc{NormedSpace::weighted_lp(p, w0), NormedSpace::weighted_lp(p, w1)};
    SolverConfig cfg = suite_solver(seed ^ (c * 83));

    // class J_{θj} ∩ K_{θj} realizations of the inner spaces
    auto swj = [&](double th) {
      std::vector<double> w(n);
      for (std::size_t i = 0; i < n; ++i)
        w[i] = std::pow(w0[i], 1.0 - th) * std::pow(w1[i], th);
      return NormedSpace::weighted_lp(p, w);
    };
    Couple yc{swj(theta0), swj(theta1)};

    CVec x = gen.nonzero_vec(n);
    auto xprob = base_problem(xc, SeqStructSpec::lp(p), SeqStructSpec::lp(p), omega, 4,
                              seed ^ (c * 83));
    xprob.base = a;
    InterpSolution vin = interp_norm(xprob, x);

    auto yprob = base_problem(yc, SeqStructSpec::lp(p), SeqStructSpec::lp(p), theta, 6,
                              seed ^ (c * 83) ^ 2);
    std::vector<std::vector<StructTerm>> yterms = yprob.side_terms();
    InterpSolution vout = minimize_max(yterms, x, yprob.window, cfg, {vin.certificate});

    // forward embedding constant: 𝔗_j-weighted norm ≤ cJ_j · 𝔖-max norm,
    // measured over probes plus the inner certificate itself
    double cj = 0.0;
    auto cj_probe = [&](const SparseSeq& s) {
      double den = max_weighted(SeqStructSpec::lp(p), xc.space0, SeqStructSpec::lp(p), xc.space1,
                                a, -omega, 1.0 - omega, s);
      if (den <= 0) return;
      for (int j : {0, 1}) {
        const NormedSpace& yj = j == 0 ? yc.space0 : yc.space1;
        double tj = j == 0 ? theta0 : theta1;
        double num = weighted_seq_norm(SeqStructSpec::lp(p), yj, {a, tj - omega}, s).value;
        cj = std::max(cj, num / den);
      }
    };
    for (int pr = 0; pr < 4; ++pr) cj_probe(gen.seq(n, -2, 2, 0.7));
    cj_probe(vin.certificate);

    double fwd_ratio = vout.value / (cj * vin.value);

    // reverse: mean-method split of the outer couple, pushed through the
    // K-side embedding constants, then the base-a mean-method reverse factor
    auto ymean_prob = yprob;
    ymean_prob.solver = cfg;
    InterpSolution mean_out = mean_norm(ymean_prob, x);
    const int nwin = ymean_prob.window, mwin = nwin + 45;
    SparseSeq y0(n), y1(n);
    for (int k = -mwin; k <= mwin; ++k) {
      CVec blk0 = k < -nwin ? zeros(n) : (k > nwin ? x : mean_out.certificate.block(k));
      CVec blk1 = sub(x, blk0);
      y0.set(k, blk0);
      y1.set(k, blk1);
    }
    StructTerm sx0{SeqStructSpec::lp(p), xc.space0, a, -omega};
    StructTerm sx1{SeqStructSpec::lp(p), xc.space1, a, 1.0 - omega};
    double ck = 0.0;
    double sum0 = 0.0, sum1 = 0.0;
    for (int j : {0, 1}) {
      const SparseSeq& yj = j == 0 ? y0 : y1;
      const NormedSpace& yspace = j == 0 ? yc.space0 : yc.space1;
      double tj = j == 0 ? theta0 : theta1;
      double den = weighted_seq_norm(SeqStructSpec::lp(p), yspace, {a, tj - omega}, yj).value;
      InterpSolution split = minimize_sum_seq(sx0, sx1, yj, cfg);
      (j == 0 ? sum0 : sum1) = den;
      if (den > 0) ck = std::max(ck, split.value / den);
    }
    double rev_bound = (1.0 + std::pow(a, omega)) * ck * (sum0 + sum1);
    double rev_ratio = vin.value / rev_bound;

    CaseRecord r;
    r.digest = gen.digest(c);
    r.ratio = std::max(fwd_ratio, rev_ratio);
    r.bound = 1.0 + 1e-4;
    r.note = "cJ=" + std::to_string(cj) + " cK=" + std::to_string(ck) +
             " omega=" + std::to_string(omega);
    rep.add(r);
  }
  return rep;
}

// Complex reiteration on Hilbert couples with Fourier-ℓ² structures. The
// discrete-vs-Stein–Weiss ratio is a universal function κ(τ) of the parameter
// (Parseval decouples the coordinates), so a scalar reference couple pins the
// recorded constant; the two-level value at θ must match the ω-oracle within
// κ(θ) times a small spread allowance, and the single-level legs must match
// their own oracles within κ(θ_j).
VerificationReport suite_reiteration_hilbert(std::uint64_t seed, int cases) {
  VerificationReport rep;
  Gen gen(seed);
  auto fourier = SeqStructSpec::fourier_lp(2.0);
  auto kappa_ref = [&](double tau, std::uint64_t s) {
    Couple ref{NormedSpace::weighted_lp(2.0, {1.0}), NormedSpace::weighted_lp(2.0, {1.0})};
    InterpProblem p;
    p.couple = ref;
    p.struct0 = fourier;
    p.struct1 = fourier;
    p.theta = tau;
    p.window = 8;
    p.solver = suite_solver(s);
    p.check_window = false;
    p.with_lower_hint = false;
    return interp_norm(p, {Cplx(1.0, 0.0)}).value;
  };
  const double spread = 1.05;  // weight/dimension spread allowance, recorded
  for (int c = 0; c < cases; ++c) {
    std::size_t n = 1 + gen.rng.next_below(4);
    double theta0 = gen.rng.uniform(0.15, 0.4);
    double theta1 = gen.rng.uniform(0.6, 0.85);
    double theta = gen.theta();
    double omega = constants::reiteration_omega(theta, theta0, theta1);
    auto w0 = gen.weights(n), w1 = gen.weights(n);
    Couple xc{NormedSpace::weighted_lp(2.0, w0), NormedSpace::weighted_lp(2.0, w1)};
    CVec x = gen.nonzero_vec(n);

    auto swj = [&](double th) {
      std::vector<double> w(n);
      for (std::size_t i = 0; i < n; ++i)
        w[i] = std::pow(w0[i], 1.0 - th) * std::pow(w1[i], th);
      return NormedSpace::weighted_lp(2.0, w);
    };

    double worst = 0.0;
    // single-level legs against their own oracles
    for (double tau : {theta0, theta1, omega}) {
      auto prob = base_problem(xc, fourier, fourier, tau, 8, seed ^ (c * 89));
      double ratio = interp_norm(prob, x).value / oracle_stein_weiss(w0, w1, 2.0, tau, x);
      double kap = kappa_ref(tau, seed ^ (c * 89) ^ 11);
      worst = std::max(worst, std::max(ratio / (kap * spread), kap / (ratio * spread)));
    }
    // two-level value at θ against the ω-oracle
    Couple yc{swj(theta0), swj(theta1)};
    auto yprob = base_problem(yc, fourier, fourier, theta, 8, seed ^ (c * 89) ^ 3);
    double vout = interp_norm(yprob, x).value;
    double oracle = oracle_stein_weiss(w0, w1, 2.0, omega, x);
    double kap = kappa_ref(theta, seed ^ (c * 89) ^ 13);
    double ratio = vout / oracle;
    worst = std::max(worst, std::max(ratio / (kap * spread), kap / (ratio * spread)));

    CaseRecord r;
    r.digest = gen.digest(c);
    r.ratio = worst;
    r.bound = 1.0;
    r.note = "kappa(theta)=" + std::to_string(kap) + " ratio=" + std::to_string(ratio) +
             " spread=" + std::to_string(spread);
    rep.add(r);
  }
  return rep;
}

// Interpolation of intersections for diagonal resolvent families: hypothesis
// bounds finite, one direction at constant 1, the other via the constructive
// S/T splitting with all constants recorded.
VerificationReport suite_intersections(std::uint64_t seed, int cases) {
  VerificationReport rep;
  Gen gen(seed);
  for (int c = 0; c < cases; ++c) {
    std::size_t n = 1 + gen.rng.next_below(3);
    double p = (gen.rng.next_below(2) == 0) ? 1.0 : 2.0;
    double theta = gen.theta();
    auto wx = gen.weights(n), wz = gen.weights(n);
    std::vector<double> adiag(n);
    for (double& v : adiag) v = std::exp(gen.rng.uniform(-2.0, 2.0));
    NormedSpace xs = NormedSpace::weighted_lp(p, wx);
    std::vector<double> wy(n);
    for (std::size_t i = 0; i < n; ++i) wy[i] = wx[i] * adiag[i];
    NormedSpace ys = NormedSpace::weighted_lp(p, wy);  // ‖y‖_Y = ‖Ay‖_X
    NormedSpace zs = NormedSpace::weighted_lp(p, wz);
    ResolventFamily fam(adiag);

    // hypothesis bounds: the diagonal family and its mixed weightings stay
    // uniformly bounded (< 1 for the plain families) on a wide k-range
    double hyp = fam.struct_bound(-20, 20);

    SolverConfig cfg = suite_solver(seed ^ (c * 97));
    CVec v = gen.nonzero_vec(n);
    const int window = 5;
    auto spec = SeqStructSpec::lp(p);
    std::vector<StructTerm> side0{StructTerm{spec, xs, kE, 0.0}};
    std::vector<StructTerm> side1y{StructTerm{spec, ys, kE, 0.0}};
    std::vector<StructTerm> side1z{StructTerm{spec, zs, kE, 0.0}};
    std::vector<StructTerm> side1yz{StructTerm{spec, ys, kE, 0.0}, StructTerm{spec, zs, kE, 0.0}};

    InterpSolution vyz0 = interp_norm_multi(side0, side1yz, theta, kE, window, v, cfg);

    // constructive reverse: mean split of (X,Z) at θ, then a = v − Tz, b = Tz
    // with T_k = e^{−k}(e^{−k}+A)^{−1} (the reflection of the displayed family
    // makes T absorb the k → −∞ tail where the 𝔘-weighted part lives)
    InterpProblem zprob;
    zprob.couple = Couple{xs, zs};
    zprob.struct0 = spec;
    zprob.struct1 = spec;
    zprob.theta = theta;
    zprob.window = window;
    zprob.solver = cfg;
    InterpSolution zmean = mean_norm(zprob, v);
    const int mwin = window + 45;
    SparseSeq aseq(n), bseq(n);
    for (int k = -mwin; k <= mwin; ++k) {
      CVec zk = k < -window ? v : (k > window ? zeros(n) : zmean.certificate2.block(k));
      CVec bk(n), ak(n);
      double emk = std::exp(static_cast<double>(-k));
      for (std::size_t i = 0; i < n; ++i) {
        double tk = emk / (emk + adiag[i]);
        bk[i] = tk * zk[i];
        ak[i] = v[i] - bk[i];
      }
      aseq.set(k, ak);
      bseq.set(k, bk);
    }
    double na = weighted_seq_norm(spec, xs, {kE, -theta}, aseq).value;
    double nby = weighted_seq_norm(spec, ys, {kE, 1.0 - theta}, bseq).value;
    double nbz = weighted_seq_norm(spec, zs, {kE, 1.0 - theta}, bseq).value;
    // geometric remainders beyond the materialized range
    double maxa = *std::max_element(adiag.begin(), adiag.end());
    double tail = xs.norm(v) * geom_tail(std::exp(-theta), mwin, p) +
                  maxa * xs.norm(v) * geom_tail(std::exp(-(1.0 - theta)), mwin, p) +
                  (ys.norm(v) + zs.norm(v)) * geom_tail(std::exp(-(1.0 - theta)), mwin, p);
    double bound2 = (1.0 + std::pow(kE, theta)) * (na + std::max(nby, nbz) + tail);

    // re-solve the intersection norm seeded with the telescoped differences of
    // the constructive split (truncated to the window, boundary lumps keep the
    // sum exact), so the solver can realize the mean-method reverse bound
    SparseSeq diffs(n);
    for (int k = -window; k <= window; ++k) {
      CVec lo = k == -window ? zeros(n) : aseq.block(k);
      CVec hi = k == window ? v : aseq.block(k + 1);
      diffs.set(k, sub(hi, lo));
    }
    InterpSolution vyz1 = interp_norm_multi(side0, side1yz, theta, kE, window, v,
                                            cfg.with_seed(cfg.seed ^ 0x33), {diffs});
    double vyz_val = std::min(vyz0.value, vyz1.value);
    const SparseSeq& best_cert = vyz1.value < vyz0.value ? vyz1.certificate : vyz0.certificate;

    std::vector<std::vector<StructTerm>> ty{{StructTerm{spec, xs, kE, -theta}},
                                            {StructTerm{spec, ys, kE, 1.0 - theta}}};
    std::vector<std::vector<StructTerm>> tz{{StructTerm{spec, xs, kE, -theta}},
                                            {StructTerm{spec, zs, kE, 1.0 - theta}}};
    double vy = minimize_max(ty, v, window, cfg, {best_cert}).value;
    double vz = minimize_max(tz, v, window, cfg, {best_cert}).value;
    double r1 = std::max(vy, vz) / vyz_val;
    double r2 = vyz_val / bound2;

    CaseRecord r;
    r.digest = gen.digest(c);
    r.ratio = std::max(r1 / (1.0 + 1e-6), r2 / (1.0 + 5e-3));
    r.bound = 1.0;
    r.note = "hyp_sup=" + std::to_string(hyp) +
             " C_rev=" + std::to_string(bound2 / std::max(vy, vz)) +
             " mean_z=" + std::to_string(zmean.value);
    rep.add(r);
  }
  return rep;
}

}  // namespace ssi::harness
