#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ssi/operators.hpp"
#include "ssi/rng.hpp"

using namespace ssi;

namespace {

/// Jacobi eigenvalue oracle for Hermitian matrices (independent of the power
/// iteration used by sigma_max).
double jacobi_largest_eig(CMat a) {
  const std::size_t n = a.rows;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a.at(p, q));
    if (off < 1e-26) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        Cplx apq = a.at(p, q);
        if (std::abs(apq) < 1e-18) continue;
        double app = a.at(p, p).real(), aqq = a.at(q, q).real();
        // phase to make the pivot real, then a real Jacobi rotation
        Cplx phase = apq / std::abs(apq);
        double tau = (aqq - app) / (2.0 * std::abs(apq));
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double cth = 1.0 / std::sqrt(1.0 + t * t), sth = t * cth;
        CMat r = CMat::identity(n);
        r.at(p, p) = cth;
        r.at(q, q) = cth;
        r.at(p, q) = sth * phase;
        r.at(q, p) = -sth * std::conj(phase);
        a = r.adjoint().mul(a).mul(r);
      }
  }
  double best = -kInf;
  for (std::size_t i = 0; i < n; ++i) best = std::max(best, a.at(i, i).real());
  return best;
}

CMat random_matrix(std::size_t r, std::size_t c, Rng& rng) {
  CMat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return m;
}

}  // namespace

TEST_CASE("operator_struct_bound: identity, diagonal, singular value oracle") {
  SolverConfig cfg;
  auto spec = SeqStructSpec::lp(2.0);
  Rng rng(3);

  auto sp2 = NormedSpace::weighted_lp(2.0, {1.0, 1.0, 1.0});
  CHECK(operator_struct_bound(CMat::identity(3), spec, sp2, sp2, cfg).value ==
        doctest::Approx(1.0).epsilon(1e-10));

  // diagonal d between ℓ²(u) and ℓ²(v): max_i v_i|d_i|/u_i
  std::vector<double> u{1.0, 2.0, 0.5}, v{2.0, 1.0, 1.5}, d{0.3, -1.2, 0.8};
  auto in = NormedSpace::weighted_lp(2.0, u), out = NormedSpace::weighted_lp(2.0, v);
  double expect = 0.0;
  for (int i = 0; i < 3; ++i) expect = std::max(expect, v[i] * std::abs(d[i]) / u[i]);
  auto got = operator_struct_bound(CMat::diagonal(d), spec, in, out, cfg);
  CHECK(got.exact);
  CHECK(got.value == doctest::Approx(expect).epsilon(1e-9));

  // unweighted 2→2 equals the largest singular value (Jacobi oracle on AᴴA)
  for (int t = 0; t < 6; ++t) {
    CMat a = random_matrix(4, 4, rng);
    double sv = operator_struct_bound(a, spec, NormedSpace::unweighted_lp(2.0, 4),
                                      NormedSpace::unweighted_lp(2.0, 4), cfg)
                    .value;
    double oracle = std::sqrt(std::max(0.0, jacobi_largest_eig(a.adjoint().mul(a))));
    CHECK(sv == doctest::Approx(oracle).epsilon(1e-9));
  }

  // 1→1 and ∞→∞ closed forms, sampled against the definition
  auto in1 = NormedSpace::weighted_lp(1.0, u), out1 = NormedSpace::weighted_lp(1.0, v);
  auto ininf = NormedSpace::weighted_lp(kInf, u), outinf = NormedSpace::weighted_lp(kInf, v);
  for (int t = 0; t < 4; ++t) {
    CMat a = random_matrix(3, 3, rng);
    for (auto [pin, pout] : std::vector<std::pair<NormedSpace, NormedSpace>>{{in1, out1},
                                                                             {ininf, outinf}}) {
      double bound = operator_struct_bound(a, spec, pin, pout, cfg).value;
      for (int s = 0; s < 200; ++s) {
        CVec x(3);
        for (auto& z : x) z = Cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
        double nx = pin.norm(x);
        if (nx == 0) continue;
        CHECK(pout.norm(a.apply(x)) <= bound * nx * (1 + 1e-9));
      }
    }
  }

  // mixed exponents: sphere-maximization lower estimate stays a lower bound
  auto inm = NormedSpace::weighted_lp(1.5, u), outm = NormedSpace::weighted_lp(4.0, v);
  CMat a = random_matrix(3, 3, rng);
  auto est = operator_struct_bound(a, spec, inm, outm, cfg);
  CHECK_FALSE(est.exact);
  CHECK(est.multistarts > 0);
  for (int s = 0; s < 500; ++s) {
    CVec x(3);
    for (auto& z : x) z = Cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    double nx = inm.norm(x);
    if (nx == 0) continue;
    CHECK(outm.norm(a.apply(x)) <= est.value * nx * (1 + 5e-2) + 1e-9);
  }

  CHECK_THROWS_AS(operator_struct_bound(CMat(2, 3), spec, sp2, sp2, cfg), std::invalid_argument);
}

TEST_CASE("laurent family: evaluation and stein boundary coefficients") {
  Rng rng(11);
  // fam = {0: I}: boundary coefficients reproduce the sequence
  LaurentOperatorFamily id;
  id.coeffs[0] = CMat::identity(2);
  SparseSeq s(2);
  s.set(-1, {Cplx(0.4, 0.1), Cplx(1.0, -0.2)});
  s.set(2, {Cplx(-0.3, 0.8), Cplx(0.2, 0.0)});
  CHECK(stein_boundary_coeffs(id, 0, s) == s);
  CHECK(stein_boundary_coeffs(id, 1, s) == s);

  // fam = {1: A}: block at k is e^j · A · x_{k-1}
  LaurentOperatorFamily shift;
  CMat a = random_matrix(2, 2, rng);
  shift.coeffs[1] = a;
  for (int j : {0, 1}) {
    SparseSeq out = stein_boundary_coeffs(shift, j, s);
    for (const auto& [k, b] : s.entries()) {
      CVec expect = a.apply(b);
      for (auto& z : expect) z *= std::exp(static_cast<double>(j));
      CHECK(max_abs(sub(out.block(k + 1), expect)) <= 1e-12);
    }
  }

  // random family: convolution matches the torus quadrature oracle to 1e-8
  LaurentOperatorFamily fam;
  for (int m : {-2, 0, 1}) fam.coeffs[m] = random_matrix(2, 2, rng);
  for (int j : {0, 1}) {
    SparseSeq conv = stein_boundary_coeffs(fam, j, s);
    int lo = s.min_index() - 2, hi = s.max_index() + 2;
    int nodes = 512;
    for (int k = lo; k <= hi; ++k) {
      CVec acc = zeros(2);
      for (int q = 0; q < nodes; ++q) {
        double t = 2.0 * M_PI * q / nodes;
        // g(t) = Σ_k e^{ikt} T(j+it) x_k, Fourier coefficient k via quadrature
        CVec g = zeros(2);
        for (const auto& [kk, b] : s.entries()) {
          CVec tb = fam.apply_at(Cplx(j, t), b);
          Cplx e = std::polar(1.0, kk * t);
          for (int i = 0; i < 2; ++i) g[i] += e * tb[i];
        }
        Cplx e = std::polar(1.0, -k * t);
        for (int i = 0; i < 2; ++i) acc[i] += e * g[i] / static_cast<double>(nodes);
      }
      CHECK(max_abs(sub(acc, conv.block(k))) <= 1e-8);
    }
  }

  // T(θ) evaluation matches the coefficient sum
  CVec x = {Cplx(1.0, 0.0), Cplx(0.0, 1.0)};
  CVec tx = fam.apply_at(Cplx(0.3, 0.0), x);
  CVec manual = zeros(2);
  for (const auto& [m, am] : fam.coeffs) {
    CVec c = am.apply(x);
    for (int i = 0; i < 2; ++i) manual[i] += std::exp(0.3 * m) * c[i];
  }
  CHECK(max_abs(sub(tx, manual)) <= 1e-12);
}

TEST_CASE("resolvent family: identity split and structure bound") {
  ResolventFamily fam({1.0, 1.0, 1.0});
  for (int k = -20; k <= 20; ++k) {
    CMat s = fam.s_k(k), t = fam.t_k(k);
    double ek = std::exp(static_cast<double>(k));
    CHECK(t.at(0, 0).real() == doctest::Approx(ek / (ek + 1.0)).epsilon(1e-15));
    for (int i = 0; i < 3; ++i)
      CHECK(std::abs(s.at(i, i) + t.at(i, i) - Cplx(1.0, 0.0)) <= 1e-16);
  }

  ResolventFamily gen({0.3, 2.0, 11.0});
  double b = gen.struct_bound(-20, 20);
  double expect = std::exp(20.0) / (std::exp(20.0) + 0.3);
  CHECK(b == doctest::Approx(expect).epsilon(1e-12));
  CHECK(b < 1.0);

  CHECK_THROWS_AS(ResolventFamily({1.0, -0.5}), std::invalid_argument);
}
