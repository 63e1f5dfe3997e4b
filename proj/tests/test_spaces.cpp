#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ssi/normed_space.hpp"
#include "ssi/rng.hpp"
#include "ssi/sparse_seq.hpp"

using namespace ssi;

namespace {

/// Brute-force dual norm: sup |⟨x,v⟩| over a dense sample of the primal unit
/// sphere, independent of the closed-form route in NormedSpace::dual_norm.
double dual_norm_bruteforce(const NormedSpace& sp, const CVec& v, int samples, std::uint64_t seed) {
  Rng rng(seed);
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    CVec x(sp.dim());
    for (auto& z : x) z = Cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    double nx = sp.norm(x);
    if (nx == 0.0) continue;
    best = std::max(best, std::abs(inner(x, v)) / nx);
  }
  return best;
}

CVec cv(std::initializer_list<double> re) {
  CVec v;
  for (double r : re) v.emplace_back(r, 0.0);
  return v;
}

}  // namespace

TEST_CASE("weighted lp norms: pinned examples") {
  auto e2 = NormedSpace::weighted_lp(2.0, {1.0, 1.0});
  CHECK(e2.norm(cv({3.0, 4.0})) == doctest::Approx(5.0).epsilon(1e-12));

  auto e1 = NormedSpace::weighted_lp(1.0, {2.0, 3.0});
  CHECK(e1.norm({Cplx(1, 0), Cplx(-1, 0)}) == doctest::Approx(5.0).epsilon(1e-12));

  auto einf = NormedSpace::weighted_lp(kInf, {1.0, 2.0});
  CHECK(einf.norm(cv({3.0, 1.0})) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("dual norms: pinned examples and brute-force oracle") {
  auto e2 = NormedSpace::weighted_lp(2.0, {1.0, 1.0});
  CHECK(e2.dual_norm(cv({0.0, 1.0})) == doctest::Approx(1.0).epsilon(1e-12));

  auto e1 = NormedSpace::weighted_lp(1.0, {2.0, 3.0});
  CHECK(e1.dual_norm(cv({2.0, 3.0})) == doctest::Approx(1.0).epsilon(1e-12));
  // Sphere-sampling oracle (n = 2) approaches the same value from below.
  double brute = dual_norm_bruteforce(e1, cv({2.0, 3.0}), 40000, 7);
  CHECK(brute <= 1.0 + 1e-9);
  CHECK(brute >= 1.0 - 2e-3);

  auto einf = NormedSpace::weighted_lp(kInf, {1.0, 1.0});
  CHECK(einf.dual_norm(cv({1.0, 1.0})) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("dual of dual recovers the norm on sampled vectors") {
  Rng rng(11);
  for (double p : {1.0, 1.5, 2.0, 4.0, kInf}) {
    std::vector<double> w{0.7, 1.9, 3.2};
    auto sp = NormedSpace::weighted_lp(p, w);
    auto dd = sp.dual().dual();
    for (int t = 0; t < 25; ++t) {
      CVec x(3);
      for (auto& z : x) z = Cplx(rng.uniform(-2, 2), rng.uniform(-2, 2));
      CHECK(dd.norm(x) == doctest::Approx(sp.norm(x)).epsilon(1e-9));
    }
  }
}

TEST_CASE("norm axioms sampled: homogeneity, triangle, lattice monotonicity") {
  Rng rng(23);
  for (double p : {1.0, 1.7, 2.0, 3.0, kInf}) {
    std::vector<double> w{1.3, 0.4, 2.2, 0.9};
    auto sp = NormedSpace::weighted_lp(p, w);
    for (int t = 0; t < 40; ++t) {
      CVec x(4), y(4);
      for (auto& z : x) z = Cplx(rng.uniform(-2, 2), rng.uniform(-2, 2));
      for (auto& z : y) z = Cplx(rng.uniform(-2, 2), rng.uniform(-2, 2));
      Cplx a(rng.uniform(-2, 2), rng.uniform(-2, 2));
      CHECK(sp.norm(scale(x, a)) == doctest::Approx(std::abs(a) * sp.norm(x)).epsilon(1e-9));
      CHECK(sp.norm(add(x, y)) <= sp.norm(x) + sp.norm(y) + 1e-9);
      // |u| <= |x| entrywise ⇒ ‖u‖ <= ‖x‖
      CVec u = x;
      for (auto& z : u) z *= rng.next_double();
      CHECK(sp.norm(u) <= sp.norm(x) + 1e-9);
    }
  }
}

TEST_CASE("couple: intersection norm and validation") {
  Couple c{NormedSpace::weighted_lp(1.0, {1.0, 1.0}), NormedSpace::weighted_lp(kInf, {1.0, 1.0})};
  c.validate();
  CHECK(c.intersection_norm(cv({1.0, 1.0})) == doctest::Approx(2.0));
  CHECK(c.intersection_norm(cv({0.0, 0.0})) == doctest::Approx(0.0));
  Couple same{NormedSpace::weighted_lp(2.0, {1.0, 2.0}), NormedSpace::weighted_lp(2.0, {1.0, 2.0})};
  CHECK(same.intersection_norm(cv({1.0, 1.0})) == doctest::Approx(same.space0.norm(cv({1.0, 1.0}))));

  Couple bad{NormedSpace::weighted_lp(1.0, {1.0}), NormedSpace::weighted_lp(1.0, {1.0, 1.0})};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS_AS(c.space0.norm(cv({1.0, 2.0, 3.0})), std::invalid_argument);
}

TEST_CASE("sparse sequences: algebra, translation, reflection, cesaro") {
  SparseSeq s(1);
  s.set(-1, cv({1.0}));
  s.set(0, cv({2.0}));
  s.set(1, cv({3.0}));

  CHECK(s.sum_blocks()[0] == Cplx(6.0, 0.0));
  CHECK(s.translated(3).min_index() == 2);
  CHECK(s.reflected().reflected() == s);
  CHECK(SparseSeq::delta(0, cv({1.0})).translated(3) == SparseSeq::delta(3, cv({1.0})));

  // Hand evaluation: (a, b, c) at (-1, 0, 1), n = 1 → (a/2, b, c/2).
  SparseSeq c1 = cesaro(1, s);
  CHECK(c1.block(-1)[0].real() == doctest::Approx(0.5));
  CHECK(c1.block(0)[0].real() == doctest::Approx(2.0));
  CHECK(c1.block(1)[0].real() == doctest::Approx(1.5));

  // n = 0 keeps only index 0; block k carries the triangular weight
  // (n+1-|k|)/(n+1), so C_n s → s but with equality only in the limit.
  CHECK(cesaro(0, s) == SparseSeq::delta(0, cv({2.0})));
  SparseSeq c10 = cesaro(10, s);
  CHECK(c10.block(-1)[0].real() == doctest::Approx(10.0 / 11.0));
  CHECK(c10.block(0)[0].real() == doctest::Approx(2.0));
  CHECK(max_abs(c10.minus(s).block(1)) == doctest::Approx(3.0 / 11.0));
  // truncation recovers s exactly once it covers the support
  CHECK(s.truncated(-1, 1) == s);
  CHECK(s.truncated(-10, 10) == s);

  // zero blocks are never stored
  SparseSeq z(2);
  z.set(4, zeros(2));
  CHECK(z.empty());
  CHECK(s.minus(s).empty());
}
