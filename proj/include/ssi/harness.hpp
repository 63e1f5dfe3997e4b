#pragma once

#include <functional>
#include <string>

#include "ssi/interp.hpp"
#include "ssi/json_io.hpp"
#include "ssi/operators.hpp"
#include "ssi/rng.hpp"

namespace ssi {

/// One verification instance: the measured ratio against its theoretical
/// bound. pass ⇔ ratio ≤ bound (each suite folds its tolerance into bound).
struct CaseRecord {
  std::string digest;
  double ratio = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::string note;
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  int cases = 0;
  std::vector<CaseRecord> records;
  double max_ratio = 0.0;
  int failures = 0;
  double wall_seconds = 0.0;

  bool passed() const { return failures == 0; }
  void add(CaseRecord r);
  void finish();  // sort by digest, recompute the summary
};

std::vector<std::string> suite_names();
bool is_suite(const std::string& name);

/// Execute one named suite; deterministic under (seed, cases).
VerificationReport run_suite(const std::string& name, std::uint64_t seed, int cases);

/// Classical Stein–Weiss closed form: the ℓᵖ norm of x with the geometric-mean
/// weight (w⁰)^{1−θ}(w¹)^θ. Used purely as a cross-check target.
double oracle_stein_weiss(const std::vector<double>& w0, const std::vector<double>& w1, double p,
                          double theta, const CVec& x);

Json report_to_json(const VerificationReport& r);
std::string report_to_csv(const VerificationReport& r);

namespace harness {

/// Shared instance sampler: dims {1,2,4,8}, log-uniform weights in [e⁻²,e²],
/// θ from {0.25,0.5,0.75} plus uniform draws, p from {1,1.5,2,4,∞}.
struct Gen {
  Rng rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  std::size_t dim(std::size_t cap = 8) {
    static const std::size_t dims[] = {1, 2, 4, 8};
    std::size_t d = dims[rng.next_below(4)];
    return std::min(d, cap);
  }
  double weight() { return std::exp(rng.uniform(-2.0, 2.0)); }
  std::vector<double> weights(std::size_t n) {
    std::vector<double> w(n);
    for (double& v : w) v = weight();
    return w;
  }
  double theta() {
    static const double grid[] = {0.25, 0.5, 0.75};
    if (rng.next_below(2) == 0) return grid[rng.next_below(3)];
    return rng.uniform(0.1, 0.9);
  }
  double pexp(bool allow_inf = true) {
    static const double grid[] = {1.0, 1.5, 2.0, 4.0, kInf};
    double p = grid[rng.next_below(allow_inf ? 5 : 4)];
    return p;
  }
  NormedSpace space(std::size_t n, bool allow_inf = true) {
    return NormedSpace::weighted_lp(pexp(allow_inf), weights(n));
  }
  Couple couple(std::size_t n, bool allow_inf = true) {
    return Couple{space(n, allow_inf), space(n, allow_inf)};
  }
  CVec vec(std::size_t n, bool complex_entries = true) {
    CVec v(n);
    for (auto& z : v)
      z = Cplx(rng.uniform(-2.0, 2.0), complex_entries ? rng.uniform(-2.0, 2.0) : 0.0);
    return v;
  }
  CVec nonzero_vec(std::size_t n, bool complex_entries = true) {
    for (;;) {
      CVec v = vec(n, complex_entries);
      if (max_abs(v) > 0.05) return v;
    }
  }
  SparseSeq seq(std::size_t n, int lo, int hi, double density = 0.8) {
    SparseSeq s(n);
    for (int k = lo; k <= hi; ++k) {
      if (rng.next_double() > density) continue;
      s.set(k, vec(n));
    }
    if (s.empty()) s.set(0, nonzero_vec(n));
    return s;
  }

  std::string digest(int case_idx) {
    return "c" + std::to_string(case_idx) + "-" +
           std::to_string(Rng::hash(rng.next_u64(), static_cast<std::uint64_t>(case_idx)) & 0xffffffu);
  }
};

SolverConfig suite_solver(std::uint64_t seed);

VerificationReport suite_axioms(std::uint64_t seed, int cases);
VerificationReport suite_sandwich(std::uint64_t seed, int cases);
VerificationReport suite_cesaro(std::uint64_t seed, int cases);
VerificationReport suite_gaussian_hilbert(std::uint64_t seed, int cases);
VerificationReport suite_embeddings_basic(std::uint64_t seed, int cases);
VerificationReport suite_logconvex(std::uint64_t seed, int cases);
VerificationReport suite_mean_method(std::uint64_t seed, int cases);
VerificationReport suite_finite_rep(std::uint64_t seed, int cases);
VerificationReport suite_real_bracket(std::uint64_t seed, int cases);
VerificationReport suite_complex_view(std::uint64_t seed, int cases);
VerificationReport suite_base_change(std::uint64_t seed, int cases);
VerificationReport suite_duality_lp(std::uint64_t seed, int cases);
VerificationReport suite_bfs_identity(std::uint64_t seed, int cases);
VerificationReport suite_operator(std::uint64_t seed, int cases);
VerificationReport suite_stein(std::uint64_t seed, int cases);
VerificationReport suite_jk_classes(std::uint64_t seed, int cases);
VerificationReport suite_reiteration_real(std::uint64_t seed, int cases);
VerificationReport suite_reiteration_hilbert(std::uint64_t seed, int cases);
VerificationReport suite_intersections(std::uint64_t seed, int cases);

}  // namespace harness

}  // namespace ssi
