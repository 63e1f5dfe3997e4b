#include "ssi/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ssi {

void VerificationReport::add(CaseRecord r) {
  r.pass = r.ratio <= r.bound;
  records.push_back(std::move(r));
}

void VerificationReport::finish() {
  std::sort(records.begin(), records.end(),
            [](const CaseRecord& a, const CaseRecord& b) { return a.digest < b.digest; });
  max_ratio = 0.0;
  failures = 0;
  for (const auto& r : records) {
    max_ratio = std::max(max_ratio, r.bound > 0 ? r.ratio / r.bound : r.ratio);
    if (!r.pass) ++failures;
  }
}

double oracle_stein_weiss(const std::vector<double>& w0, const std::vector<double>& w1, double p,
                          double theta, const CVec& x) {
  if (w0.size() != w1.size() || w0.size() != x.size())
    throw std::invalid_argument("oracle_stein_weiss: dimension mismatch");
  std::vector<double> w(w0.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    // θ → 0 / 1 limit conventions pick the corresponding endpoint weight.
    w[i] = theta <= 0.0
               ? w0[i]
               : (theta >= 1.0 ? w1[i] : std::pow(w0[i], 1.0 - theta) * std::pow(w1[i], theta));
  }
  return NormedSpace::weighted_lp(p, w).norm(x);
}

namespace harness {

SolverConfig suite_solver(std::uint64_t seed) {
  SolverConfig cfg;
  cfg.max_iters = 5000;
  cfg.restarts = 2;
  cfg.rel_tol = 1e-7;
  cfg.seed = seed;
  return cfg;
}

}  // namespace harness

namespace {

using SuiteFn = VerificationReport (*)(std::uint64_t, int);

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> reg = {
      {"axioms", harness::suite_axioms},
      {"sandwich", harness::suite_sandwich},
      {"cesaro", harness::suite_cesaro},
      {"gaussian-hilbert", harness::suite_gaussian_hilbert},
      {"embeddings-basic", harness::suite_embeddings_basic},
      {"logconvex", harness::suite_logconvex},
      {"mean-method", harness::suite_mean_method},
      {"finite-rep", harness::suite_finite_rep},
      {"real-bracket", harness::suite_real_bracket},
      {"complex-view", harness::suite_complex_view},
      {"base-change", harness::suite_base_change},
      {"duality-lp", harness::suite_duality_lp},
      {"bfs-identity", harness::suite_bfs_identity},
      {"operator", harness::suite_operator},
      {"stein", harness::suite_stein},
      {"jk-classes", harness::suite_jk_classes},
      {"reiteration-real", harness::suite_reiteration_real},
      {"reiteration-hilbert-complex", harness::suite_reiteration_hilbert},
      {"intersections", harness::suite_intersections},
  };
  return reg;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : registry()) names.push_back(k);
  return names;
}

bool is_suite(const std::string& name) { return registry().count(name) > 0; }

VerificationReport run_suite(const std::string& name, std::uint64_t seed, int cases) {
  auto it = registry().find(name);
  if (it == registry().end())
    throw std::invalid_argument("run_suite: unknown suite \"" + name + "\"");
  auto t0 = std::chrono::steady_clock::now();
  VerificationReport r = it->second(seed, cases);
  r.suite = name;
  r.seed = seed;
  r.cases = static_cast<int>(r.records.size());
  r.finish();
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

Json report_to_json(const VerificationReport& r) {
  Json j;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["cases"] = r.cases;
  j["passed"] = r.passed();
  j["failures"] = r.failures;
  j["max_ratio_over_bound"] = r.max_ratio;
  j["wall_seconds"] = r.wall_seconds;
  Json recs = Json::array();
  for (const auto& c : r.records) {
    Json e;
    e["digest"] = c.digest;
    e["ratio"] = c.ratio;
    e["bound"] = c.bound;
    e["pass"] = c.pass;
    if (!c.note.empty()) e["note"] = c.note;
    recs.push_back(e);
  }
  j["records"] = recs;
  return j;
}

std::string report_to_csv(const VerificationReport& r) {
  std::ostringstream out;
  out << "suite,digest,ratio,bound,pass,note\n";
  out.precision(17);
  for (const auto& c : r.records) {
    std::string note = c.note;
    for (char& ch : note)
      if (ch == ',') ch = ';';
    out << r.suite << ',' << c.digest << ',' << c.ratio << ',' << c.bound << ','
        << (c.pass ? 1 : 0) << ',' << note << '\n';
  }
  return out.str();
}

}  // namespace ssi
