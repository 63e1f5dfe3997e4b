#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ssi/harness.hpp"

using namespace ssi;

TEST_CASE("oracle_stein_weiss: endpoint conventions and plain weights") {
  CVec x = {Cplx(1.0, 0.0), Cplx(-2.0, 0.0)};
  std::vector<double> w0{1.0, 2.0}, w1{4.0, 0.5};
  // θ = 0 limit picks w0, equal weights reduce to the plain norm
  CHECK(oracle_stein_weiss(w0, w1, 2.0, 0.0, x) ==
        doctest::Approx(NormedSpace::weighted_lp(2.0, w0).norm(x)));
  CHECK(oracle_stein_weiss(w0, w0, 1.0, 0.37, x) ==
        doctest::Approx(NormedSpace::weighted_lp(1.0, w0).norm(x)));
  double mid = oracle_stein_weiss(w0, w1, 2.0, 0.5, x);
  CHECK(mid == doctest::Approx(NormedSpace::weighted_lp(2.0, {2.0, 1.0}).norm(x)));
  CHECK_THROWS_AS(oracle_stein_weiss({1.0}, w1, 2.0, 0.5, x), std::invalid_argument);
}

TEST_CASE("suite registry and unknown-suite error") {
  auto names = suite_names();
  CHECK(names.size() == 19);
  for (const auto& n : {"axioms", "logconvex", "stein", "intersections"})
    CHECK(is_suite(n));
  CHECK_FALSE(is_suite("nonsense"));
  CHECK_THROWS_AS(run_suite("nonsense", 1, 1), std::invalid_argument);
}

TEST_CASE("small smoke runs of every suite pass and are deterministic") {
  for (const auto& name : suite_names()) {
    int cases = 2;
    VerificationReport r = run_suite(name, 1, cases);
    INFO("suite ", name);
    CHECK(r.passed());
    CHECK(r.records.size() >= 1);
    VerificationReport r2 = run_suite(name, 1, cases);
    REQUIRE(r2.records.size() == r.records.size());
    for (std::size_t i = 0; i < r.records.size(); ++i) {
      CHECK(r.records[i].digest == r2.records[i].digest);
      CHECK(r.records[i].ratio == r2.records[i].ratio);  // bitwise
    }
    // reports serialize with deterministic key order
    Json a = report_to_json(r), b = report_to_json(r2);
    a.erase("wall_seconds");
    b.erase("wall_seconds");
    CHECK(a.dump() == b.dump());
    CHECK(report_to_csv(r) == report_to_csv(r2));
  }
}
