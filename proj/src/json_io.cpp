#include "ssi/json_io.hpp"

#include <stdexcept>

namespace ssi {

namespace {

Json p_to_json(double p) {
  if (p == kInf) return Json("inf");
  return Json(p);
}

double p_from_json(const Json& j, const char* what) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInf;
    throw std::invalid_argument(std::string(what) + ": expected a number or \"inf\"");
  }
  if (!j.is_number()) throw std::invalid_argument(std::string(what) + ": expected a number");
  return j.get<double>();
}

void expect_keys(const Json& j, std::initializer_list<const char*> allowed, const char* what) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok)
      throw std::invalid_argument(std::string(what) + ": unknown field \"" + it.key() + "\"");
  }
}

}  // namespace

Json to_json(const NormedSpace& s) {
  Json j;
  j["kind"] = "weighted_lp";
  j["p"] = p_to_json(s.p());
  j["weights"] = s.weights();
  return j;
}

NormedSpace normed_space_from_json(const Json& j) {
  expect_keys(j, {"kind", "p", "weights"}, "norm descriptor");
  if (j.at("kind").get<std::string>() != "weighted_lp")
    throw std::invalid_argument("norm descriptor: unknown kind");
  return NormedSpace::weighted_lp(p_from_json(j.at("p"), "norm descriptor p"),
                                  j.at("weights").get<std::vector<double>>());
}

Json to_json(const Couple& c) {
  Json j;
  j["dim"] = c.dim();
  j["space0"] = to_json(c.space0);
  j["space1"] = to_json(c.space1);
  return j;
}

Couple couple_from_json(const Json& j) {
  expect_keys(j, {"dim", "space0", "space1"}, "couple");
  Couple c{normed_space_from_json(j.at("space0")), normed_space_from_json(j.at("space1"))};
  c.validate();
  if (j.contains("dim") && j.at("dim").get<std::size_t>() != c.dim())
    throw std::invalid_argument("couple: dim field disagrees with the spaces");
  return c;
}

Json to_json(const SeqStructSpec& s) {
  Json j;
  switch (s.kind) {
    case StructKind::Lp:
      j["variant"] = "lp";
      j["p"] = p_to_json(s.p);
      break;
    case StructKind::FourierLp:
      j["variant"] = "fourier_lp";
      j["p"] = p_to_json(s.p);
      j["quad_nodes"] = s.quad_nodes;
      break;
    case StructKind::FourierC:
      j["variant"] = "fourier_c";
      j["quad_nodes"] = s.quad_nodes;
      break;
    case StructKind::Rademacher:
      j["variant"] = "rademacher";
      j["p"] = p_to_json(s.p);
      if (s.mode == RademacherMode::Exact) {
        j["mode"] = "exact";
      } else {
        j["mode"] = "monte_carlo";
        j["samples"] = s.samples;
        j["seed"] = s.seed;
      }
      break;
    case StructKind::Gaussian:
      j["variant"] = "gaussian";
      j["p"] = p_to_json(s.p);
      j["samples"] = s.samples;
      j["seed"] = s.seed;
      break;
    case StructKind::LatticeLq:
      j["variant"] = "lattice_lq";
      j["q"] = p_to_json(s.q);
      break;
  }
  return j;
}

SeqStructSpec struct_from_json(const Json& j) {
  std::string v = j.at("variant").get<std::string>();
  if (v == "lp") {
    expect_keys(j, {"variant", "p"}, "structure");
    return SeqStructSpec::lp(p_from_json(j.at("p"), "structure p"));
  }
  if (v == "fourier_lp") {
    expect_keys(j, {"variant", "p", "quad_nodes"}, "structure");
    return SeqStructSpec::fourier_lp(p_from_json(j.at("p"), "structure p"),
                                     j.value("quad_nodes", 0));
  }
  if (v == "fourier_c") {
    expect_keys(j, {"variant", "quad_nodes"}, "structure");
    return SeqStructSpec::fourier_c(j.value("quad_nodes", 0));
  }
  if (v == "rademacher") {
    expect_keys(j, {"variant", "p", "mode", "samples", "seed"}, "structure");
    double p = p_from_json(j.at("p"), "structure p");
    if (j.value("mode", std::string("exact")) == "exact") return SeqStructSpec::rademacher(p);
    return SeqStructSpec::rademacher_mc(p, j.value("samples", 20000),
                                        j.value("seed", std::uint64_t{1}));
  }
  if (v == "gaussian") {
    expect_keys(j, {"variant", "p", "samples", "seed"}, "structure");
    return SeqStructSpec::gaussian(p_from_json(j.at("p"), "structure p"),
                                   j.value("samples", 20000), j.value("seed", std::uint64_t{1}));
  }
  if (v == "lattice_lq") {
    expect_keys(j, {"variant", "q"}, "structure");
    return SeqStructSpec::lattice_lq(p_from_json(j.at("q"), "structure q"));
  }
  throw std::invalid_argument("structure: unknown variant \"" + v + "\"");
}

Json to_json(const SparseSeq& s) {
  Json j;
  j["dim"] = s.dim();
  Json entries = Json::array();
  for (const auto& [k, b] : s.entries()) {
    Json e;
    e["k"] = k;
    std::vector<double> re(b.size()), im(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
      re[i] = b[i].real();
      im[i] = b[i].imag();
    }
    e["re"] = re;
    e["im"] = im;
    entries.push_back(e);
  }
  j["entries"] = entries;
  return j;
}

SparseSeq seq_from_json(const Json& j) {
  expect_keys(j, {"dim", "entries"}, "sequence");
  SparseSeq s(j.at("dim").get<std::size_t>());
  for (const Json& e : j.at("entries")) {
    expect_keys(e, {"k", "re", "im"}, "sequence entry");
    auto re = e.at("re").get<std::vector<double>>();
    auto im = e.value("im", std::vector<double>(re.size(), 0.0));
    if (re.size() != s.dim() || im.size() != s.dim())
      throw std::invalid_argument("sequence entry: block length disagrees with dim");
    CVec b(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) b[i] = Cplx(re[i], im[i]);
    s.set(e.at("k").get<int>(), b);
  }
  return s;
}

Json to_json(const SolverConfig& c) {
  Json j;
  j["rel_tol"] = c.rel_tol;
  j["max_iters"] = c.max_iters;
  j["restarts"] = c.restarts;
  j["seed"] = c.seed;
  return j;
}

SolverConfig solver_from_json(const Json& j) {
  expect_keys(j, {"rel_tol", "max_iters", "restarts", "seed"}, "solver");
  SolverConfig c;
  c.rel_tol = j.value("rel_tol", c.rel_tol);
  c.max_iters = j.value("max_iters", c.max_iters);
  c.restarts = j.value("restarts", c.restarts);
  c.seed = j.value("seed", c.seed);
  if (!(c.rel_tol > 0)) throw std::invalid_argument("solver: rel_tol must be positive");
  return c;
}

Json to_json(const InterpProblem& p) {
  Json j;
  j["schema"] = "v1";
  j["couple"] = to_json(p.couple);
  j["struct0"] = to_json(p.struct0);
  j["struct1"] = to_json(p.struct1);
  j["theta"] = p.theta;
  j["base"] = p.base;
  j["window"] = p.window;
  j["solver"] = to_json(p.solver);
  return j;
}

InterpProblem problem_from_json(const Json& j) {
  expect_keys(j, {"schema", "couple", "struct0", "struct1", "theta", "base", "window", "solver",
                  "x"},
              "problem");
  if (j.value("schema", std::string("v1")) != "v1")
    throw std::invalid_argument("problem: unsupported schema (expected \"v1\")");
  InterpProblem p;
  p.couple = couple_from_json(j.at("couple"));
  p.struct0 = struct_from_json(j.at("struct0"));
  p.struct1 = struct_from_json(j.at("struct1"));
  p.theta = j.value("theta", 0.5);
  p.base = j.value("base", 2.718281828459045235);
  p.window = j.value("window", 8);
  if (j.contains("solver")) p.solver = solver_from_json(j.at("solver"));
  p.validate();
  return p;
}

CVec cvec_from_json(const Json& j) {
  expect_keys(j, {"re", "im"}, "vector");
  auto re = j.at("re").get<std::vector<double>>();
  auto im = j.value("im", std::vector<double>(re.size(), 0.0));
  if (im.size() != re.size()) throw std::invalid_argument("vector: re/im length mismatch");
  CVec v(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) v[i] = Cplx(re[i], im[i]);
  return v;
}

Json cvec_to_json(const CVec& v) {
  std::vector<double> re(v.size()), im(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    re[i] = v[i].real();
    im[i] = v[i].imag();
  }
  Json j;
  j["re"] = re;
  j["im"] = im;
  return j;
}

Json solution_to_json(const InterpSolution& s) {
  Json j;
  j["value"] = s.value;
  j["lower_hint"] = s.lower_hint;
  j["iterations"] = s.iterations;
  j["converged"] = s.converged;
  j["error_interval"] = {s.err_lo, s.err_hi};
  j["window_warning"] = s.window_warning;
  j["certificate"] = to_json(s.certificate);
  if (!s.certificate2.empty()) j["certificate2"] = to_json(s.certificate2);
  return j;
}

}  // namespace ssi
