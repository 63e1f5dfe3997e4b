// Command-line front end: single computations on problem files, named
// verification suites, JSON/CSV report emission.
//
//   ssi interp norm --problem p.json [--theta T] [--base B] [--window N] ...
//   ssi interp mean --problem p.json
//   ssi interp kfunc --problem p.json --t 2.0
//   ssi interp cl-product --problem p.json
//   ssi space eval --problem space.json
//   ssi seq norm --problem seq.json
//   ssi verify <suite>|all [--seed S] [--cases N] [--format json|csv] [--out F]
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "ssi/harness.hpp"

using namespace ssi;

namespace {

struct CommonOpts {
  std::string problem_file;
  std::string out_file;
  std::string format = "json";
  double theta = -1.0;
  double base = -1.0;
  int window = -1;
  double solver_tol = -1.0;
  int max_iters = -1;
  int restarts = -1;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int cases = 0;
  double t_param = 1.0;
  bool no_timestamp = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--problem", o.problem_file, "JSON problem file");
  cmd->add_option("--theta", o.theta, "interpolation parameter in (0,1)");
  cmd->add_option("--base", o.base, "base number b > 1");
  cmd->add_option("--window", o.window, "decomposition window N");
  cmd->add_option("--solver-tol", o.solver_tol, "solver relative tolerance");
  cmd->add_option("--max-iters", o.max_iters, "solver iteration budget");
  cmd->add_option("--restarts", o.restarts, "solver restarts");
  cmd->add_option("--seed", o.seed, "random seed")->each([&o](const std::string&) {
    o.seed_set = true;
  });
  cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", o.out_file, "write the report to a file instead of stdout");
  cmd->add_flag("--no-timestamp", o.no_timestamp, "omit the timestamp field from reports");
}

std::uint64_t effective_seed(const CommonOpts& o) {
  if (o.seed_set) return o.seed;
  if (const char* env = std::getenv("INTERP_SEED")) return std::strtoull(env, nullptr, 10);
  return 1;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

InterpProblem load_problem(const CommonOpts& o, Json& j) {
  if (o.problem_file.empty()) throw std::invalid_argument("--problem <file> is required");
  j = load_json(o.problem_file);
  InterpProblem p = problem_from_json(j);
  // flags override file fields
  if (o.theta > 0) p.theta = o.theta;
  if (o.base > 0) p.base = o.base;
  if (o.window > 0) p.window = o.window;
  if (o.solver_tol > 0) p.solver.rel_tol = o.solver_tol;
  if (o.max_iters > 0) p.solver.max_iters = o.max_iters;
  if (o.restarts > 0) p.solver.restarts = o.restarts;
  if (o.seed_set) p.solver.seed = o.seed;
  p.validate();
  return p;
}

void emit(const CommonOpts& o, const Json& body, const std::string& csv = "") {
  Json out = body;
  if (!o.no_timestamp)
    out["timestamp"] =
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count();
  std::string text = (o.format == "csv" && !csv.empty()) ? csv : out.dump(2) + "\n";
  if (o.out_file.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out_file);
    f << text;
  }
}

int run_verify(const CommonOpts& o, const std::string& which) {
  std::uint64_t seed = effective_seed(o);
  std::vector<std::string> names;
  if (which == "all")
    names = suite_names();
  else if (is_suite(which))
    names = {which};
  else
    throw std::invalid_argument("unknown suite \"" + which + "\"");

  Json all = Json::array();
  std::string csv;
  bool ok = true;
  for (const auto& name : names) {
    int cases = o.cases > 0 ? o.cases : 50;
    VerificationReport r = run_suite(name, seed, cases);
    ok = ok && r.passed();
    Json j = report_to_json(r);
    if (o.no_timestamp) j.erase("wall_seconds");
    all.push_back(j);
    if (csv.empty())
      csv = report_to_csv(r);
    else {
      std::string body = report_to_csv(r);
      csv += body.substr(body.find('\n') + 1);
    }
    std::cerr << (r.passed() ? "PASS " : "FAIL ") << name << "  cases=" << r.cases
              << " max_ratio_over_bound=" << r.max_ratio << "\n";
  }
  Json body;
  body["reports"] = all;
  body["passed"] = ok;
  emit(o, body, csv);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sequentially structured interpolation toolkit"};
  app.require_subcommand(1);

  CommonOpts o;

  auto* space = app.add_subcommand("space", "normed-space operations");
  auto* space_eval = space->add_subcommand("eval", "evaluate a norm and its dual norm");
  add_common(space_eval, o);

  auto* seq = app.add_subcommand("seq", "sequence-structure operations");
  auto* seq_norm_cmd = seq->add_subcommand("norm", "evaluate a structure norm");
  add_common(seq_norm_cmd, o);

  auto* interp = app.add_subcommand("interp", "interpolation computations");
  auto* i_norm = interp->add_subcommand("norm", "interpolation norm of x");
  auto* i_mean = interp->add_subcommand("mean", "mean-method norm of x");
  auto* i_kfunc = interp->add_subcommand("kfunc", "K- and J-functionals at t");
  auto* i_cl = interp->add_subcommand("cl-product", "Calderon-Lozanovskii product norm");
  for (auto* c : {i_norm, i_mean, i_kfunc, i_cl}) add_common(c, o);
  i_kfunc->add_option("--t", o.t_param, "K-functional parameter t > 0");

  auto* verify = app.add_subcommand("verify", "run a verification suite (or \"all\")");
  std::string suite_arg;
  verify->add_option("suite", suite_arg, "suite name or \"all\"")->required();
  add_common(verify, o);
  verify->add_option("--cases", o.cases, "cases per suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (space_eval->parsed()) {
      Json j = load_json(o.problem_file.empty() ? throw std::invalid_argument("--problem required")
                                                : o.problem_file);
      NormedSpace sp = normed_space_from_json(j.at("space"));
      CVec x = cvec_from_json(j.at("x"));
      Json body;
      body["norm"] = sp.norm(x);
      body["dual_norm"] = sp.dual_norm(x);
      emit(o, body);
      return 0;
    }
    if (seq_norm_cmd->parsed()) {
      Json j = load_json(o.problem_file);
      SeqStructSpec spec = struct_from_json(j.at("struct"));
      NormedSpace sp = normed_space_from_json(j.at("space"));
      SparseSeq s = seq_from_json(j.at("seq"));
      NormEstimate e = seq_norm(spec, sp, s);
      Json body;
      body["value"] = e.value;
      body["error_interval"] = {e.lo, e.hi};
      emit(o, body);
      return 0;
    }
    if (i_norm->parsed() || i_mean->parsed() || i_cl->parsed() || i_kfunc->parsed()) {
      Json j;
      InterpProblem p = load_problem(o, j);
      if (!j.contains("x")) throw std::invalid_argument("problem file needs an \"x\" vector");
      CVec x = cvec_from_json(j.at("x"));
      InterpSolution sol;
      Json body;
      if (i_norm->parsed()) {
        sol = interp_norm(p, x);
      } else if (i_mean->parsed()) {
        sol = mean_norm(p, x);
      } else if (i_cl->parsed()) {
        sol = calderon_lozanovskii_norm(p.couple, p.theta, x, p.solver);
      } else {
        if (!(o.t_param > 0)) throw std::invalid_argument("--t must be positive");
        sol = k_functional(p.couple, o.t_param, x, p.solver);
        body["j_functional"] = j_functional(p.couple, o.t_param, x);
      }
      Json js = solution_to_json(sol);
      for (auto it = js.begin(); it != js.end(); ++it) body[it.key()] = it.value();
      emit(o, body);
      return 0;
    }
    if (verify->parsed()) return run_verify(o, suite_arg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
