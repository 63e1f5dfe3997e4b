#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace ssi::detail {

/// Smoothed objective with gradient; `mu` is the smoothing temperature.
struct SmoothProblem {
  virtual ~SmoothProblem() = default;
  virtual double eval(const std::vector<double>& v, double mu, std::vector<double>* grad) const = 0;
  virtual std::size_t size() const = 0;
};

struct DescentResult {
  std::vector<double> v;
  long iterations = 0;
  bool converged = false;
};

inline std::vector<double> default_schedule(double unit, double rel_tol,
                                            const std::vector<double>& user) {
  if (!user.empty()) return user;
  std::vector<double> s;
  double mu = 0.05 * unit;
  double floor_mu = std::max(0.02 * rel_tol * unit, 1e-14 * unit);
  while (mu > floor_mu && s.size() < 24) {
    s.push_back(mu);
    mu *= 0.25;
  }
  s.push_back(floor_mu);
  return s;
}

/// FISTA with backtracking line search and adaptive restart, run over a
/// decreasing temperature schedule; warm-starts each stage from the last.
inline DescentResult descend(const SmoothProblem& prob, std::vector<double> v0,
                             const std::vector<double>& schedule, double unit, double rel_tol,
                             long budget) {
  DescentResult res;
  res.v = std::move(v0);
  const std::size_t dim = prob.size();
  if (dim == 0 || budget <= 0) {
    res.converged = true;
    return res;
  }
  std::vector<double> x = res.v, xnew = res.v, y = res.v, g(dim);
  long used = 0;
  const long per_stage = std::max<long>(40, budget / std::max<std::size_t>(1, schedule.size()));
  bool last_stage_converged = false;

  for (std::size_t si = 0; si < schedule.size(); ++si) {
    double mu = schedule[si];
    double L = 1.0 / std::max(unit, 1e-300);
    double t = 1.0;
    y = x;
    double fx = prob.eval(x, mu, nullptr);
    double best = fx;
    long stall = 0;
    last_stage_converged = false;
    for (long it = 0; it < per_stage && used < budget; ++it, ++used) {
      std::fill(g.begin(), g.end(), 0.0);
      double fy = prob.eval(y, mu, &g);
      double gn2 = 0.0;
      for (double gv : g) gn2 += gv * gv;
      if (gn2 == 0.0) {
        last_stage_converged = true;
        break;
      }
      double fnew = 0.0;
      for (int bt = 0; bt < 60; ++bt) {
        for (std::size_t d = 0; d < dim; ++d) xnew[d] = y[d] - g[d] / L;
        fnew = prob.eval(xnew, mu, nullptr);
        if (fnew <= fy - 0.5 * gn2 / L + 1e-300) break;
        L *= 2.0;
      }
      double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      if (fnew > fx) {
        y = x;  // adaptive restart: drop momentum
        t = 1.0;
        ++stall;
      } else {
        for (std::size_t d = 0; d < dim; ++d) {
          double xv = xnew[d];
          y[d] = xv + ((t - 1.0) / tn) * (xv - x[d]);
          x[d] = xv;
        }
        fx = fnew;
        t = tn;
      }
      L *= 0.95;
      if (best - fx > mu * 0.01 + rel_tol * unit * 0.02) {
        best = fx;
        stall = 0;
      } else if (++stall > 30) {
        last_stage_converged = true;
        break;
      }
    }
    if (used >= budget) break;
  }
  res.v = x;
  res.iterations = used;
  res.converged = last_stage_converged;
  return res;
}

}  // namespace ssi::detail
