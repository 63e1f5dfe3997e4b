#include "ssi/complex_la.hpp"

#include <cmath>

namespace ssi {

double sigma_max(const CMat& a) {
  if (a.rows == 0 || a.cols == 0) return 0.0;
  CMat b = a.adjoint().mul(a);  // cols x cols, Hermitian PSD
  const std::size_t n = b.rows;

  // Start vector biased toward the dominant column to avoid orthogonal starts.
  CVec v(n, Cplx{1.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) v[i] += Cplx(0.01 * static_cast<double>(i + 1), 0.003 * static_cast<double>(i));

  double lambda = 0.0;
  for (int it = 0; it < 2000; ++it) {
    CVec w = b.apply(v);
    double nw = 0.0;
    for (const Cplx& z : w) nw += std::norm(z);
    nw = std::sqrt(nw);
    if (nw == 0.0) return 0.0;
    for (Cplx& z : w) z /= nw;
    double raleigh = std::real(inner(b.apply(w), w));
    v = std::move(w);
    if (it > 8 && std::abs(raleigh - lambda) <= 1e-15 * std::max(1.0, std::abs(raleigh))) {
      lambda = raleigh;
      break;
    }
    lambda = raleigh;
  }
  return std::sqrt(std::max(0.0, lambda));
}

}  // namespace ssi
