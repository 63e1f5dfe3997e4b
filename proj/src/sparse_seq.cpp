#include "ssi/sparse_seq.hpp"

namespace ssi {

SparseSeq cesaro(int n, const SparseSeq& s) {
  if (n < 0) throw std::invalid_argument("cesaro: n must be nonnegative");
  SparseSeq r(s.dim());
  // (1/(n+1)) Σ_{m=0}^{n} 1_{[-m,m]} s  ⇒  block k keeps weight (n+1-|k|)/(n+1).
  for (const auto& [k, b] : s.entries()) {
    int kept = n + 1 - std::abs(k);
    if (kept <= 0) continue;
    double w = static_cast<double>(kept) / static_cast<double>(n + 1);
    CVec nb = b;
    for (Cplx& z : nb) z *= w;
    r.set(k, nb);
  }
  return r;
}

}  // namespace ssi
