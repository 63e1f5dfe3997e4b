#pragma once

#include <map>
#include <stdexcept>

#include "ssi/complex_la.hpp"

namespace ssi {

/// Finitely supported sequence ℤ → ℂⁿ, the universal decomposition object.
/// Canonical form: zero blocks are never stored, so translation invariance
/// and index algebra are exact identities rather than approximations.
class SparseSeq {
 public:
  SparseSeq() = default;
  explicit SparseSeq(std::size_t dim) : dim_(dim) {}

  static SparseSeq delta(int k, const CVec& block) {
    SparseSeq s(block.size());
    s.set(k, block);
    return s;
  }

  std::size_t dim() const { return dim_; }
  const std::map<int, CVec>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  void set(int k, const CVec& block) {
    if (block.size() != dim_) throw std::invalid_argument("SparseSeq::set: block dim mismatch");
    if (is_zero(block))
      entries_.erase(k);
    else
      entries_[k] = block;
  }

  /// Block at k (zero vector if absent).
  CVec block(int k) const {
    auto it = entries_.find(k);
    return it == entries_.end() ? zeros(dim_) : it->second;
  }

  int min_index() const { return entries_.empty() ? 0 : entries_.begin()->first; }
  int max_index() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }

  /// Number of index positions spanned, max − min + 1 (0 when empty).
  int support_width() const {
    return entries_.empty() ? 0 : max_index() - min_index() + 1;
  }
  std::size_t support_size() const { return entries_.size(); }

  /// Σ_k x_k.
  CVec sum_blocks() const {
    CVec s = zeros(dim_);
    for (const auto& [k, b] : entries_)
      for (std::size_t i = 0; i < dim_; ++i) s[i] += b[i];
    return s;
  }

  SparseSeq translated(int m) const {
    SparseSeq r(dim_);
    for (const auto& [k, b] : entries_) r.entries_[k + m] = b;
    return r;
  }

  SparseSeq reflected() const {
    SparseSeq r(dim_);
    for (const auto& [k, b] : entries_) r.entries_[-k] = b;
    return r;
  }

  /// Restriction to indices [lo, hi].
  SparseSeq truncated(int lo, int hi) const {
    SparseSeq r(dim_);
    for (const auto& [k, b] : entries_)
      if (k >= lo && k <= hi) r.entries_[k] = b;
    return r;
  }

  /// Entrywise rescaling x_k ← c(k)·x_k.
  template <typename Fn>
  SparseSeq rescaled(Fn&& factor) const {
    SparseSeq r(dim_);
    for (const auto& [k, b] : entries_) {
      CVec nb = b;
      Cplx c = factor(k);
      for (Cplx& z : nb) z *= c;
      if (!is_zero(nb)) r.entries_[k] = std::move(nb);
    }
    return r;
  }

  SparseSeq plus(const SparseSeq& o) const {
    if (o.dim_ != dim_) throw std::invalid_argument("SparseSeq::plus: dim mismatch");
    SparseSeq r = *this;
    for (const auto& [k, b] : o.entries_) r.set(k, add(r.block(k), b));
    return r;
  }

  SparseSeq minus(const SparseSeq& o) const {
    if (o.dim_ != dim_) throw std::invalid_argument("SparseSeq::minus: dim mismatch");
    SparseSeq r = *this;
    for (const auto& [k, b] : o.entries_) r.set(k, sub(r.block(k), b));
    return r;
  }

  bool operator==(const SparseSeq& o) const {
    return dim_ == o.dim_ && entries_ == o.entries_;
  }

 private:
  std::size_t dim_ = 0;
  std::map<int, CVec> entries_;
};

/// Cesàro operator C_n: average of the truncations to [−m, m], m = 0..n.
SparseSeq cesaro(int n, const SparseSeq& s);

}  // namespace ssi
