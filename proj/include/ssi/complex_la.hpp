#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ssi {

using Cplx = std::complex<double>;
using CVec = std::vector<Cplx>;

inline CVec zeros(std::size_t n) { return CVec(n, Cplx{0.0, 0.0}); }

inline CVec add(const CVec& a, const CVec& b) {
  CVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline CVec sub(const CVec& a, const CVec& b) {
  CVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline CVec scale(const CVec& a, Cplx s) {
  CVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

inline bool is_zero(const CVec& a) {
  for (const Cplx& z : a)
    if (z != Cplx{0.0, 0.0}) return false;
  return true;
}

/// ⟨x, y⟩ = Σ x_i conj(y_i).
inline Cplx inner(const CVec& x, const CVec& y) {
  Cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
  return s;
}

inline double max_abs(const CVec& a) {
  double m = 0.0;
  for (const Cplx& z : a) m = std::max(m, std::abs(z));
  return m;
}

/// Dense complex matrix, row-major.
struct CMat {
  std::size_t rows = 0, cols = 0;
  CVec data;

  CMat() = default;
  CMat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, Cplx{0, 0}) {}

  Cplx& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Cplx& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  static CMat identity(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  static CMat diagonal(const std::vector<double>& d) {
    CMat m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
    return m;
  }

  CVec apply(const CVec& x) const {
    if (x.size() != cols) throw std::invalid_argument("CMat::apply: dimension mismatch");
    CVec y(rows, Cplx{0, 0});
    for (std::size_t i = 0; i < rows; ++i) {
      Cplx s{0, 0};
      for (std::size_t j = 0; j < cols; ++j) s += at(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }

  CMat adjoint() const {
    CMat m(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m.at(j, i) = std::conj(at(i, j));
    return m;
  }

  CMat mul(const CMat& o) const {
    if (cols != o.rows) throw std::invalid_argument("CMat::mul: shape mismatch");
    CMat m(rows, o.cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t k = 0; k < cols; ++k) {
        Cplx a = at(i, k);
        if (a == Cplx{0, 0}) continue;
        for (std::size_t j = 0; j < o.cols; ++j) m.at(i, j) += a * o.at(k, j);
      }
    return m;
  }
};

/// Largest singular value by power iteration on AᴴA. Deterministic start,
/// tolerance tight enough for the n ≤ 8 matrices used here.
double sigma_max(const CMat& a);

}  // namespace ssi
