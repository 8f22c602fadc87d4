#include "brs/linalg.hpp"

#include "brs/errors.hpp"

namespace brs {

RVector RMatrix::mul(const RVector& x) const {
  if (x.size() != n_) throw DimensionMismatch("matrix-vector size mismatch");
  mpfr_prec_t p = n_ ? m_[0].prec() : 64;
  RVector y(n_, Real(p));
  for (std::size_t i = 0; i < n_; ++i) {
    Real acc(p);
    for (std::size_t j = 0; j < n_; ++j) acc += at(i, j) * x[j];
    y[i] = std::move(acc);
  }
  return y;
}

RMatrix RMatrix::inverse(Real& det, const Real& min_pivot) const {
  const std::size_t n = n_;
  mpfr_prec_t p = n ? m_[0].prec() : 64;
  RMatrix a = *this;
  RMatrix inv(n, p);
  for (std::size_t i = 0; i < n; ++i) inv.at(i, i) = Real::from_long(1, p);

  det = Real::from_long(1, p);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (a.at(r, col).abs() > a.at(piv, col).abs()) piv = r;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a.at(col, j), a.at(piv, j));
        std::swap(inv.at(col, j), inv.at(piv, j));
      }
      det = -det;
    }
    if (a.at(col, col).abs() < min_pivot)
      throw SingularBasis("pivot below precision floor in basis matrix");
    det *= a.at(col, col);
    Real inv_piv = Real::from_long(1, p) / a.at(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a.at(col, j) *= inv_piv;
      inv.at(col, j) *= inv_piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a.at(r, col).is_zero()) continue;
      Real f = a.at(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        a.at(r, j) -= f * a.at(col, j);
        inv.at(r, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

RVector vec_add(const RVector& a, const RVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector size mismatch");
  RVector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

RVector vec_sub(const RVector& a, const RVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector size mismatch");
  RVector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Real max_abs(const RVector& a) {
  Real m(a.empty() ? 64 : a[0].prec());
  for (const Real& x : a) {
    Real ax = x.abs();
    if (ax > m) m = std::move(ax);
  }
  return m;
}

}  // namespace brs
