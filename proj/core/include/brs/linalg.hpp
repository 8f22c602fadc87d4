#pragma once

#include <cstddef>

#include "brs/real.hpp"

namespace brs {

/// Dense square matrix of Reals, row-major.  Dimensions here are tiny
/// (s <= 20), so plain Gaussian elimination with partial pivoting is used
/// throughout.
class RMatrix {
 public:
  RMatrix() = default;
  RMatrix(std::size_t n, mpfr_prec_t prec) : n_(n), m_(n * n, Real(prec)) {}

  std::size_t dim() const { return n_; }

  Real& at(std::size_t i, std::size_t j) { return m_[i * n_ + j]; }
  const Real& at(std::size_t i, std::size_t j) const { return m_[i * n_ + j]; }

  RVector mul(const RVector& x) const;

  /// Returns the inverse; det receives the determinant.  Throws
  /// SingularBasis when a pivot falls below min_pivot in absolute value.
  RMatrix inverse(Real& det, const Real& min_pivot) const;

 private:
  std::size_t n_ = 0;
  std::vector<Real> m_;
};

RVector vec_add(const RVector& a, const RVector& b);
RVector vec_sub(const RVector& a, const RVector& b);
Real max_abs(const RVector& a);

}  // namespace brs
