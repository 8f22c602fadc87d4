#pragma once

#include <string>
#include <vector>

#include "brs/dynamics.hpp"
#include "brs/lattice.hpp"
#include "brs/real.hpp"
#include "brs/region.hpp"

namespace brstest {

using namespace brs;

// (sqrt(5)-1)/2 as a 60-digit decimal string.
inline std::string golden_decimal() {
  Real x = Real::sqrt_ui(5, 400);
  x -= Real::from_long(1, 400);
  x /= Real::from_long(2, 400);
  return x.to_string(60);
}

inline std::string sqrt2m1_decimal() {
  Real x = Real::sqrt_ui(2, 400);
  x -= Real::from_long(1, 400);
  return x.to_string(60);
}

inline std::string sqrt3m1_decimal() {
  Real x = Real::sqrt_ui(3, 400);
  x -= Real::from_long(1, 400);
  return x.to_string(60);
}

inline RotationContext golden_ctx(mpfr_prec_t prec = 256) {
  return RotationContext({golden_decimal()}, prec);
}

inline RotationContext s2_ctx(mpfr_prec_t prec = 256) {
  return RotationContext({sqrt2m1_decimal(), sqrt3m1_decimal()}, prec);
}

inline bool close_to(const Real& a, const Real& b, long log2_tol = -200) {
  return (a - b).abs() < Real::two_pow(log2_tol, std::max(a.prec(), b.prec()));
}

inline bool close_to_decimal(const Real& a, const std::string& decimal, long log2_tol = -120) {
  return close_to(a, Real::from_decimal(decimal, a.prec()), log2_tol);
}

inline LatticeVector lv(std::vector<long> a, long n) {
  LatticeVector v = LatticeVector::zero(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v.a[i] = a[i];
  v.n = n;
  return v;
}

}  // namespace brstest
