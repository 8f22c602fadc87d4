#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "brs/real.hpp"

namespace brs {

/// Rotation data for T(x) = x + alpha on the s-torus.  alpha is kept both as
/// the original decimal strings (exact, precision-independent) and parsed at
/// the working precision.
///
/// Total irrationality of alpha is a documented precondition of the
/// construction, not something this library decides; see
/// irrationality_advisory for the optional heuristic warning.
class RotationContext {
 public:
  RotationContext(std::vector<std::string> alpha_decimals, mpfr_prec_t precision_bits);

  std::size_t s() const { return alpha_.size(); }
  mpfr_prec_t precision_bits() const { return precision_; }
  const RVector& alpha() const { return alpha_; }
  const std::vector<std::string>& alpha_decimals() const { return decimals_; }

  Real tol() const { return tolerance(precision_); }

 private:
  std::vector<std::string> decimals_;
  RVector alpha_;
  mpfr_prec_t precision_;
};

/// Element of the lattice generated by e_1..e_s and alpha' = (alpha, 1),
/// stored exactly: a are the coefficients of e_1..e_s, n the coefficient of
/// alpha'.  The real embedding is (n*alpha + a, n).
struct LatticeVector {
  std::vector<Int> a;
  Int n;

  LatticeVector() : n(0) {}
  LatticeVector(std::vector<Int> a_, Int n_) : a(std::move(a_)), n(std::move(n_)) {}

  static LatticeVector zero(std::size_t s) {
    return LatticeVector(std::vector<Int>(s, Int(0)), Int(0));
  }

  std::size_t s() const { return a.size(); }

  LatticeVector operator+(const LatticeVector& o) const;
  LatticeVector operator-(const LatticeVector& o) const;
  LatticeVector scaled(const Int& k) const;

  bool operator==(const LatticeVector& o) const { return a == o.a && n == o.n; }
};

/// (n*alpha_1 + a_1, ..., n*alpha_s + a_s, n) at the working precision.
/// Always recomputed from the exact coordinates, never updated incrementally.
RVector embed(const RotationContext& ctx, const LatticeVector& v);

/// First s coordinates of an embedded vector.
RVector phys(const RVector& embedded);

/// The exact last coordinate (the map phi_{s+1}); reads n directly.
inline const Int& last_coordinate(const LatticeVector& v) { return v.n; }

/// Determinant of the (s+1)x(s+1) integer matrix with rows (a, n).
/// Exact (fraction-free elimination); +-1 iff the vectors form a Z-basis.
Int basis_determinant(const std::vector<LatticeVector>& basis);

/// Advisory search for small integer relations c_0 + c.alpha ~ 0.  Returns a
/// description of the first hit, if any.  Never used to reject input: a
/// truncated decimal alpha is always rational, the question is only whether
/// a relation is small enough to disturb the requested orbit lengths.
std::optional<std::string> irrationality_advisory(const RotationContext& ctx,
                                                  long max_coefficient = 1000);

}  // namespace brs
