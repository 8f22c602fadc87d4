#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "brs/lattice.hpp"
#include "brs/linalg.hpp"
#include "brs/real.hpp"

namespace brs {

/// Ordered basis (v_1, ..., v_{s+1}) of the rotation lattice.  v_1..v_s span
/// the region; v_{s+1} is the return vector.  Candidate for the conditions
/// (S1)-(S4); see check_conditions.
struct SpecialBasis {
  RotationContext ctx;
  std::vector<LatticeVector> v;

  std::size_t s() const { return ctx.s(); }
};

struct ConditionCheck {
  bool pass = false;
  std::string detail;
};

struct ConditionReport {
  ConditionCheck s1;  // region well-defined: spanning projections invertible
  ConditionCheck s2;  // phi(v_{s+1}) inside the region
  ConditionCheck s3;  // determinant +-1 (exact)
  ConditionCheck s4;  // return-time positivity over all subsets (exact)
  ConditionCheck sign_invariant;  // last(v_i) <= 0 for i <= s, last(v_{s+1}) >= 1
  Int determinant;

  bool all_pass() const {
    return s1.pass && s2.pass && s3.pass && s4.pass && sign_invariant.pass;
  }
};

/// Derived real geometry of a region: the matrix B of spanning projections,
/// its inverse, the return projection beta with coordinates t, the volume,
/// and the integer shift candidates used for torus membership.
class RegionGeometry {
 public:
  struct ShiftCandidate {
    std::vector<long> m;
    RVector q;  // B^-1 * m at working precision
  };

  /// Geometry of a special basis.  Throws SingularBasis when the spanning
  /// projections are numerically dependent at the working precision.
  static RegionGeometry from_basis(const SpecialBasis& basis);

  /// Raw parallelotope region from explicit spanning columns; beta optional.
  /// Used for control experiments with regions that are not special.
  static RegionGeometry from_columns(const RotationContext& ctx, RMatrix columns,
                                     std::optional<RVector> beta = std::nullopt);

  /// Axis-aligned box region diag(sides); convenience for controls.
  static RegionGeometry box(const RotationContext& ctx, const RVector& sides);

  /// Same region translated by shift: membership(x) tests x - shift.
  RegionGeometry translated(const RVector& shift) const;

  std::size_t s() const { return ctx_.s(); }
  const RotationContext& ctx() const { return ctx_; }
  mpfr_prec_t precision_bits() const { return ctx_.precision_bits(); }
  Real tol() const { return ctx_.tol(); }

  const RMatrix& B() const { return B_; }
  const RMatrix& B_inv() const { return B_inv_; }
  const RVector& beta() const { return beta_; }
  const RVector& t() const { return t_; }
  const Real& volume() const { return volume_; }
  const RVector& translate() const { return translate_; }

  /// Per-coordinate integer extent of the parallelotope's bounding box.
  const std::vector<long>& diameter_box() const { return diameter_box_; }

  const std::vector<ShiftCandidate>& shift_candidates() const { return candidates_; }

  /// Last coordinates of the source basis vectors (v_1..v_{s+1}); empty for
  /// raw regions.  Needed by the renormalized return recursion.
  const std::vector<Int>& source_last() const { return source_last_; }
  bool has_source_basis() const { return !source_last_.empty(); }

  /// Exact inverse of the integer coordinate matrix of the source basis
  /// (rows (a, n) of v_1..v_{s+1}); empty for raw regions.  Lets orbit
  /// points be decided in integer basis coordinates when rounding cannot
  /// separate them from the region boundary.
  const std::vector<std::vector<Int>>& coordinate_inverse() const { return r_inv_; }

 private:
  RegionGeometry(RotationContext ctx) : ctx_(std::move(ctx)) {}
  void finish(std::optional<RVector> beta);

  RotationContext ctx_;
  RMatrix B_;
  RMatrix B_inv_;
  RVector beta_;
  RVector t_;
  Real volume_;
  RVector translate_;
  std::vector<long> diameter_box_;
  std::vector<ShiftCandidate> candidates_;
  std::vector<Int> source_last_;
  std::vector<std::vector<Int>> r_inv_;
};

/// The obvious basis: v_i = e_i, v_{s+1} = alpha'.  Region is the full torus.
SpecialBasis initial_basis(const RotationContext& ctx);

/// Alias for RegionGeometry::from_basis.
RegionGeometry geometry(const SpecialBasis& basis);

/// Checks (S1)-(S4) and the sign invariant.  S3, S4 and the sign invariant
/// are decided in exact integer arithmetic; S2 at working precision with
/// boundary tolerance.  The exhaustive subset check of S4 requires s <= 20;
/// beyond that only the (sufficient) sign invariant is decided and S4
/// reports it.
ConditionReport check_conditions(const SpecialBasis& basis);

/// One basis-exchange step in direction j (0-based): replaces v_j by
/// v_j - v_{s+1}, then reduces the return vector by the non-negative integer
/// parts of its cone coefficients.  Preserves unimodularity and the sign
/// invariant; the new coordinate vector t' is frac of the cone coefficients.
SpecialBasis exchange_step(const SpecialBasis& basis, std::size_t j);

/// Folds exchange_step over j_sequence starting from the initial basis and
/// verifies the result.
SpecialBasis construct_basis(const RotationContext& ctx, const std::vector<std::size_t>& j_sequence);

/// Decides whether x mod Z^s lies in the region; returns the parallelotope
/// coordinates u in [0,1)^s of the unique qualifying representative, or
/// nullopt.  Throws BoundaryAmbiguity within tolerance of the boundary and
/// InjectivityViolation if two integer shifts qualify.
std::optional<RVector> torus_membership(const RegionGeometry& geom, const RVector& x);

/// Exact membership of the orbit point n*alpha mod Z^s.  Each shift
/// candidate is a lattice element, whose integer coordinates c in the source
/// basis give u = c_{1..s} + c_{s+1} t; coordinates with c_{s+1} = 0 are
/// exact integers, so boundary cases that defeat rounding (orbit points
/// landing on a region face) are decided exactly.  Requires a region built
/// from a special basis.
std::optional<RVector> lattice_orbit_membership(const RegionGeometry& geom, const Int& n);

}  // namespace brs
