#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "brs/region.hpp"

namespace brs {

/// Forward scanner over the orbit x_n = x0 + n*alpha, yielding the indices
/// whose torus point lies in the region together with exact parallelotope
/// coordinates.
///
/// Membership decisions are exact.  A double precision shadow of the orbit
/// filters each step; any comparison that lands closer to a decision
/// boundary than the certified shadow error radius is escalated to an exact
/// MPFR decision, and the shadow is resynchronized from exact data often
/// enough to keep the radius small.  The visit sequence is therefore
/// identical to a pure MPFR scan, at a fraction of the cost.
///
/// The region geometry must outlive the scanner.
class OrbitScanner {
 public:
  /// lattice_anchored asserts x0 = n_begin * alpha mod Z^s; then orbit
  /// points are lattice projections and boundary collisions that rounding
  /// cannot separate are resolved exactly in basis coordinates instead of
  /// raising BoundaryAmbiguity.
  OrbitScanner(const RegionGeometry& geom, RVector x0, Int n_begin = Int(0),
               bool lattice_anchored = false);

  struct Visit {
    Int n;
    RVector u;
  };

  /// Next orbit index in [current position, n_max] that visits the region;
  /// advances the position past it.  nullopt once the position exceeds n_max.
  std::optional<Visit> next_visit(const Int& n_max);

  /// Orbit index of the next step to be examined.
  Int position() const { return n_base_ + Int(static_cast<long>(n_off_)); }

  /// Steps decided by the exact path rather than the shadow (diagnostic).
  std::uint64_t escalations() const { return escalations_; }

 private:
  void resync();
  std::optional<RVector> exact_decide();
  Int current_index() const { return n_base_ + Int(static_cast<long>(n_off_)); }

  const RegionGeometry& geom_;
  std::size_t s_;
  RVector x0_;
  RVector y0_;  // x0 - translate
  Int n_base_;
  long long n_off_ = 0;

  // Shadow state and error model.
  std::vector<double> alpha_d_;
  std::vector<double> binv_d_;   // row-major s x s
  std::vector<double> q_d_;      // candidate offsets, sorted by first coord
  std::vector<double> q0_sorted_;
  std::size_t n_cands_ = 0;
  std::vector<double> z_d_;
  std::vector<double> w_d_;
  double eps_ = 0;               // certified decision margin
  long long resync_interval_ = 0;
  long long steps_since_sync_ = 0;
  bool shadow_usable_ = false;
  bool lattice_anchored_ = false;
  std::uint64_t escalations_ = 0;
};

}  // namespace brs
