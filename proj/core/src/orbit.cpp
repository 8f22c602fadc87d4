#include "brs/orbit.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

#include "brs/errors.hpp"

namespace brs {

namespace {

double upper_double(const Real& x) { return mpfr_get_d(x.raw(), MPFR_RNDU); }

}  // namespace

OrbitScanner::OrbitScanner(const RegionGeometry& geom, RVector x0, Int n_begin,
                           bool lattice_anchored)
    : geom_(geom),
      s_(geom.s()),
      x0_(std::move(x0)),
      n_base_(std::move(n_begin)),
      lattice_anchored_(lattice_anchored && !geom.coordinate_inverse().empty()) {
  if (x0_.size() != s_) throw DimensionMismatch("x0 size mismatch");
  const mpfr_prec_t p = geom_.precision_bits();

  y0_.reserve(s_);
  for (std::size_t i = 0; i < s_; ++i) y0_.push_back(x0_[i] - geom_.translate()[i]);

  alpha_d_.resize(s_);
  for (std::size_t i = 0; i < s_; ++i) alpha_d_[i] = geom_.ctx().alpha()[i].to_double();

  binv_d_.resize(s_ * s_);
  double binv_norm = 0;  // upper bound on the max row abs sum of B^-1
  for (std::size_t i = 0; i < s_; ++i) {
    Real row_abs(p);
    for (std::size_t j = 0; j < s_; ++j) {
      binv_d_[i * s_ + j] = geom_.B_inv().at(i, j).to_double();
      row_abs += geom_.B_inv().at(i, j).abs();
    }
    binv_norm = std::max(binv_norm, upper_double(row_abs));
  }

  // Candidates sorted by their first shadow coordinate, so a step only
  // examines the ones whose first-coordinate window contains w[0].
  const auto& cands = geom_.shift_candidates();
  std::vector<std::size_t> order(cands.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<double> q0(order.size());
  double q_norm = 0;
  for (std::size_t c = 0; c < order.size(); ++c) {
    q0[c] = cands[c].q[0].to_double();
    for (std::size_t i = 0; i < s_; ++i)
      q_norm = std::max(q_norm, upper_double(cands[c].q[i].abs()));
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return q0[a] < q0[b]; });
  n_cands_ = order.size();
  q_d_.resize(n_cands_ * s_);
  q0_sorted_.resize(n_cands_);
  for (std::size_t c = 0; c < n_cands_; ++c) {
    q0_sorted_[c] = q0[order[c]];
    for (std::size_t i = 0; i < s_; ++i) q_d_[c * s_ + i] = cands[order[c]].q[i].to_double();
  }

  // Error budget.  With |z_shadow - z_exact| <= delta, the computed test
  // value w_i + q_i deviates from the exact one by at most
  //   binv_norm * delta + (3s+2) * 2^-53 * (binv_norm + q_norm + 1),
  // covering the double roundings of B^-1, the mat-vec, q and the final
  // add.  delta grows by 2^-52 per shadow step and resets at each
  // resynchronization.  A factor 4 of slack is applied throughout.
  const double per_step = 4.0 * binv_norm * std::ldexp(1.0, -52);
  const double base =
      4.0 * (3.0 * double(s_) + 2.0) * std::ldexp(1.0, -53) * (binv_norm + q_norm + 1.0) +
      per_step;
  const double budget = std::ldexp(1.0, -20);
  if (base < budget && per_step > 0) {
    resync_interval_ = static_cast<long long>((budget - base) / per_step);
    resync_interval_ = std::max<long long>(1, std::min<long long>(resync_interval_, 1ll << 40));
    eps_ = base + double(resync_interval_) * per_step;
    shadow_usable_ = true;
  } else {
    shadow_usable_ = false;  // every step takes the exact path
  }

  z_d_.resize(s_);
  w_d_.resize(s_);
  resync();
}

void OrbitScanner::resync() {
  const mpfr_prec_t p = geom_.precision_bits();
  Real nr = Real::from_int(current_index(), p);
  for (std::size_t i = 0; i < s_; ++i) {
    Real z = (y0_[i] + nr * geom_.ctx().alpha()[i]).frac();
    double zd = z.to_double();
    if (zd >= 1.0) zd -= 1.0;  // double rounding can land exactly on 1
    z_d_[i] = zd;
  }
  steps_since_sync_ = 0;
}

std::optional<RVector> OrbitScanner::exact_decide() {
  ++escalations_;
  const mpfr_prec_t p = geom_.precision_bits();
  Int n = current_index();
  Real nr = Real::from_int(n, p);
  RVector x(s_, Real(p));
  for (std::size_t i = 0; i < s_; ++i) x[i] = x0_[i] + nr * geom_.ctx().alpha()[i];
  resync();
  try {
    return torus_membership(geom_, x);
  } catch (const BoundaryAmbiguity& e) {
    // Lattice-anchored orbits land exactly on region faces at some indices;
    // those collisions are decidable in integer basis coordinates.
    if (lattice_anchored_) return lattice_orbit_membership(geom_, n);
    throw BoundaryAmbiguity(std::string(e.what()) + " at orbit index " + n.get_str());
  }
}

std::optional<OrbitScanner::Visit> OrbitScanner::next_visit(const Int& n_max) {
  // Hot loop bound as a plain integer; scans never exceed the long long
  // range in practice, and larger bounds saturate harmlessly.
  Int rel = n_max - n_base_;
  if (sgn(rel) < 0) return std::nullopt;
  const long long rel_max = rel.fits_slong_p() ? rel.get_si() : LLONG_MAX;

  const double eps = eps_;
  while (n_off_ <= rel_max) {
    bool need_exact = !shadow_usable_;
    bool shadow_hit = false;
    if (shadow_usable_) {
      if (steps_since_sync_ > resync_interval_) resync();

      const double* z = z_d_.data();
      double* w = w_d_.data();
      for (std::size_t i = 0; i < s_; ++i) {
        double acc = 0;
        const double* row = binv_d_.data() + i * s_;
        for (std::size_t j = 0; j < s_; ++j) acc += row[j] * z[j];
        w[i] = acc;
      }

      // Candidates whose first coordinate can land in [0,1).
      const double lo = -w[0] - eps;
      const double hi = 1.0 - w[0] + eps;
      std::size_t c =
          std::lower_bound(q0_sorted_.begin(), q0_sorted_.end(), lo) - q0_sorted_.begin();
      for (; c < n_cands_ && q0_sorted_[c] <= hi; ++c) {
        const double* q = q_d_.data() + c * s_;
        bool inside = true;
        for (std::size_t i = 0; i < s_; ++i) {
          const double v = w[i] + q[i];
          if (v <= eps || v >= 1.0 - eps) {
            inside = false;
            if (v >= -eps && v <= 1.0 + eps) need_exact = true;  // uncertainty band
            break;
          }
        }
        if (need_exact) break;
        if (inside) {
          if (shadow_hit) {
            need_exact = true;  // two hits: let the exact path adjudicate
            break;
          }
          shadow_hit = true;
        }
      }
    }

    std::optional<RVector> u;
    if (need_exact || shadow_hit) {
      u = exact_decide();
      if (shadow_hit && !need_exact && !u)
        throw Error("internal: shadow accepted a point the exact path rejects");
    }

    const long long visited = n_off_;
    ++n_off_;
    ++steps_since_sync_;
    if (shadow_usable_) {
      for (std::size_t i = 0; i < s_; ++i) {
        z_d_[i] += alpha_d_[i];
        if (z_d_[i] >= 1.0) z_d_[i] -= 1.0;
      }
    }

    if (u) return Visit{n_base_ + Int(static_cast<long>(visited)), std::move(*u)};
  }
  return std::nullopt;
}

}  // namespace brs
