#include "brs/dynamics.hpp"

#include <algorithm>

#include "brs/errors.hpp"
#include "brs/random.hpp"
#include "parallel.hpp"

namespace brs {

namespace {

Real eval_remainder(long long count, long long n, const Real& volume, mpfr_prec_t p) {
  return Real::from_long(count, p) - Real::from_long(n, p) * volume;
}

void check_precision_budget(const RegionGeometry& geom, long long n_max) {
  // Membership decisions for orbit point n*alpha carry relative error of
  // order n*2^-P, which must stay well below the tolerance 2^-P/2.
  long bits = 0;
  for (long long v = n_max; v > 0; v >>= 1) ++bits;
  if (bits > static_cast<long>(geom.precision_bits()) / 2 - 16)
    throw ConfigError("orbit length exceeds the precision budget; raise precision_bits");
}

}  // namespace

RemainderTrace assemble_trace(const std::vector<Int>& visits, const Real& volume,
                              long long n_max, long long stride, mpfr_prec_t p) {
  if (n_max < 1) throw ConfigError("trace length must be positive");
  if (stride < 1) throw ConfigError("stride must be positive");

  RemainderTrace tr;
  tr.n_max = n_max;
  tr.stride = stride;
  tr.max_abs = Real(p);

  // Sampled remainders on the stride grid.
  std::size_t vi = 0;
  long long count = 0;
  for (long long n = stride; n <= n_max; n += stride) {
    while (vi < visits.size() && visits[vi] < static_cast<long>(n)) {
      ++vi;
      ++count;
    }
    tr.samples.emplace_back(n, eval_remainder(count, n, volume, p));
  }

  // Exact running maximum: the remainder is linear between visits, so it is
  // enough to look at segment endpoints.
  auto consider = [&](long long cnt, long long n) {
    if (n < 0 || n > n_max) return;
    Real r = eval_remainder(cnt, n, volume, p).abs();
    if (r > tr.max_abs) tr.max_abs = std::move(r);
  };
  long long cnt = 0;
  for (const Int& v : visits) {
    if (!v.fits_slong_p()) break;
    long long n = v.get_si();
    if (n >= n_max) break;
    consider(cnt, n);          // just before the visit is counted
    ++cnt;
    consider(cnt, n + 1);      // just after
  }
  consider(cnt, n_max);
  tr.member_count = cnt;
  return tr;
}

RemainderTrace remainder_trace(const RegionGeometry& geom, const RVector& x0,
                               long long n_max, long long stride) {
  check_precision_budget(geom, n_max);
  OrbitScanner scan(geom, x0);
  std::vector<Int> visits;
  const Int cap(static_cast<long>(n_max - 1));
  while (auto v = scan.next_visit(cap)) visits.push_back(std::move(v->n));
  RemainderTrace tr = assemble_trace(visits, geom.volume(), n_max, stride,
                                     geom.precision_bits());
  tr.x0 = x0;
  return tr;
}

ReturnSequence naive_returns(const RegionGeometry& geom, const RVector& x0,
                             long long count, Int max_scan) {
  auto u0 = torus_membership(geom, x0);
  if (!u0) throw ConfigError("x0 does not lie in the region");

  if (max_scan == 0) {
    // Kac: the mean gap is 1/volume; leave two orders of magnitude of slack.
    Real mean_gap = Real::from_long(1, geom.precision_bits()) / geom.volume();
    max_scan = (Int(static_cast<long>(count)) + 64) * (mean_gap.floor_int() * 128 + 1024);
  }

  ReturnSequence seq;
  seq.method = ReturnSequence::Method::kNaive;
  seq.entries.push_back(ReturnEntry{0, Int(0), std::move(*u0)});

  OrbitScanner scan(geom, x0, Int(1));
  for (long long k = 1; k <= count; ++k) {
    auto v = scan.next_visit(max_scan);
    if (!v)
      throw NonReturning("no return within scan cap " + max_scan.get_str() +
                         " after " + std::to_string(k - 1) + " returns");
    seq.entries.push_back(ReturnEntry{k, std::move(v->n), std::move(v->u)});
  }
  return seq;
}

namespace {

// One renormalized step: u += t componentwise mod 1, accumulating the exact
// return-time increment from the last coordinates of the source basis.
// Returns the increment.
Int renormalized_step(RVector& u, const RVector& t, const std::vector<Int>& last,
                      const Real& one, const Real& tol, long long k) {
  const std::size_t s = u.size();
  Int delta = last[s];
  for (std::size_t i = 0; i < s; ++i) {
    Real v = u[i] + t[i];
    if ((v - one).abs() < tol)
      throw BoundaryAmbiguity("renormalized recursion within tolerance of the boundary at k=" +
                              std::to_string(k));
    if (v >= one) {
      v -= one;
      delta -= last[i];
    }
    u[i] = std::move(v);
  }
  if (delta < 1)
    throw VerificationFailure("return-time increment not positive; basis not special");
  return delta;
}

void require_renormalizable(const RegionGeometry& geom) {
  if (!geom.has_source_basis() || geom.t().empty())
    throw ConfigError("renormalized recursion requires a region built from a special basis");
  for (const Real& c : geom.translate())
    if (!c.is_zero())
      throw ConfigError("renormalized recursion is anchored at 0; region must be untranslated");
}

}  // namespace

ReturnSequence renormalized_returns(const RegionGeometry& geom, long long count) {
  require_renormalizable(geom);
  const mpfr_prec_t p = geom.precision_bits();
  const Real one = Real::from_long(1, p);
  const Real tol = geom.tol();

  ReturnSequence seq;
  seq.method = ReturnSequence::Method::kRenormalized;
  RVector u(geom.s(), Real(p));
  Int ell(0);
  seq.entries.push_back(ReturnEntry{0, ell, u});
  for (long long k = 1; k <= count; ++k) {
    ell += renormalized_step(u, geom.t(), geom.source_last(), one, tol, k);
    seq.entries.push_back(ReturnEntry{k, ell, u});
  }
  return seq;
}

std::vector<Int> renormalized_visit_times(const RegionGeometry& geom, long long n_max) {
  require_renormalizable(geom);
  const mpfr_prec_t p = geom.precision_bits();
  const Real one = Real::from_long(1, p);
  const Real tol = geom.tol();

  std::vector<Int> visits;
  RVector u(geom.s(), Real(p));
  Int ell(0);
  long long k = 0;
  while (ell < static_cast<long>(n_max)) {
    visits.push_back(ell);
    ell += renormalized_step(u, geom.t(), geom.source_last(), one, tol, ++k);
  }
  return visits;
}

RauzyReport verify_rauzy(const RegionGeometry& geom, long long sample_count,
                         std::uint64_t seed) {
  const std::size_t s = geom.s();
  const mpfr_prec_t p = geom.precision_bits();
  const Real tol = geom.tol();
  RandomSource rng(seed);

  RauzyReport report;
  report.seed = seed;

  // R1: distinct points of A are distinct mod M.  In parallelotope
  // coordinates a difference in M is an integer vector, and coordinates lie
  // in [0,1)^s, so any hit would mean two coordinate vectors coincide.
  {
    VerificationEntry e;
    e.condition = "R1";
    e.pass = true;
    e.max_residual = Real(p);
    for (long long i = 0; i < sample_count; ++i) {
      RVector u(s, Real(p)), v(s, Real(p));
      for (std::size_t c = 0; c < s; ++c) u[c] = rng.next_real(p);
      for (std::size_t c = 0; c < s; ++c) v[c] = rng.next_real(p);
      RVector d = geom.B_inv().mul(vec_sub(geom.B().mul(u), geom.B().mul(v)));
      bool distinct = false;
      for (std::size_t c = 0; c < s; ++c)
        if (u[c] != v[c]) distinct = true;
      if (!distinct) continue;
      bool congruent = true;
      for (std::size_t c = 0; c < s; ++c) {
        Real res = (d[c] - (u[c] - v[c])).abs();
        if (res > e.max_residual) e.max_residual = std::move(res);
        if (d[c].dist_to_int() >= tol) congruent = false;
      }
      if (congruent) {
        e.pass = false;
        e.witness = "pair " + std::to_string(i) + " congruent mod M";
        break;
      }
    }
    report.entries.push_back(std::move(e));
  }

  // R2: S(x) = x + beta mod M, with the first return found by orbit scan.
  {
    if (geom.t().empty())
      throw ConfigError("R2 verification requires a region with a return vector");
    VerificationEntry e;
    e.condition = "R2";
    e.pass = true;
    e.max_residual = Real(p);

    std::vector<RVector> starts;
    starts.reserve(sample_count);
    for (long long i = 0; i < sample_count; ++i) {
      RVector u(s, Real(p));
      for (std::size_t c = 0; c < s; ++c) u[c] = rng.next_real(p);
      starts.push_back(std::move(u));
    }

    Real mean_gap = Real::from_long(1, p) / geom.volume();
    const Int cap = mean_gap.floor_int() * 4096 + (Int(1) << 20);

    std::vector<Real> residuals(starts.size(), Real(p));
    internal::parallel_for_indexed(starts.size(), [&](std::size_t i) {
      const RVector& ux = starts[i];
      RVector x = geom.B().mul(ux);
      for (std::size_t c = 0; c < s; ++c) x[c] += geom.translate()[c];
      OrbitScanner scan(geom, x, Int(1));
      auto hit = scan.next_visit(cap);
      if (!hit)
        throw NonReturning("first return of R2 sample " + std::to_string(i) +
                           " not found within cap");
      Real res(p);
      for (std::size_t c = 0; c < s; ++c) {
        Real r = (hit->u[c] - ux[c] - geom.t()[c]).dist_to_int();
        if (r > res) res = std::move(r);
      }
      residuals[i] = std::move(res);
    });

    for (std::size_t i = 0; i < residuals.size(); ++i) {
      if (residuals[i] > e.max_residual) e.max_residual = residuals[i];
      if (e.pass && residuals[i] >= tol) {
        e.pass = false;
        e.witness = "sample " + std::to_string(i) + " residual " +
                    residuals[i].to_string(12);
      }
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

std::vector<LatticeVector> hyperplane_points(const SpecialBasis& basis, long k_lo,
                                             long k_hi) {
  if (k_lo > k_hi) throw ConfigError("empty hyperplane range");
  const std::size_t s = basis.s();
  RegionGeometry geom = RegionGeometry::from_basis(basis);
  const mpfr_prec_t p = geom.precision_bits();
  const Real one = Real::from_long(1, p);
  const Real tol = geom.tol();
  const RVector& t = geom.t();

  // Return recursion on exact lattice vectors, both directions from 0.
  std::vector<LatticeVector> rec(static_cast<std::size_t>(k_hi - k_lo + 1));
  auto slot = [&](long k) -> LatticeVector& { return rec[static_cast<std::size_t>(k - k_lo)]; };
  {
    LatticeVector x = LatticeVector::zero(s);
    RVector u(s, Real(p));
    if (k_lo <= 0 && 0 <= k_hi) slot(0) = x;
    LatticeVector xf = x;
    RVector uf = u;
    for (long k = 1; k <= k_hi; ++k) {
      LatticeVector next = xf + basis.v[s];
      for (std::size_t i = 0; i < s; ++i) {
        Real v = uf[i] + t[i];
        if ((v - one).abs() < tol)
          throw BoundaryAmbiguity("recursion boundary at k=" + std::to_string(k));
        if (v >= one) {
          v -= one;
          next = next - basis.v[i];
        }
        uf[i] = std::move(v);
      }
      xf = std::move(next);
      if (k >= k_lo) slot(k) = xf;
    }
    LatticeVector xb = x;
    RVector ub = u;
    for (long k = -1; k >= k_lo; --k) {
      LatticeVector prev = xb - basis.v[s];
      for (std::size_t i = 0; i < s; ++i) {
        Real v = ub[i] - t[i];
        if (!v.is_zero() && v.abs() < tol)
          throw BoundaryAmbiguity("recursion boundary at k=" + std::to_string(k));
        if (v.sign() < 0) {
          v += one;
          prev = prev + basis.v[i];
        }
        ub[i] = std::move(v);
      }
      xb = std::move(prev);
      if (k <= k_hi) slot(k) = xb;
    }
  }

  // Independent route: on level k the candidate coordinates are k*t + m; the
  // coordinate condition pins each m_i uniquely, which is the "exactly one
  // point per hyperplane" statement.  Enumerate a window to certify it.
  std::vector<LatticeVector> out;
  out.reserve(rec.size());
  for (long k = k_lo; k <= k_hi; ++k) {
    Real kr = Real::from_long(k, p);
    std::vector<Int> m0(s);
    RVector kt(s, Real(p));
    for (std::size_t i = 0; i < s; ++i) {
      kt[i] = kr * t[i];
      if (k != 0 && kt[i].dist_to_int() < tol)
        throw BoundaryAmbiguity("k*t within tolerance of an integer at k=" + std::to_string(k));
      m0[i] = -kt[i].floor_int();
    }
    std::optional<LatticeVector> found;
    std::vector<long> off(s, -1);
    while (true) {
      bool inside = true;
      for (std::size_t i = 0; i < s && inside; ++i) {
        Real u = kt[i] + Real::from_int(m0[i] + off[i], p);
        if (u.is_zero()) continue;
        if (u.sign() < 0 || u >= one) inside = false;
      }
      if (inside) {
        LatticeVector lv = basis.v[s].scaled(Int(k));
        for (std::size_t i = 0; i < s; ++i) lv = lv + basis.v[i].scaled(m0[i] + off[i]);
        if (found)
          throw CardinalityViolation("two lattice points on hyperplane k=" + std::to_string(k));
        found = std::move(lv);
      }
      std::size_t c = 0;
      while (c < s && off[c] == 1) off[c++] = -1;
      if (c == s) break;
      ++off[c];
    }
    if (!found)
      throw CardinalityViolation("no lattice point on hyperplane k=" + std::to_string(k));
    if (!(*found == slot(k)))
      throw VerificationFailure("hyperplane point disagrees with the return recursion at k=" +
                                std::to_string(k));
    out.push_back(std::move(*found));
  }
  return out;
}

}  // namespace brs
