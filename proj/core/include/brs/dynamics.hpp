#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "brs/lattice.hpp"
#include "brs/orbit.hpp"
#include "brs/region.hpp"

namespace brs {

/// Birkhoff counting error of the orbit against the region:
/// remainder(N) = #{n < N : x0 + n*alpha in A} - N*|A|.
struct RemainderTrace {
  RVector x0;
  long long n_max = 0;
  long long stride = 1;
  std::vector<std::pair<long long, Real>> samples;  // (N, remainder(N))
  Real max_abs;          // running maximum of |remainder| over all N <= n_max
  long long member_count = 0;
};

struct ReturnEntry {
  long long k = 0;
  Int ell;    // return time: x0 + ell*alpha is the k-th visit
  RVector u;  // parallelotope coordinates of the visit
};

struct ReturnSequence {
  enum class Method { kNaive, kRenormalized };
  Method method = Method::kNaive;
  std::vector<ReturnEntry> entries;  // k = 0 is the starting point itself
};

struct VerificationEntry {
  std::string condition;
  bool pass = false;
  Real max_residual;
  std::string witness;  // empty when none
};

struct RauzyReport {
  std::uint64_t seed = 0;
  std::vector<VerificationEntry> entries;

  bool all_pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
};

/// Scans n = 0..n_max-1 and records every stride-th remainder plus the exact
/// running maximum of |remainder| over the whole range.
RemainderTrace remainder_trace(const RegionGeometry& geom, const RVector& x0,
                               long long n_max, long long stride = 1);

/// Assembles a trace from known visit times (each < n_max).  The remainder is
/// piecewise linear in N, so the maximum is taken over segment endpoints.
RemainderTrace assemble_trace(const std::vector<Int>& visits, const Real& volume,
                              long long n_max, long long stride, mpfr_prec_t prec);

/// First-return sequence of x0 (which must lie in the region) by orbit scan.
/// Entry k = 0 is x0 itself; entries 1..count are successive visits.
/// max_scan caps the total scan length (0 = automatic); exceeding it raises
/// NonReturning.
ReturnSequence naive_returns(const RegionGeometry& geom, const RVector& x0, long long count,
                             Int max_scan = Int(0));

/// Return sequence of 0 via the renormalized recursion: u_{k+1} = u_k + t
/// (mod 1 componentwise), with the exact integer return-time increment read
/// off the basis last coordinates.  Cost O(count * s), independent of the
/// return times themselves.  Requires a region built from a special basis.
ReturnSequence renormalized_returns(const RegionGeometry& geom, long long count);

/// Visit times of the orbit of 0 with ell < n_max, via the renormalized
/// recursion.  Feeds assemble_trace for long-range remainder envelopes.
std::vector<Int> renormalized_visit_times(const RegionGeometry& geom, long long n_max);

/// Rauzy's sufficient conditions on the region, sampled deterministically:
/// (R1) distinct points of A stay distinct modulo the lattice M spanned by
/// the region edges; (R2) the first-return map is translation by beta mod M,
/// with the first return found by orbit scan.
RauzyReport verify_rauzy(const RegionGeometry& geom, long long sample_count,
                         std::uint64_t seed);

/// For each level k in [k_lo, k_hi], the unique lattice point with
/// v_{s+1}-coefficient k projecting into the region.  Verifies uniqueness by
/// enumeration and agreement with the return recursion; the k-th point's last
/// coordinate is the k-th return time of 0.
std::vector<LatticeVector> hyperplane_points(const SpecialBasis& basis, long k_lo, long k_hi);

}  // namespace brs
