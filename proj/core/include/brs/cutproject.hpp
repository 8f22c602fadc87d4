#pragma once

#include <string>
#include <utility>
#include <vector>

#include "brs/dynamics.hpp"
#include "brs/region.hpp"

namespace brs {

/// Cut-and-project parameters: the physical dimension d, ambient dimension
/// k, and the d x s matrix of reals parameterizing the subspace V (row i
/// holds alpha_i^(1..s)).  Row 1 reduced mod 1 is the rotation used for
/// region construction; the raw values embed points back into R^k.
class Scheme {
 public:
  Scheme(long k, long d, std::vector<std::vector<std::string>> alpha_decimals,
         mpfr_prec_t precision_bits);

  long k() const { return k_; }
  long d() const { return d_; }
  long s() const { return k_ - d_; }
  mpfr_prec_t precision_bits() const { return precision_; }

  const std::vector<std::vector<std::string>>& alpha_decimals() const { return decimals_; }
  const std::vector<RVector>& rows() const { return rows_; }

  /// Rotation context from row 1 reduced into [0,1)^s.
  const RotationContext& rotation() const { return rotation_; }

 private:
  long k_, d_;
  mpfr_prec_t precision_;
  std::vector<std::vector<std::string>> decimals_;
  std::vector<RVector> rows_;
  RotationContext rotation_;
};

/// A scheme together with a special section: the region geometry built from
/// the scheme's rotation, embedded transversally, plus an optional translate
/// of the section.
struct SectionedScheme {
  Scheme scheme;
  RegionGeometry region;
  RVector offset;  // w, length s

  SectionedScheme(Scheme sch, RegionGeometry reg, RVector w);
};

struct CpsPoint {
  std::vector<Int> n;  // (n_1, ..., n_d)
  RVector embedding;   // full R^k embedding
};

struct PointSet {
  std::vector<CpsPoint> points;  // lexicographic by tail, then n_1
};

struct BdPair {
  std::vector<Int> n;  // source point (n_1, ..., n_d)
  long long i = 0;     // per-column index, ell_{-1} < 0 <= ell_0
  Real target;         // i / |A|
  Real displacement;   // |ell_i - i/|A||
};

struct BdColumnStats {
  std::vector<Int> tail;
  long long count = 0;
  long long origin = 0;  // index i assigned to the first point in range
  Real sup_displacement;
};

struct BdPairing {
  std::vector<BdPair> pairs;
  std::vector<BdColumnStats> columns;
  Real sup_displacement;
};

/// The shift gamma(n_2, ..., n_d) = sum_i n_i * row_i placing the fiber over
/// the tail into the rotation coordinates.
RVector gamma_shift(const Scheme& scheme, const std::vector<Int>& tail);

/// Integer interval [lo, hi], inclusive.
struct IntRange {
  Int lo, hi;
};

/// Generates the reduced point set Y': all (n_1, tail) with
/// n_1*alpha + gamma(tail) + w in the section, with R^k embeddings.
PointSet generate_points(const SectionedScheme& ss, const std::vector<IntRange>& tail_box,
                         const IntRange& n1_range);

/// Pairs each selected point (ell_i, tail) with (i/|A|, tail) and records
/// displacements; the pairing realizes bounded distance to the lattice
/// |A|^-1 Z x Z^(d-1) on the sampled window.  With keep_pairs = false only
/// the per-column statistics are retained (large windows).
BdPairing bd_pairing(const SectionedScheme& ss, const std::vector<IntRange>& tail_box,
                     const IntRange& n1_range, bool keep_pairs = true);

/// Operator norm of the linear map from Y' coordinates back to V, for
/// callers who want the V-side displacement constant.
Real embedding_operator_norm(const Scheme& scheme);

}  // namespace brs
