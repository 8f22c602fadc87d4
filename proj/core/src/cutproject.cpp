#include "brs/cutproject.hpp"

#include <algorithm>

#include "brs/errors.hpp"
#include "brs/orbit.hpp"
#include "parallel.hpp"

namespace brs {

namespace {

RotationContext rotation_from_row1(const std::vector<RVector>& rows, mpfr_prec_t prec) {
  std::vector<std::string> reduced;
  reduced.reserve(rows[0].size());
  for (const Real& x : rows[0]) reduced.push_back(x.frac().to_string());
  return RotationContext(std::move(reduced), prec);
}

}  // namespace

Scheme::Scheme(long k, long d, std::vector<std::vector<std::string>> alpha_decimals,
               mpfr_prec_t precision_bits)
    : k_(k),
      d_(d),
      precision_(precision_bits),
      decimals_(std::move(alpha_decimals)),
      rows_([&] {
        if (d < 1 || d >= k) throw ConfigError("scheme requires 1 <= d < k");
        if (decimals_.size() != static_cast<std::size_t>(d))
          throw ConfigError("alphas must have d rows");
        const std::size_t s = static_cast<std::size_t>(k - d);
        std::vector<RVector> rows;
        rows.reserve(decimals_.size());
        for (const auto& row : decimals_) {
          if (row.size() != s) throw ConfigError("alphas rows must have k-d entries");
          RVector r;
          r.reserve(s);
          for (const auto& cell : row) r.push_back(Real::from_decimal(cell, precision_bits));
          rows.push_back(std::move(r));
        }
        return rows;
      }()),
      rotation_(rotation_from_row1(rows_, precision_bits)) {}

SectionedScheme::SectionedScheme(Scheme sch, RegionGeometry reg, RVector w)
    : scheme(std::move(sch)), region(std::move(reg)), offset(std::move(w)) {
  const std::size_t s = static_cast<std::size_t>(scheme.s());
  if (region.s() != s) throw DimensionMismatch("section dimension does not match scheme");
  if (offset.size() != s) throw DimensionMismatch("offset length must be k-d");
  const Real tol = region.tol();
  for (std::size_t j = 0; j < s; ++j) {
    Real diff = region.ctx().alpha()[j] - scheme.rotation().alpha()[j];
    if (diff.dist_to_int() >= tol)
      throw ConfigError("section rotation does not match scheme row 1 mod 1");
  }
}

RVector gamma_shift(const Scheme& scheme, const std::vector<Int>& tail) {
  const std::size_t s = static_cast<std::size_t>(scheme.s());
  const mpfr_prec_t p = scheme.precision_bits();
  if (tail.size() != static_cast<std::size_t>(scheme.d() - 1))
    throw DimensionMismatch("tail must have d-1 entries");
  RVector g(s, Real(p));
  for (std::size_t i = 0; i < tail.size(); ++i) {
    Real ni = Real::from_int(tail[i], p);
    for (std::size_t j = 0; j < s; ++j) g[j] += ni * scheme.rows()[i + 1][j];
  }
  return g;
}

namespace {

std::vector<std::vector<Int>> enumerate_tails(const Scheme& scheme,
                                              const std::vector<IntRange>& tail_box) {
  if (tail_box.size() != static_cast<std::size_t>(scheme.d() - 1))
    throw DimensionMismatch("tail box must have d-1 ranges");
  std::vector<std::vector<Int>> tails;
  std::vector<Int> cur;
  cur.reserve(tail_box.size());
  for (const auto& r : tail_box) {
    if (r.lo > r.hi) throw ConfigError("empty tail range");
    cur.push_back(r.lo);
  }
  while (true) {
    tails.push_back(cur);
    std::size_t i = tail_box.size();
    while (i > 0) {
      --i;
      if (cur[i] < tail_box[i].hi) {
        ++cur[i];
        break;
      }
      cur[i] = tail_box[i].lo;
      if (i == 0) return tails;
    }
    if (tail_box.empty()) return tails;  // d = 1: the single empty tail
  }
}

// Selected n_1 values of one column, ascending, with exact coordinates u.
struct ColumnHit {
  Int n1;
  RVector u;
};

std::vector<ColumnHit> scan_column(const SectionedScheme& ss, const std::vector<Int>& tail,
                                   const IntRange& n1_range) {
  if (n1_range.lo > n1_range.hi) throw ConfigError("empty n1 range");
  const std::size_t s = static_cast<std::size_t>(ss.scheme.s());
  const mpfr_prec_t p = ss.scheme.precision_bits();
  const RVector& alpha = ss.region.ctx().alpha();

  RVector gamma = gamma_shift(ss.scheme, tail);

  // Columns whose points are pure lattice projections (no gamma or window
  // offset) scan anchored, so boundary collisions are resolved exactly.
  bool anchored = true;
  for (const Real& g : gamma)
    if (!g.is_zero()) anchored = false;
  for (const Real& w : ss.offset)
    if (!w.is_zero()) anchored = false;
  for (const Real& t : ss.region.translate())
    if (!t.is_zero()) anchored = false;

  std::vector<ColumnHit> hits;
  try {
    if (anchored) {
      OrbitScanner scan(ss.region, RVector(s, Real(p)), n1_range.lo, true);
      while (auto v = scan.next_visit(n1_range.hi))
        hits.push_back(ColumnHit{std::move(v->n), std::move(v->u)});
    } else {
      Real lo = Real::from_int(n1_range.lo, p);
      RVector x0(s, Real(p));
      for (std::size_t j = 0; j < s; ++j) x0[j] = lo * alpha[j] + gamma[j] + ss.offset[j];
      OrbitScanner scan(ss.region, std::move(x0));
      const Int span = n1_range.hi - n1_range.lo;
      while (auto v = scan.next_visit(span))
        hits.push_back(ColumnHit{n1_range.lo + v->n, std::move(v->u)});
    }
  } catch (const BoundaryAmbiguity& e) {
    std::string t = "(";
    for (std::size_t i = 0; i < tail.size(); ++i) {
      if (i) t += ",";
      t += tail[i].get_str();
    }
    t += ")";
    throw BoundaryAmbiguity(std::string(e.what()) + " in column tail=" + t +
                            " (n_1 = " + n1_range.lo.get_str() + " + index)");
  }
  return hits;
}

}  // namespace

PointSet generate_points(const SectionedScheme& ss, const std::vector<IntRange>& tail_box,
                         const IntRange& n1_range) {
  const Scheme& sch = ss.scheme;
  const std::size_t s = static_cast<std::size_t>(sch.s());
  const std::size_t d = static_cast<std::size_t>(sch.d());
  const mpfr_prec_t p = sch.precision_bits();

  std::vector<std::vector<Int>> tails = enumerate_tails(sch, tail_box);
  std::vector<std::vector<ColumnHit>> per_column(tails.size());
  internal::parallel_for_indexed(tails.size(), [&](std::size_t c) {
    per_column[c] = scan_column(ss, tails[c], n1_range);
  });

  PointSet out;
  for (std::size_t c = 0; c < tails.size(); ++c) {
    for (ColumnHit& hit : per_column[c]) {
      CpsPoint pt;
      pt.n.reserve(d);
      pt.n.push_back(std::move(hit.n1));
      for (const Int& t : tails[c]) pt.n.push_back(t);
      pt.embedding.reserve(static_cast<std::size_t>(sch.k()));
      RVector n_real;
      n_real.reserve(d);
      for (const Int& ni : pt.n) n_real.push_back(Real::from_int(ni, p));
      for (const Real& v : n_real) pt.embedding.push_back(v);
      for (std::size_t j = 0; j < s; ++j) {
        Real acc(p);
        for (std::size_t i = 0; i < d; ++i) acc += sch.rows()[i][j] * n_real[i];
        pt.embedding.push_back(std::move(acc));
      }
      out.points.push_back(std::move(pt));
    }
  }
  return out;
}

BdPairing bd_pairing(const SectionedScheme& ss, const std::vector<IntRange>& tail_box,
                     const IntRange& n1_range, bool keep_pairs) {
  const Scheme& sch = ss.scheme;
  const mpfr_prec_t p = sch.precision_bits();
  const Real inv_vol = Real::from_long(1, p) / ss.region.volume();

  std::vector<std::vector<Int>> tails = enumerate_tails(sch, tail_box);
  std::vector<std::vector<Int>> per_column(tails.size());
  internal::parallel_for_indexed(tails.size(), [&](std::size_t c) {
    std::vector<ColumnHit> hits = scan_column(ss, tails[c], n1_range);
    std::vector<Int> ells;
    ells.reserve(hits.size());
    for (ColumnHit& h : hits) ells.push_back(std::move(h.n1));
    per_column[c] = std::move(ells);
  });

  BdPairing out;
  out.sup_displacement = Real(p);
  for (std::size_t c = 0; c < tails.size(); ++c) {
    const std::vector<Int>& ells = per_column[c];
    auto column_desc = [&]() {
      std::string t = "(";
      for (std::size_t i = 0; i < tails[c].size(); ++i) {
        if (i) t += ",";
        t += tails[c][i].get_str();
      }
      return t + ")";
    };
    if (ells.empty())
      throw EmptyColumn("no selected points in column tail=" + column_desc() +
                        "; enlarge the n_1 range");
    std::size_t origin = 0;
    while (origin < ells.size() && ells[origin] < 0) ++origin;
    if (origin == ells.size())
      throw EmptyColumn("no selected point with n_1 >= 0 in column tail=" + column_desc());

    BdColumnStats stats;
    stats.tail = tails[c];
    stats.count = static_cast<long long>(ells.size());
    stats.origin = -static_cast<long long>(origin);
    stats.sup_displacement = Real(p);
    for (std::size_t idx = 0; idx < ells.size(); ++idx) {
      const long long i = static_cast<long long>(idx) - static_cast<long long>(origin);
      Real target = Real::from_long(i, p) * inv_vol;
      Real disp = (Real::from_int(ells[idx], p) - target).abs();
      if (disp > stats.sup_displacement) stats.sup_displacement = disp;

      if (keep_pairs) {
        BdPair pair;
        pair.n.reserve(tails[c].size() + 1);
        pair.n.push_back(ells[idx]);
        for (const Int& t : tails[c]) pair.n.push_back(t);
        pair.i = i;
        pair.target = std::move(target);
        pair.displacement = std::move(disp);
        out.pairs.push_back(std::move(pair));
      }
    }
    if (stats.sup_displacement > out.sup_displacement)
      out.sup_displacement = stats.sup_displacement;
    out.columns.push_back(std::move(stats));
  }
  return out;
}

Real embedding_operator_norm(const Scheme& scheme) {
  const std::size_t d = static_cast<std::size_t>(scheme.d());
  const std::size_t s = static_cast<std::size_t>(scheme.s());
  const mpfr_prec_t p = scheme.precision_bits();

  // Gram matrix of the map n -> (n, sum_i alpha_i^(j) n_i): G = I + A^T A.
  RMatrix g(d, p);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Real acc(p);
      for (std::size_t r = 0; r < s; ++r) acc += scheme.rows()[i][r] * scheme.rows()[j][r];
      if (i == j) acc += Real::from_long(1, p);
      g.at(i, j) = std::move(acc);
    }
  }

  RVector v(d, Real::from_long(1, p));
  Real lambda(p);
  for (int iter = 0; iter < 200; ++iter) {
    RVector w = g.mul(v);
    lambda = max_abs(w);
    for (std::size_t i = 0; i < d; ++i) v[i] = w[i] / lambda;
  }
  Real out(p);
  mpfr_sqrt(out.raw(), lambda.raw(), MPFR_RNDN);
  return out;
}

}  // namespace brs
