#include "brs/region.hpp"

#include <algorithm>

#include "brs/errors.hpp"

namespace brs {

namespace {

long to_long_checked(const Int& z, const char* what) {
  if (!z.fits_slong_p()) throw ConfigError(std::string("integer overflow in ") + what);
  return z.get_si();
}

// Inclusion state of one parallelotope coordinate against [0, 1).
enum class CoordState { kIn, kOut, kAmbiguous };

CoordState classify_coord(const Real& u, const Real& tol) {
  // Exact boundary values decide exactly under the half-open convention:
  // u == 0 is inside, u == 1 is outside.  Only inexact values within
  // tolerance of the boundary are ambiguous.
  if (u.is_zero()) return CoordState::kIn;
  if (u.sign() < 0) {
    return (-u < tol) ? CoordState::kAmbiguous : CoordState::kOut;
  }
  Real one = Real::from_long(1, u.prec());
  if (u == one) return CoordState::kOut;
  if (u < one) {
    if (u < tol) return CoordState::kAmbiguous;
    return (one - u < tol) ? CoordState::kAmbiguous : CoordState::kIn;
  }
  return (u - one < tol) ? CoordState::kAmbiguous : CoordState::kOut;
}

}  // namespace

RegionGeometry RegionGeometry::from_basis(const SpecialBasis& basis) {
  const std::size_t s = basis.s();
  if (basis.v.size() != s + 1)
    throw DimensionMismatch("special basis must contain s+1 vectors");
  const mpfr_prec_t p = basis.ctx.precision_bits();

  RegionGeometry g(basis.ctx);
  g.B_ = RMatrix(s, p);
  for (std::size_t j = 0; j < s; ++j) {
    RVector col = phys(embed(basis.ctx, basis.v[j]));
    for (std::size_t i = 0; i < s; ++i) g.B_.at(i, j) = col[i];
  }
  RVector beta = phys(embed(basis.ctx, basis.v[s]));
  g.source_last_.reserve(s + 1);
  for (const LatticeVector& v : basis.v) g.source_last_.push_back(v.n);

  // Exact inverse of the integer coordinate matrix (rows (a, n)), when the
  // basis is unimodular.  Gauss-Jordan over rationals; entries come out
  // integral precisely in that case.
  {
    const std::size_t m = s + 1;
    std::vector<std::vector<mpq_class>> a(m, std::vector<mpq_class>(2 * m, 0));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < s; ++j) a[i][j] = basis.v[i].a[j];
      a[i][s] = basis.v[i].n;
      a[i][m + i] = 1;
    }
    bool ok = true;
    for (std::size_t col = 0; col < m && ok; ++col) {
      std::size_t piv = col;
      while (piv < m && a[piv][col] == 0) ++piv;
      if (piv == m) {
        ok = false;
        break;
      }
      std::swap(a[col], a[piv]);
      mpq_class inv = 1 / a[col][col];
      for (std::size_t j = 0; j < 2 * m; ++j) a[col][j] *= inv;
      for (std::size_t r = 0; r < m; ++r) {
        if (r == col || a[r][col] == 0) continue;
        mpq_class f = a[r][col];
        for (std::size_t j = 0; j < 2 * m; ++j) a[r][j] -= f * a[col][j];
      }
    }
    if (ok) {
      g.r_inv_.assign(m, std::vector<Int>(m));
      for (std::size_t i = 0; i < m && ok; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          mpq_class& q = a[i][m + j];
          q.canonicalize();
          if (q.get_den() != 1) {
            ok = false;
            break;
          }
          g.r_inv_[i][j] = q.get_num();
        }
      if (!ok) g.r_inv_.clear();
    }
  }

  g.finish(std::move(beta));
  return g;
}

RegionGeometry RegionGeometry::from_columns(const RotationContext& ctx, RMatrix columns,
                                            std::optional<RVector> beta) {
  if (columns.dim() != ctx.s()) throw DimensionMismatch("column matrix does not match context");
  RegionGeometry g(ctx);
  g.B_ = std::move(columns);
  g.finish(std::move(beta));
  return g;
}

RegionGeometry RegionGeometry::box(const RotationContext& ctx, const RVector& sides) {
  if (sides.size() != ctx.s()) throw DimensionMismatch("box sides do not match context");
  RMatrix m(ctx.s(), ctx.precision_bits());
  for (std::size_t i = 0; i < ctx.s(); ++i) m.at(i, i) = sides[i];
  return from_columns(ctx, std::move(m));
}

RegionGeometry RegionGeometry::translated(const RVector& shift) const {
  if (shift.size() != s()) throw DimensionMismatch("translate size mismatch");
  RegionGeometry g = *this;
  g.translate_ = vec_add(g.translate_, shift);
  return g;
}

void RegionGeometry::finish(std::optional<RVector> beta) {
  const std::size_t s = ctx_.s();
  const mpfr_prec_t p = ctx_.precision_bits();
  const Real tol = ctx_.tol();
  const Real one = Real::from_long(1, p);

  Real det(p);
  B_inv_ = B_.inverse(det, tol);
  volume_ = det.abs();
  if (volume_ > one + tol) throw ConfigError("region volume exceeds 1");

  translate_.assign(s, Real(p));

  if (beta) {
    beta_ = std::move(*beta);
    if (beta_.size() != s) throw DimensionMismatch("beta size mismatch");
    t_ = B_inv_.mul(beta_);
    // Consistency of the solve at working precision.
    Real res = max_abs(vec_sub(B_.mul(t_), beta_));
    if (res >= tol)
      throw VerificationFailure("B*t does not reproduce beta at working precision");
  }

  // Bounding box of the parallelotope {B u : u in [0,1)^s}, padded by one
  // cell on each side so any representative within [-1,2)^s of the torus
  // point is covered by the shift enumeration.
  std::vector<Real> lo, hi;
  for (std::size_t i = 0; i < s; ++i) {
    Real lo_i(p), hi_i(p);
    for (std::size_t j = 0; j < s; ++j) {
      const Real& b = B_.at(i, j);
      if (b.sign() < 0)
        lo_i += b;
      else
        hi_i += b;
    }
    lo.push_back(std::move(lo_i));
    hi.push_back(std::move(hi_i));
  }

  std::vector<long> m_lo(s), m_hi(s);
  diameter_box_.assign(s, 0);
  double cells = 1;
  for (std::size_t i = 0; i < s; ++i) {
    m_lo[i] = to_long_checked((lo[i]).floor_int() - 1, "shift box");
    m_hi[i] = to_long_checked((hi[i]).floor_int() + 2, "shift box");
    diameter_box_[i] = to_long_checked((hi[i] - lo[i]).floor_int() + 1, "diameter box");
    cells *= static_cast<double>(m_hi[i] - m_lo[i] + 1);
  }
  if (cells > 4e6) throw ConfigError("region extent too large for shift enumeration");

  // Feasibility filter: candidate m survives unless the per-coordinate range
  // of B^-1 x + B^-1 m over x in a slightly inflated unit cube misses [0,1].
  RVector w_lo, w_hi;
  Real slack = Real::from_decimal("0.01", p);
  for (std::size_t i = 0; i < s; ++i) {
    Real lo_i(p), hi_i(p), row_abs(p);
    for (std::size_t j = 0; j < s; ++j) {
      const Real& b = B_inv_.at(i, j);
      if (b.sign() < 0)
        lo_i += b;
      else
        hi_i += b;
      row_abs += b.abs();
    }
    Real pad = slack * (row_abs + one);
    w_lo.push_back(lo_i - pad);
    w_hi.push_back(hi_i + pad);
  }

  candidates_.clear();
  std::vector<long> m(s, 0);
  for (std::size_t i = 0; i < s; ++i) m[i] = m_lo[i];
  while (true) {
    RVector q(s, Real(p));
    bool feasible = true;
    for (std::size_t i = 0; i < s && feasible; ++i) {
      Real qi(p);
      for (std::size_t j = 0; j < s; ++j)
        qi += B_inv_.at(i, j) * Real::from_long(m[j], p);
      if ((qi + w_hi[i]).sign() < 0 || (qi + w_lo[i]) > one) feasible = false;
      q[i] = std::move(qi);
    }
    if (feasible) candidates_.push_back(ShiftCandidate{m, std::move(q)});

    std::size_t k = 0;
    while (k < s) {
      if (m[k] < m_hi[k]) {
        ++m[k];
        break;
      }
      m[k] = m_lo[k];
      ++k;
    }
    if (k == s) break;
  }
  if (candidates_.empty())
    throw VerificationFailure("no feasible integer shifts; degenerate region");
}

SpecialBasis initial_basis(const RotationContext& ctx) {
  const std::size_t s = ctx.s();
  SpecialBasis b{ctx, {}};
  b.v.reserve(s + 1);
  for (std::size_t i = 0; i < s; ++i) {
    LatticeVector e = LatticeVector::zero(s);
    e.a[i] = 1;
    b.v.push_back(std::move(e));
  }
  LatticeVector ap = LatticeVector::zero(s);
  ap.n = 1;
  b.v.push_back(std::move(ap));
  return b;
}

RegionGeometry geometry(const SpecialBasis& basis) { return RegionGeometry::from_basis(basis); }

ConditionReport check_conditions(const SpecialBasis& basis) {
  const std::size_t s = basis.s();
  if (basis.v.size() != s + 1)
    throw DimensionMismatch("special basis must contain s+1 vectors");

  ConditionReport rep;
  rep.determinant = basis_determinant(basis.v);

  rep.s3.pass = (rep.determinant == 1 || rep.determinant == -1);
  rep.s3.detail = "det = " + rep.determinant.get_str();

  bool sign_ok = basis.v[s].n >= 1;
  for (std::size_t i = 0; i < s; ++i)
    if (basis.v[i].n > 0) sign_ok = false;
  rep.sign_invariant.pass = sign_ok;
  rep.sign_invariant.detail =
      sign_ok ? "last(v_i) <= 0 for i <= s, last(v_{s+1}) >= 1" : "sign pattern violated";

  // S4 over all subsets, exact.  Gray-code walk keeps one update per subset.
  if (s <= 20) {
    bool ok = true;
    std::string bad;
    Int sum = basis.v[s].n;  // I = {} gives last(v_{s+1}) itself
    if (sum <= 0) {
      ok = false;
      bad = "I = {}";
    }
    std::vector<bool> in(s, false);
    const unsigned long total = 1ul << s;
    for (unsigned long g = 1; g < total && ok; ++g) {
      unsigned long bit = 0;
      while (!((g >> bit) & 1ul)) ++bit;
      if (in[bit])
        sum += basis.v[bit].n;
      else
        sum -= basis.v[bit].n;
      in[bit] = !in[bit];
      if (sum <= 0) {
        ok = false;
        bad = "subset including i = " + std::to_string(bit + 1);
      }
    }
    rep.s4.pass = ok;
    rep.s4.detail = ok ? "positive over all 2^s subsets" : ("non-positive return sum, " + bad);
  } else {
    rep.s4.pass = sign_ok;
    rep.s4.detail = "s > 20: decided by the sign invariant only";
  }

  try {
    RegionGeometry geom = RegionGeometry::from_basis(basis);
    rep.s1.pass = true;
    rep.s1.detail = "volume = " + geom.volume().to_string(20);
    const Real tol = basis.ctx.tol();
    const Real one = Real::from_long(1, basis.ctx.precision_bits());
    bool in_region = true;
    for (std::size_t i = 0; i < s; ++i) {
      const Real& ti = geom.t()[i];
      if (!ti.is_zero() && (ti.abs() < tol || (one - ti).abs() < tol))
        throw BoundaryAmbiguity("t_" + std::to_string(i + 1) +
                                " within tolerance of the region boundary");
      if (ti.sign() < 0 || ti >= one) in_region = false;
    }
    rep.s2.pass = in_region;
    rep.s2.detail = in_region ? "t in [0,1)^s" : "t outside [0,1)^s";
  } catch (const SingularBasis& e) {
    rep.s1.pass = false;
    rep.s1.detail = e.what();
    rep.s2.pass = false;
    rep.s2.detail = "geometry unavailable";
  }
  return rep;
}

SpecialBasis exchange_step(const SpecialBasis& basis, std::size_t j) {
  const std::size_t s = basis.s();
  if (j >= s) throw ConfigError("exchange direction out of range");
  const mpfr_prec_t p = basis.ctx.precision_bits();
  const Real tol = basis.ctx.tol();
  const Real one = Real::from_long(1, p);

  RegionGeometry geom = RegionGeometry::from_basis(basis);
  const RVector& t = geom.t();

  Real denom = one - t[j];
  if (denom.abs() < tol)
    throw DegenerateCoefficient("t_j within tolerance of 1; cone coefficients blow up");

  // Cone coefficients of the return projection in the exchanged spanning
  // set: c_j = t_j/(1-t_j), c_i = t_i/(1-t_j).
  RVector c;
  std::vector<Int> b;
  c.reserve(s);
  for (std::size_t i = 0; i < s; ++i) {
    Real ci = t[i] / denom;
    if (ci.dist_to_int() < tol)
      throw DegenerateCoefficient("cone coefficient within tolerance of an integer");
    Int bi = ci.floor_int();
    if (bi < 0)
      throw VerificationFailure("negative cone coefficient; input basis not special");
    b.push_back(std::move(bi));
    c.push_back(std::move(ci));
  }

  SpecialBasis out = basis;
  out.v[j] = basis.v[j] - basis.v[s];
  LatticeVector ret = basis.v[s];
  for (std::size_t i = 0; i < s; ++i) ret = ret - out.v[i].scaled(b[i]);
  out.v[s] = std::move(ret);

  if (out.v[j].n > -1 || out.v[s].n < basis.v[s].n)
    throw VerificationFailure("sign invariant not preserved; input basis not special");
  return out;
}

SpecialBasis construct_basis(const RotationContext& ctx,
                             const std::vector<std::size_t>& j_sequence) {
  SpecialBasis b = initial_basis(ctx);
  for (std::size_t j : j_sequence) b = exchange_step(b, j);
  ConditionReport rep = check_conditions(b);
  if (!rep.all_pass())
    throw VerificationFailure("constructed basis fails the region conditions");
  return b;
}

std::optional<RVector> lattice_orbit_membership(const RegionGeometry& geom, const Int& n) {
  const std::size_t s = geom.s();
  const mpfr_prec_t p = geom.precision_bits();
  const Real tol = geom.tol();
  const Real one = Real::from_long(1, p);
  const auto& r_inv = geom.coordinate_inverse();
  if (r_inv.empty())
    throw ConfigError("exact orbit membership requires a region built from a special basis");
  for (const Real& c : geom.translate())
    if (!c.is_zero())
      throw ConfigError("exact orbit membership requires an untranslated region");

  // Reduced representative n*alpha - floor(n*alpha); the floors are safe
  // because a fractional part within tolerance of the boundary would itself
  // be a genuine precision exhaustion.
  Real nr = Real::from_int(n, p);
  std::vector<Int> fl(s);
  for (std::size_t i = 0; i < s; ++i) {
    Real xi = nr * geom.ctx().alpha()[i];
    if (n != 0 && xi.dist_to_int() < tol)
      throw BoundaryAmbiguity("orbit point within tolerance of an integer shift");
    fl[i] = xi.floor_int();
  }

  std::optional<RVector> found;
  std::vector<Int> row(s + 1);
  for (const auto& cand : geom.shift_candidates()) {
    for (std::size_t i = 0; i < s; ++i) row[i] = Int(cand.m[i]) - fl[i];
    row[s] = n;
    // Integer coordinates of the candidate lattice point in the source basis.
    std::vector<Int> c(s + 1, Int(0));
    for (std::size_t j = 0; j <= s; ++j)
      for (std::size_t i = 0; i <= s; ++i) c[j] += row[i] * r_inv[i][j];

    const Int& level = c[s];
    bool out = false;
    RVector u(s, Real(p));
    for (std::size_t j = 0; j < s; ++j) {
      if (level == 0) {
        if (c[j] != 0) {
          out = true;
          break;
        }
        u[j] = Real(p);  // exactly zero
      } else {
        Real y = Real::from_int(level, p) * geom.t()[j];
        if (y.dist_to_int() < tol)
          throw BoundaryAmbiguity("k*t within tolerance of an integer in exact membership");
        Real uj = Real::from_int(c[j], p) + y;
        if (uj.sign() < 0 || uj >= one) {
          out = true;
          break;
        }
        u[j] = std::move(uj);
      }
    }
    if (out) continue;
    if (found)
      throw InjectivityViolation("two integer shifts both qualify; region not injective");
    found = std::move(u);
  }
  return found;
}

std::optional<RVector> torus_membership(const RegionGeometry& geom, const RVector& x) {
  const std::size_t s = geom.s();
  if (x.size() != s) throw DimensionMismatch("point size mismatch");
  const mpfr_prec_t p = geom.precision_bits();
  const Real tol = geom.tol();

  RVector z;
  z.reserve(s);
  for (std::size_t i = 0; i < s; ++i) z.push_back((x[i] - geom.translate()[i]).frac());
  RVector w = geom.B_inv().mul(z);

  std::optional<RVector> found;
  for (const auto& cand : geom.shift_candidates()) {
    RVector u(s, Real(p));
    bool out = false;
    bool ambiguous = false;
    for (std::size_t i = 0; i < s; ++i) {
      u[i] = w[i] + cand.q[i];
      CoordState st = classify_coord(u[i], tol);
      if (st == CoordState::kOut) {
        out = true;
        break;
      }
      if (st == CoordState::kAmbiguous) ambiguous = true;
    }
    if (out) continue;
    if (ambiguous)
      throw BoundaryAmbiguity("membership within tolerance of the region boundary");
    if (found)
      throw InjectivityViolation("two integer shifts both qualify; region not injective");
    found = std::move(u);
  }
  return found;
}

}  // namespace brs
