#include "brs/lattice.hpp"

#include <cmath>

#include "brs/errors.hpp"

namespace brs {

RotationContext::RotationContext(std::vector<std::string> alpha_decimals,
                                 mpfr_prec_t precision_bits)
    : decimals_(std::move(alpha_decimals)), precision_(precision_bits) {
  if (decimals_.empty()) throw ConfigError("alpha must have at least one component");
  if (precision_ < 64) throw ConfigError("precision_bits must be >= 64");
  alpha_.reserve(decimals_.size());
  for (const std::string& d : decimals_) {
    Real x = Real::from_decimal(d, precision_);
    if (x.sign() < 0 || x.geq_long(1))
      throw ConfigError("alpha component out of [0,1): " + d);
    alpha_.push_back(std::move(x));
  }
}

LatticeVector LatticeVector::operator+(const LatticeVector& o) const {
  if (a.size() != o.a.size()) throw DimensionMismatch("lattice vector size mismatch");
  LatticeVector r = *this;
  for (std::size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
  r.n += o.n;
  return r;
}

LatticeVector LatticeVector::operator-(const LatticeVector& o) const {
  if (a.size() != o.a.size()) throw DimensionMismatch("lattice vector size mismatch");
  LatticeVector r = *this;
  for (std::size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
  r.n -= o.n;
  return r;
}

LatticeVector LatticeVector::scaled(const Int& k) const {
  LatticeVector r = *this;
  for (Int& x : r.a) x *= k;
  r.n *= k;
  return r;
}

RVector embed(const RotationContext& ctx, const LatticeVector& v) {
  if (v.s() != ctx.s()) throw DimensionMismatch("lattice vector does not match context");
  const mpfr_prec_t p = ctx.precision_bits();
  RVector out;
  out.reserve(ctx.s() + 1);
  Real n_real = Real::from_int(v.n, p);
  for (std::size_t i = 0; i < ctx.s(); ++i) {
    Real x = n_real * ctx.alpha()[i];
    x += Real::from_int(v.a[i], p);
    out.push_back(std::move(x));
  }
  out.push_back(std::move(n_real));
  return out;
}

RVector phys(const RVector& embedded) {
  if (embedded.empty()) throw DimensionMismatch("empty embedded vector");
  return RVector(embedded.begin(), embedded.end() - 1);
}

Int basis_determinant(const std::vector<LatticeVector>& basis) {
  const std::size_t n = basis.size();
  if (n == 0) throw DimensionMismatch("empty basis");
  const std::size_t s = basis[0].s();
  if (n != s + 1) throw DimensionMismatch("basis must contain s+1 vectors");

  // Bareiss fraction-free elimination: every division below is exact.
  std::vector<std::vector<Int>> m(n, std::vector<Int>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (basis[i].s() != s) throw DimensionMismatch("ragged basis");
    for (std::size_t j = 0; j < s; ++j) m[i][j] = basis[i].a[j];
    m[i][s] = basis[i].n;
  }

  Int prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return Int(0);
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : Int(-m[n - 1][n - 1]);
}

namespace {

// Recursive enumeration of coefficient tuples c in [-bound, bound]^s.
bool relation_search(const RotationContext& ctx, long bound, const Real& eps,
                     RVector& partial, std::size_t level, std::vector<long>& c,
                     std::string& hit) {
  const mpfr_prec_t p = ctx.precision_bits();
  if (level == ctx.s()) {
    bool all_zero = true;
    for (long x : c)
      if (x != 0) all_zero = false;
    if (all_zero) return false;
    Real y = partial.back();
    if (y.dist_to_int() < eps) {
      hit = "c = (";
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) hit += ", ";
        hit += std::to_string(c[i]);
      }
      hit += "), c.alpha within 2^-" + std::to_string(ctx.precision_bits() / 2) +
             " of an integer";
      return true;
    }
    return false;
  }
  for (long x = -bound; x <= bound; ++x) {
    c[level] = x;
    Real next = partial.back() + Real::from_long(x, p) * ctx.alpha()[level];
    partial.push_back(std::move(next));
    if (relation_search(ctx, bound, eps, partial, level + 1, c, hit)) return true;
    partial.pop_back();
  }
  return false;
}

}  // namespace

std::optional<std::string> irrationality_advisory(const RotationContext& ctx,
                                                  long max_coefficient) {
  // Keep the exhaustive search budget near 10^7 tuples.
  long bound = max_coefficient;
  double budget = 1e7;
  while (std::pow(2.0 * bound + 1.0, static_cast<double>(ctx.s())) > budget && bound > 1)
    bound = bound / 2;
  RVector partial;
  partial.push_back(Real(ctx.precision_bits()));
  std::vector<long> c(ctx.s(), 0);
  std::string hit;
  if (relation_search(ctx, bound, ctx.tol(), partial, 0, c, hit)) return hit;
  return std::nullopt;
}

}  // namespace brs
