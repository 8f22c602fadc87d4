#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <string_view>
#include <vector>

namespace brs {

// Exact integers.  Lattice coordinates are never rounded.
using Int = mpz_class;

/// Arbitrary-precision binary floating point value (MPFR, round-to-nearest).
/// Every value carries its own precision in bits; binary operations produce
/// a result at the larger of the two operand precisions.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 64) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }

  Real(Real&& o) noexcept {
    v_[0] = o.v_[0];
    mpfr_init2(o.v_, MPFR_PREC_MIN);
  }

  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }

  Real& operator=(Real&& o) noexcept {
    if (this != &o) {
      mpfr_swap(v_, o.v_);
    }
    return *this;
  }

  ~Real() { mpfr_clear(v_); }

  /// Parses a decimal string at the given precision.  Throws ConfigError on
  /// malformed input.
  static Real from_decimal(std::string_view text, mpfr_prec_t prec);

  static Real from_int(const Int& z, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_z(r.v_, z.get_mpz_t(), MPFR_RNDN);
    return r;
  }

  static Real from_long(long x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
  }

  /// 2^e, exact.
  static Real two_pow(long e, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }

  /// sqrt(n) for small n, at the given precision (test/input generation).
  static Real sqrt_ui(unsigned long n, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_sqrt_ui(r.v_, n, MPFR_RNDN);
    return r;
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Round-trip decimal string: reading it back at the same precision
  /// recovers the value exactly.  Trailing zeros are trimmed.
  std::string to_string() const;

  /// Decimal string with a fixed number of significant digits.
  std::string to_string(size_t digits) const;

  Real operator-() const {
    Real r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  Real& operator+=(const Real& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(const Real& o) {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(const Real& o) {
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(const Real& o) {
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

  friend Real operator+(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  friend int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_); }
  friend bool operator<(const Real& a, const Real& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Real& a, const Real& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Real& a, const Real& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Real& a, const Real& b) { return cmp(a, b) >= 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }

  bool less_long(long x) const { return mpfr_cmp_si(v_, x) < 0; }
  bool geq_long(long x) const { return mpfr_cmp_si(v_, x) >= 0; }

  Real abs() const {
    Real r(prec());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
  }

  /// floor(x) as an exact integer.
  Int floor_int() const {
    Int z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
    return z;
  }

  /// Nearest integer (ties to even) as an exact integer.
  Int round_int() const {
    Real t(prec());
    mpfr_rint(t.v_, v_, MPFR_RNDN);
    Int z;
    mpfr_get_z(z.get_mpz_t(), t.v_, MPFR_RNDN);
    return z;
  }

  /// Fractional part in [0, 1): x - floor(x).
  Real frac() const {
    Real f = Real::from_int(floor_int(), prec());
    Real r(prec());
    mpfr_sub(r.v_, v_, f.v_, MPFR_RNDN);
    // Rounding can push the difference to exactly 1 when x is just below an
    // integer; fold it back.
    if (mpfr_cmp_ui(r.v_, 1) >= 0) mpfr_sub_ui(r.v_, r.v_, 1, MPFR_RNDN);
    if (mpfr_sgn(r.v_) < 0) mpfr_add_ui(r.v_, r.v_, 1, MPFR_RNDN);
    return r;
  }

  /// |x - nearest integer|.
  Real dist_to_int() const {
    Real r = *this - Real::from_int(round_int(), prec());
    return r.abs();
  }

 private:
  mpfr_t v_;
};

using RVector = std::vector<Real>;

/// Verification tolerance 2^(-P/2) for working precision P.
inline Real tolerance(mpfr_prec_t precision_bits) {
  return Real::two_pow(-static_cast<long>(precision_bits / 2), precision_bits);
}

}  // namespace brs
