#include "brs/real.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "brs/errors.hpp"

namespace brs {

Real Real::from_decimal(std::string_view text, mpfr_prec_t prec) {
  std::string s(text);
  if (s.empty()) throw ConfigError("empty decimal literal");
  Real r(prec);
  const char* begin = s.c_str();
  char* end = nullptr;
  mpfr_strtofr(r.v_, begin, &end, 10, MPFR_RNDN);
  if (end == begin || *end != '\0')
    throw ConfigError("malformed decimal literal: '" + s + "'");
  return r;
}

namespace {

std::string format_from_digits(std::string digits, mpfr_exp_t exp, int sign) {
  // mpfr_get_str returns mantissa digits d1 d2 ... with value
  // 0.d1d2... * 10^exp.  Positional notation for moderate exponents,
  // d1.d2...e(exp-1) otherwise; trailing zeros trimmed either way.
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  std::string out;
  if (sign < 0) out += '-';
  const long e = static_cast<long>(exp);
  if (e > 0 && e <= 21) {
    if (static_cast<std::size_t>(e) >= digits.size()) {
      out += digits;
      out.append(static_cast<std::size_t>(e) - digits.size(), '0');
    } else {
      out.append(digits, 0, static_cast<std::size_t>(e));
      out += '.';
      out.append(digits, static_cast<std::size_t>(e), std::string::npos);
    }
    return out;
  }
  if (e <= 0 && e > -4) {
    out += "0.";
    out.append(static_cast<std::size_t>(-e), '0');
    out += digits;
    return out;
  }
  out += digits[0];
  if (digits.size() > 1) {
    out += '.';
    out.append(digits, 1, std::string::npos);
  }
  if (e != 1) {
    out += 'e';
    out += std::to_string(e - 1);
  }
  return out;
}

}  // namespace

std::string Real::to_string() const {
  if (mpfr_zero_p(v_)) return "0";
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  mpfr_exp_t exp = 0;
  // n = 0 lets MPFR pick enough digits for exact read-back.
  char* raw = mpfr_get_str(nullptr, &exp, 10, 0, v_, MPFR_RNDN);
  std::string digits = raw;
  mpfr_free_str(raw);
  int sign = 1;
  if (!digits.empty() && digits[0] == '-') {
    sign = -1;
    digits.erase(digits.begin());
  }
  return format_from_digits(std::move(digits), exp, sign);
}

std::string Real::to_string(size_t n_digits) const {
  if (mpfr_zero_p(v_)) return "0";
  mpfr_exp_t exp = 0;
  char* raw = mpfr_get_str(nullptr, &exp, 10, n_digits, v_, MPFR_RNDN);
  std::string digits = raw;
  mpfr_free_str(raw);
  int sign = 1;
  if (!digits.empty() && digits[0] == '-') {
    sign = -1;
    digits.erase(digits.begin());
  }
  return format_from_digits(std::move(digits), exp, sign);
}

}  // namespace brs
