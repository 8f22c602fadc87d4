#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brs/errors.hpp"
#include "brs/random.hpp"
#include "brs/real.hpp"

using namespace brs;

TEST_CASE("decimal parsing and round-trip strings") {
  Real x = Real::from_decimal("0.6180339887498948482045868343656381177203", 256);
  std::string s = x.to_string();
  Real y = Real::from_decimal(s, 256);
  CHECK(x == y);

  CHECK(Real::from_decimal("0", 64).is_zero());
  CHECK(Real::from_decimal("-0.25", 64).sign() < 0);
  CHECK_THROWS_AS(Real::from_decimal("0.5x", 64), ConfigError);
  CHECK_THROWS_AS(Real::from_decimal("", 64), ConfigError);
}

TEST_CASE("round-trip holds for random values at several precisions") {
  RandomSource rng(1234);
  for (mpfr_prec_t p : {64, 128, 256, 521}) {
    for (int i = 0; i < 200; ++i) {
      Real x = rng.next_real(p);
      CHECK(Real::from_decimal(x.to_string(), p) == x);
    }
  }
}

TEST_CASE("floor, frac and integer distance") {
  Real x = Real::from_decimal("2.75", 128);
  CHECK(x.floor_int() == 2);
  CHECK(x.frac() == Real::from_decimal("0.75", 128));
  CHECK(x.dist_to_int() == Real::from_decimal("0.25", 128));

  Real neg = Real::from_decimal("-0.25", 128);
  CHECK(neg.floor_int() == -1);
  CHECK(neg.frac() == Real::from_decimal("0.75", 128));

  Real z(128);
  CHECK(z.floor_int() == 0);
  CHECK(z.frac().is_zero());
}

TEST_CASE("exact integer conversion and powers of two") {
  Int big("123456789012345678901234567890");
  Real r = Real::from_int(big, 256);
  CHECK(r.floor_int() == big);
  CHECK(Real::two_pow(-3, 64) == Real::from_decimal("0.125", 64));
  CHECK(tolerance(256) == Real::two_pow(-128, 256));
}

TEST_CASE("arithmetic picks the larger operand precision") {
  Real a(64), b(256);
  CHECK((a + b).prec() == 256);
  CHECK((b * a).prec() == 256);
}

TEST_CASE("random source is deterministic and uniform-ish") {
  RandomSource a(7), b(7);
  for (int i = 0; i < 50; ++i) CHECK(a.next_real(128) == b.next_real(128));
  RandomSource c(7);
  long below = 0;
  for (int i = 0; i < 10000; ++i)
    if (c.next_real(64) < Real::from_decimal("0.5", 64)) ++below;
  CHECK(below > 4600);
  CHECK(below < 5400);

  std::string d = RandomSource(3).next_decimal_string(45);
  CHECK(d.size() == 47);
  CHECK(d.substr(0, 2) == "0.");
}
