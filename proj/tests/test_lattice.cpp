#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brs/errors.hpp"
#include "brs/lattice.hpp"
#include "helpers.hpp"

using namespace brs;
using namespace brstest;

TEST_CASE("embed reproduces (n*alpha + a, n)") {
  RotationContext ctx = golden_ctx();
  const Real& alpha = ctx.alpha()[0];
  const Real one = Real::from_long(1, ctx.precision_bits());

  SUBCASE("alpha' itself") {
    RVector e = embed(ctx, lv({0}, 1));
    CHECK(e.size() == 2);
    CHECK(e[0] == alpha);
    CHECK(e[1] == one);
  }
  SUBCASE("(a=1, n=-1) embeds to 1 - alpha") {
    RVector e = embed(ctx, lv({1}, -1));
    CHECK(close_to(e[0], one - alpha));
    CHECK(e[1] == -one);
  }
  SUBCASE("origin") {
    RVector e = embed(ctx, lv({0}, 0));
    CHECK(e[0].is_zero());
    CHECK(e[1].is_zero());
  }
  SUBCASE("integer vectors project to themselves") {
    RVector e = embed(ctx, lv({7}, 0));
    CHECK(e[0] == Real::from_long(7, ctx.precision_bits()));
  }
}

TEST_CASE("phys and last split the embedding") {
  RotationContext ctx = golden_ctx();
  LatticeVector v = lv({1}, -1);
  RVector e = embed(ctx, v);
  RVector ph = phys(e);
  CHECK(ph.size() == 1);
  CHECK(ph[0] == e[0]);
  CHECK(last_coordinate(v) == -1);
}

TEST_CASE("lattice vector arithmetic is exact on coordinates") {
  RotationContext ctx = s2_ctx();
  LatticeVector v = lv({3, -2}, 5);
  LatticeVector w = lv({-1, 4}, -7);
  LatticeVector sum = v + w;
  CHECK(sum.a[0] == 2);
  CHECK(sum.a[1] == 2);
  CHECK(sum.n == -2);

  // Additivity of the embedding at working precision.
  RVector ev = embed(ctx, v), ew = embed(ctx, w), es = embed(ctx, sum);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(close_to(es[i], ev[i] + ew[i], -(static_cast<long>(ctx.precision_bits()) - 8)));

  LatticeVector sc = v.scaled(Int(-3));
  CHECK(sc.a[0] == -9);
  CHECK(sc.n == -15);
}

TEST_CASE("basis determinant") {
  SUBCASE("identity-coordinate initial basis") {
    std::vector<LatticeVector> basis = {lv({1, 0}, 0), lv({0, 1}, 0), lv({0, 0}, 1)};
    CHECK(basis_determinant(basis) == 1);
  }
  SUBCASE("golden one-step rows (1,-1), (-1,2)") {
    std::vector<LatticeVector> basis = {lv({1}, -1), lv({-1}, 2)};
    CHECK(basis_determinant(basis) == 1);
  }
  SUBCASE("doubled generator is not a Z-basis") {
    std::vector<LatticeVector> basis = {lv({1}, 0), lv({0}, 2)};
    CHECK(basis_determinant(basis) == 2);
  }
  SUBCASE("row swap flips the sign, row operations keep it") {
    std::vector<LatticeVector> basis = {lv({1}, -1), lv({-1}, 2)};
    std::vector<LatticeVector> swapped = {basis[1], basis[0]};
    CHECK(basis_determinant(swapped) == -basis_determinant(basis));
    std::vector<LatticeVector> sheared = {basis[0], basis[1] + basis[0].scaled(Int(13))};
    CHECK(basis_determinant(sheared) == basis_determinant(basis));
  }
  SUBCASE("dimension mismatch") {
    std::vector<LatticeVector> bad = {lv({1, 0}, 0), lv({0, 1}, 0)};
    CHECK_THROWS_AS(basis_determinant(bad), DimensionMismatch);
  }
}

TEST_CASE("context validation") {
  CHECK_THROWS_AS(RotationContext({"1.25"}, 256), ConfigError);
  CHECK_THROWS_AS(RotationContext({"-0.5"}, 256), ConfigError);
  CHECK_THROWS_AS(RotationContext({"0.5"}, 32), ConfigError);
  CHECK_THROWS_AS(RotationContext({"abc"}, 256), ConfigError);
  CHECK_THROWS_AS(RotationContext({}, 256), ConfigError);
}

TEST_CASE("irrationality advisory flags rational components") {
  RotationContext rational({"0.625"}, 256);  // 5/8
  auto hit = irrationality_advisory(rational, 100);
  REQUIRE(hit.has_value());

  // A 60-digit quadratic irrational has no relation with coefficients <= 1000.
  RotationContext g = golden_ctx();
  CHECK(!irrationality_advisory(g, 1000).has_value());
}
