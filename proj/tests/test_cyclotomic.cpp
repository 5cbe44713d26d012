#include <doctest.h>

#include <random>

#include "iwasawa/cyclotomic.hpp"
#include "iwasawa/error.hpp"
#include "oracles.hpp"

using namespace iwasawa;

TEST_CASE("cyclo_vp examples") {
  CycloRing r3(3, 1, 20);
  auto lambda = r3.sub(r3.zeta_power(1), r3.one());
  CHECK(r3.vp(lambda) == Rational(1, 2));
  CHECK(r3.norm(lambda) == 3);

  for (int m = 0; m <= 3; ++m) {
    CycloRing r(2, m, 30);
    CHECK(r.vp(r.from_int(2)) == Rational(1));
  }

  CycloRing r4(2, 2, 20);
  auto z2m1 = r4.sub(r4.zeta_power(2), r4.one());
  CHECK(z2m1 == r4.from_int(-2));
  CHECK(r4.vp(z2m1) == Rational(1));

  CHECK_FALSE(r4.vp(r4.zero()).has_value());
}

TEST_CASE("zeta has the right order") {
  for (std::uint64_t p : {2, 3, 5}) {
    for (int m = 0; m <= 3; ++m) {
      CycloRing r(p, m, 10);
      auto z = r.zeta_power(1);
      CycloElt acc = r.one();
      for (std::uint64_t i = 0; i < r.order(); ++i) acc = r.mul(acc, z);
      CHECK(acc == r.one());
      if (m > 0) CHECK_FALSE(r.zeta_power(static_cast<std::int64_t>(r.order() / p)) == r.one());
      CHECK(r.mul(r.zeta_power(-1), z) == r.one());
    }
  }
}

TEST_CASE("v(zeta - 1) = 1/phi") {
  for (std::uint64_t p : {2, 3}) {
    for (int m = 1; m <= (p == 2 ? 4 : 3); ++m) {
      CycloRing r(p, m, 30);
      auto lambda = r.sub(r.zeta_power(1), r.one());
      CHECK(r.vp(lambda) == Rational(1, r.phi()));
    }
  }
}

TEST_CASE("Galois invariance and agreement with the lambda-adic oracle") {
  std::mt19937_64 rng(3);
  for (std::uint64_t p : {2, 3}) {
    for (int m = 1; m <= 3; ++m) {
      CycloRing r(p, m, 25);
      for (int trial = 0; trial < 30; ++trial) {
        // sparse small elements have interesting valuations
        CycloElt a = r.zero();
        for (int i = 0; i < r.phi(); ++i) {
          if (rng() % 3 == 0) a.c[i] = r.digits_ring().mod().from_int(static_cast<int>(rng() % 7) - 3);
        }
        if (rng() % 2) a = r.mul(a, r.from_int(static_cast<std::int64_t>(p)));
        auto v = r.vp(a);
        auto ref = oracle::lambda_valuation(a.c, p, m, 25);
        REQUIRE(v.has_value() == ref.has_value());
        if (!v) continue;
        CHECK(*v == *ref);
        for (std::int64_t u = 1; u < static_cast<std::int64_t>(r.order()); ++u) {
          if (u % static_cast<std::int64_t>(p) == 0) continue;
          CHECK(r.vp(r.conjugate(a, u)) == v);
        }
      }
    }
  }
}

TEST_CASE("conjugation is a ring map") {
  CycloRing r(3, 2, 12);
  auto a = r.add(r.zeta_power(4), r.from_int(5));
  auto b = r.sub(r.zeta_power(7), r.zeta_power(2));
  CHECK(r.conjugate(r.mul(a, b), 2) == r.mul(r.conjugate(a, 2), r.conjugate(b, 2)));
  CHECK(r.conjugate(r.zeta_power(1), 5) == r.zeta_power(5));
  CHECK_THROWS_AS(r.conjugate(a, 3), InvalidArgument);
}
