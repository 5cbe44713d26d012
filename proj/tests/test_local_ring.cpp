#include <doctest.h>

#include <random>

#include "iwasawa/error.hpp"
#include "iwasawa/local_ring.hpp"

using namespace iwasawa;

namespace {

RingElt random_element(const LocalRing& r, std::mt19937_64& rng) {
  RingElt a{};
  for (int i = 0; i < r.degree(); ++i) a.c[i] = rng() % r.coordinate_modulus(i);
  return a;
}

// element of valuation exactly `v` (when v < cap) built as pi^v * unit
RingElt element_with_valuation(const LocalRing& r, int v, std::mt19937_64& rng) {
  RingElt u = random_element(r, rng);
  u.c[0] = (u.c[0] / r.p()) * r.p() + 1 + rng() % (r.p() - 1);
  return r.mul(r.pow(r.pi(), static_cast<std::uint64_t>(v)), u);
}

}  // namespace

TEST_CASE("make_ring picks the documented towers") {
  auto zp = LocalRing::make(3, 1, 1, 8);
  CHECK(zp.degree() == 1);
  CHECK(zp.pi() == zp.from_int(3));
  CHECK(zp.v_pi(zp.from_int(3)) == 1);

  auto ram = LocalRing::make(3, 2, 1, 8);
  CHECK(ram.pi() == ram.basis(1));
  CHECK(ram.v_pi(ram.from_int(3)) == 2);
  // y^2 == 3
  CHECK(ram.mul(ram.pi(), ram.pi()) == ram.from_int(3));

  auto unr = LocalRing::make(3, 1, 2, 8);
  CHECK(unr.unramified_polynomial() == std::vector<Residue>{2, 1, 1});
  CHECK(unr.v_pi(unr.from_int(3)) == 1);
}

TEST_CASE("x^2+x+2 has no root mod 3") {
  int roots = 0;
  for (int x = 0; x < 3; ++x) roots += ((x * x + x + 2) % 3 == 0);
  CHECK(roots == 0);
}

TEST_CASE("invalid ring parameters are rejected") {
  CHECK_THROWS_AS(LocalRing::make(4, 1, 1, 8), InvalidArgument);
  CHECK_THROWS_AS(LocalRing::make(3, 0, 1, 8), InvalidArgument);
  CHECK_THROWS_AS(LocalRing::make(3, 1, 1, 0), InvalidArgument);
  CHECK_THROWS_AS(LocalRing::make(2, 5, 2, 8), InvalidArgument);
  // x^2 + 1 = (x+1)^2 mod 2
  CHECK_THROWS_AS(LocalRing::from_polynomials(2, 8, {1, 0, 1}, {{-2, 0}, {1, 0}}),
                  InvalidArgument);
  // y^2 - 9 is not Eisenstein
  CHECK_THROWS_AS(LocalRing::from_polynomials(3, 8, {0, 1}, {{-9}, {0}, {1}}), InvalidArgument);
}

TEST_CASE("v_pi examples") {
  auto ram = LocalRing::make(3, 2, 1, 8);
  auto x = ram.pi();
  CHECK(ram.v_pi(ram.mul(x, ram.add(ram.one(), x))) == 1);
  CHECK_FALSE(ram.v_pi(ram.zero()).has_value());
  auto unr = LocalRing::make(3, 1, 2, 8);
  CHECK(unr.v_pi(unr.from_int(3)) == 1);
  CHECK(unr.v_pi(unr.x()) == 0);
}

TEST_CASE("norm examples") {
  auto ram = LocalRing::make(3, 2, 1, 8);
  auto n = ram.norm_to_Zp(ram.pi());
  REQUIRE(n.has_value());
  CHECK(*n == ram.digits_ring().mod().from_int(-3));

  auto unr = LocalRing::make(3, 1, 2, 8);
  CHECK(unr.norm_to_Zp(unr.from_int(3)) == Residue{9});
  CHECK(unr.norm_to_Zp(unr.one()) == Residue{1});
  CHECK_FALSE(unr.norm_to_Zp(unr.zero()).has_value());
  // N(x) = constant term of x^2+x+2
  CHECK(unr.norm_to_Zp(unr.x()) == Residue{2});
}

TEST_CASE("valuation properties on the (e,f) grid") {
  std::mt19937_64 rng(7);
  for (std::uint64_t p : {2, 3}) {
    for (int e = 1; e <= 3; ++e) {
      for (int f = 1; f <= 3; ++f) {
        auto r = LocalRing::make(p, e, f, 30);
        const auto& zn = r.digits_ring();
        for (int trial = 0; trial < 40; ++trial) {
          int va = static_cast<int>(rng() % 4);
          int vb = static_cast<int>(rng() % 4);
          auto a = element_with_valuation(r, va, rng);
          auto b = element_with_valuation(r, vb, rng);
          REQUIRE(r.v_pi(a) == va);
          CHECK(r.v_pi(r.mul(a, b)) == va + vb);
          auto na = r.norm_to_Zp(a);
          REQUIRE(na.has_value());
          CHECK(zn.val(*na) == f * va);
          // multiplicativity of the norm
          auto nab = r.norm_to_Zp(r.mul(a, b));
          REQUIRE(nab.has_value());
          CHECK(*nab == zn.mod().mul(*na, *r.norm_to_Zp(b)));
        }
      }
    }
  }
}

TEST_CASE("division in capped rings") {
  std::mt19937_64 rng(11);
  for (int e = 1; e <= 3; ++e) {
    for (int f = 1; f <= 2; ++f) {
      auto full = LocalRing::make(3, e, f, 6);
      for (int k = 1; k <= 6; ++k) {
        auto q = full.quotient(k);
        for (int trial = 0; trial < 30; ++trial) {
          int vb = static_cast<int>(rng() % k);
          int va = vb + static_cast<int>(rng() % (k - vb + 1));
          auto b = element_with_valuation(q, vb, rng);
          auto a = va < k ? element_with_valuation(q, va, rng) : q.zero();
          auto c = q.divide(a, b);
          CHECK(q.mul(c, b) == a);
        }
        auto u = element_with_valuation(q, 0, rng);
        CHECK(q.mul(u, q.inverse(u)) == q.one());
      }
    }
  }
}

TEST_CASE("general Eisenstein polynomial") {
  // y^2 + 3y + 3 over Z_3
  auto r = LocalRing::from_polynomials(3, 8, {0, 1}, {{3}, {3}, {1}});
  auto y = r.pi();
  CHECK(r.v_pi(r.from_int(3)) == 2);
  auto three_over_y = r.divide_by_pi(r.from_int(3));
  CHECK(r.mul(three_over_y, y) == r.from_int(3));
  CHECK(r.v_pi(three_over_y) == 1);
}
