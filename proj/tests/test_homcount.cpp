#include <doctest.h>

#include <random>

#include "iwasawa/error.hpp"
#include "iwasawa/homcount.hpp"

using namespace iwasawa;

TEST_CASE("hom and tensor valuation examples") {
  CHECK(hom_valuation(FiniteAbelianPGroup({1}), {3, 2, 1, 1, 3}) == 2);
  CHECK(hom_brute_force(FiniteAbelianPGroup({1}), {3, 2, 1, 1, 3}) == 2);
  CHECK(hom_valuation(FiniteAbelianPGroup({2, 1}), {2, 1, 1, 2, 1}) == 4);
  CHECK(hom_brute_force(FiniteAbelianPGroup({1, 2}), {2, 1, 1, 2, 1}) == 4);
  CHECK(hom_valuation(FiniteAbelianPGroup{}, {5, 2, 2, 3, 4}) == 0);
  CHECK(tensor_quotient_valuation(FiniteAbelianPGroup({1}), {3, 2, 1, 1, 3}) == 2);
  CHECK(tensor_quotient_valuation(FiniteAbelianPGroup({3}), {3, 1, 2, 1, 2}) == 4);
  CHECK(tensor_quotient_valuation(FiniteAbelianPGroup{}, {2, 1, 1, 1, 1}) == 0);
  CHECK_THROWS_AS(FiniteAbelianPGroup({0}), InvalidArgument);
  CHECK_THROWS_AS(hom_valuation(FiniteAbelianPGroup({1}), {4, 1, 1, 1, 1}), InvalidArgument);
  CHECK_THROWS_AS(hom_brute_force(FiniteAbelianPGroup({5, 5}), {2, 1, 1, 3, 5}), ResourceCapError);
}

TEST_CASE("hom identity and brute force on seeded random groups") {
  std::mt19937_64 rng(2024);
  int brute = 0;
  for (int t = 0; t < 100; ++t) {
    std::vector<int> xs;
    int m = static_cast<int>(rng() % 4);
    for (int i = 0; i < m; ++i) xs.push_back(1 + static_cast<int>(rng() % 4));
    FiniteAbelianPGroup y(xs);
    DivisibleSpec s{rng() % 2 ? 2u : 3u, 1 + static_cast<int>(rng() % 2), 1 + static_cast<int>(rng() % 2),
                    static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 6)};
    DivisibleSpec one = s;
    one.d = 1;
    CHECK(hom_valuation(y, s) == s.d * tensor_quotient_valuation(y, one));
    double bits = hom_valuation(y, s) * std::log2(static_cast<double>(s.p));
    double ring_bits = s.f * s.k * std::log2(static_cast<double>(s.p));
    if (bits <= 16 && ring_bits <= 20) {
      CHECK(hom_brute_force(y, s) == hom_valuation(y, s));
      ++brute;
    }
  }
  CHECK(brute > 30);
}

TEST_CASE("monotone in k and saturation") {
  FiniteAbelianPGroup y({2, 1});
  for (int e = 1; e <= 2; ++e) {
    long long prev = 0;
    for (int k = 1; k <= 8; ++k) {
      DivisibleSpec s{3, e, 2, 2, k};
      long long v = hom_valuation(y, s);
      CHECK(v >= prev);
      prev = v;
      if (k >= 2 * e) CHECK(v == 2 * 2 * e * 3);
    }
  }
}

TEST_CASE("quotient groups") {
  FiniteAbelianPGroup y({2, 2});
  CHECK(quotient_group(y, 2, {}).exponents == std::vector<int>{2, 2});
  CHECK(quotient_group(y, 2, {{1, 0}}).exponents == std::vector<int>{2});
  CHECK(quotient_group(y, 2, {{2, 0}}).exponents == std::vector<int>{2, 1});
  CHECK(quotient_group(y, 2, {{1, 1}, {0, 2}}).exponents == std::vector<int>{1});
  CHECK(quotient_group(FiniteAbelianPGroup({1}), 3, {{1}}).exponents.empty());
}

TEST_CASE("defect bound examples") {
  auto a = defect_bound_check(FiniteAbelianPGroup({2, 2}), 1, {2, 1, 1, 1, 2});
  CHECK(a.exhaustive);
  CHECK(a.pass);
  CHECK(a.max_defect <= 2);
  CHECK(a.max_defect == 2);
  // cyclic subgroups of (Z/4)^2 plus the trivial one
  CHECK(a.subgroups == 1 + 3 + 6);

  auto z = defect_bound_check(FiniteAbelianPGroup({2, 2}), 0, {2, 1, 1, 1, 2});
  CHECK(z.max_defect == 0);
  CHECK(z.pass);

  auto b = defect_bound_check(FiniteAbelianPGroup({1}), 1, {2, 1, 2, 3, 1});
  CHECK(b.bound == 6);
  CHECK(b.pass);
  CHECK(b.max_defect == 6);

  auto big = defect_bound_check(FiniteAbelianPGroup({5, 5, 5}), 2, {2, 1, 1, 1, 3}, 7);
  CHECK_FALSE(big.exhaustive);
  CHECK(big.subgroups == 201);
  CHECK(big.pass);

  auto two = defect_bound_check(FiniteAbelianPGroup({2, 1, 1}), 2, {2, 2, 1, 2, 3});
  CHECK(two.exhaustive);
  CHECK(two.pass);
}
