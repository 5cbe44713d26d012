#include <doctest.h>

#include <numeric>
#include <random>

#include "iwasawa/error.hpp"
#include "iwasawa/integer_matrix.hpp"

using namespace iwasawa;

namespace {

IntMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng, int range) {
  IntMatrix m(r, std::vector<std::int64_t>(c));
  for (auto& row : m) {
    for (auto& x : row) x = static_cast<std::int64_t>(rng() % (2 * range + 1)) - range;
  }
  return m;
}

}  // namespace

TEST_CASE("determinant") {
  CHECK(determinant({{2, 1}, {1, 1}}) == 1);
  CHECK(determinant({{0, 1}, {1, 0}}) == -1);
  CHECK(determinant({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}) == 0);
  CHECK(determinant({{2, 0, 0}, {0, 3, 0}, {1, 1, 4}}) == 24);
}

TEST_CASE("smith form reconstructs the matrix") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    auto a = random_matrix(r, c, rng, 6);
    auto s = smith_form(a);
    auto d = multiply(multiply(s.u, a), s.v);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        CHECK(d[i][j] == (i == j ? s.diagonal[i] : 0));
      }
    }
    CHECK(std::llabs(determinant(s.u)) == 1);
    CHECK(std::llabs(determinant(s.v)) == 1);
    for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i) {
      CHECK(s.diagonal[i] >= 0);
      if (s.diagonal[i] != 0) CHECK(s.diagonal[i + 1] % s.diagonal[i] == 0);
      else CHECK(s.diagonal[i + 1] == 0);
    }
    if (r == c) {
      std::int64_t prod = 1;
      for (auto x : s.diagonal) prod *= x;
      CHECK(prod == std::llabs(determinant(a)));
    }
  }
}

TEST_CASE("unimodular inverse") {
  IntMatrix a{{2, 1}, {1, 1}};
  CHECK(multiply(a, unimodular_inverse(a)) == identity_matrix(2));
  IntMatrix b{{1, 2, 3}, {0, 1, 4}, {5, 6, 0}};
  CHECK(multiply(unimodular_inverse(b), b) == identity_matrix(3));
  CHECK_THROWS_AS(unimodular_inverse({{2, 0}, {0, 1}}), InvalidArgument);
}

TEST_CASE("column completion") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 4;
    std::vector<std::int64_t> a(n);
    for (auto& x : a) x = static_cast<std::int64_t>(rng() % 13) - 6;
    std::int64_t g = 0;
    for (auto x : a) g = std::gcd(g, x);
    if (g == 0) {
      CHECK_THROWS_AS(column_completion(a), InvalidArgument);
      continue;
    }
    auto u = column_completion(a);
    auto row = multiply(IntMatrix{a}, u);
    CHECK(row[0][0] == g);
    for (std::size_t j = 1; j < n; ++j) CHECK(row[0][j] == 0);
    CHECK(std::llabs(determinant(u)) == 1);
  }
}
