#include <doctest.h>

#include <cmath>
#include <random>

#include "iwasawa/error.hpp"
#include "iwasawa/module.hpp"

using namespace iwasawa;

namespace {

AlgebraElt T(const RingPtr& r, int l, int i) { return AlgebraElt::variable(r, l, i); }
AlgebraElt C(const RingPtr& r, int l, std::int64_t c) { return AlgebraElt::from_int(r, l, c); }

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_CASE("coinvariant presentation examples") {
  auto z3 = share(LocalRing::make(3, 1, 1, 10));
  auto fp = coinvariant_presentation(ModulePresentation::free(z3, 1, 1), 1);
  CHECK(fp.rows == 3);
  CHECK(fp.columns.empty());

  for (int n = 0; n <= 3; ++n) {
    auto m = ModulePresentation::cyclic(T(z3, 1, 0));
    auto q = coinvariant_presentation(m, n);
    CHECK(q.rows == ipow(3, n));
    for (int k = 1; k <= 3; ++k) CHECK(quotient_valuation(q, k) == k);
  }

  auto w = ModulePresentation::cyclic(omega(z3, 1, 0, 1));
  auto qw = coinvariant_presentation(w, 1);
  CHECK(qw.columns.empty());
  CHECK(quotient_valuation(qw, 2) == 2 * 3);
}

TEST_CASE("quotient valuation examples") {
  for (std::uint64_t p : {2, 3}) {
    auto z = share(LocalRing::make(p, 1, 1, 10));
    for (int n = 0; n <= 3; ++n) {
      auto free = coinvariant_presentation(ModulePresentation::free(z, 1, 1), n);
      for (int k = 1; k <= 3; ++k) CHECK(quotient_valuation(free, k) == k * ipow(p, n));
      auto mp = coinvariant_presentation(ModulePresentation::cyclic(C(z, 1, p)), n);
      CHECK(quotient_valuation(mp, 1) == ipow(p, n));
    }
  }
  auto z2 = share(LocalRing::make(2, 1, 1, 10));
  for (int n = 1; n <= 2; ++n) {
    auto mp = coinvariant_presentation(ModulePresentation::cyclic(C(z2, 1, 2)), n);
    CHECK(brute_force_valuation(mp, 1) == ipow(2, n));
  }
}

TEST_CASE("brute force examples") {
  auto z2 = share(LocalRing::make(2, 1, 1, 10));
  FinitePresentation d{z2, 1, {{{0, z2->pi()}}}};
  CHECK(brute_force_valuation(d, 2) == 1);
  CHECK(quotient_valuation(d, 2) == 1);
  auto mp = coinvariant_presentation(ModulePresentation::cyclic(C(z2, 1, 2)), 1);
  CHECK(brute_force_valuation(mp, 1) == 2);
  auto unr = share(LocalRing::make(2, 1, 2, 10));
  FinitePresentation empty{unr, 1, {}};
  CHECK(brute_force_valuation(empty, 1) == 2);
  FinitePresentation big{z2, 21, {}};
  CHECK_THROWS_AS(brute_force_valuation(big, 1), ResourceCapError);
}

TEST_CASE("elimination agrees with enumeration on random presentations") {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    std::uint64_t p = rng() % 2 ? 2 : 3;
    int e = 1 + static_cast<int>(rng() % 2), f = 1 + static_cast<int>(rng() % 2);
    auto r = share(LocalRing::make(p, e, f, 6));
    int k = 1 + static_cast<int>(rng() % 3);
    double bits_per_row = f * k * std::log2(static_cast<double>(p));
    int max_rows = static_cast<int>(20.0 / bits_per_row);
    if (max_rows < 1) continue;
    int rows = 1 + static_cast<int>(rng() % std::min(max_rows, 4));
    int cols = static_cast<int>(rng() % 5);
    FinitePresentation fp{r, rows, {}};
    for (int c = 0; c < cols; ++c) {
      SparseColumn col;
      for (int i = 0; i < rows; ++i) {
        if (rng() % 3 == 0) continue;
        RingElt x{};
        for (int j = 0; j < r->degree(); ++j) x.c[j] = rng() % r->coordinate_modulus(j);
        // bias towards non-units
        if (rng() % 2) x = r->mul(x, r->pow(r->pi(), rng() % 3));
        col.emplace_back(i, x);
      }
      fp.columns.push_back(col);
    }
    CHECK(quotient_valuation(fp, k) == brute_force_valuation(fp, k));
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("free and elementary growth formulas") {
  for (std::uint64_t p : {2, 3}) {
    for (auto [e, f] : {std::pair{1, 1}, {2, 1}, {1, 2}}) {
      auto r = share(LocalRing::make(p, e, f, 10));
      for (int l = 1; l <= 2; ++l) {
        auto free2 = ModulePresentation::free(r, l, 2);
        auto elem = ModulePresentation::elementary(r, l, {2, 1});
        for (int n = 0; n <= (l == 1 ? 3 : 2); ++n) {
          long long size = ipow(p, n * l);
          long long prev = -1;
          for (int k = 1; k <= 3; ++k) {
            CHECK(quotient_valuation(coinvariant_presentation(free2, n), k) == 2 * f * k * size);
            long long v = quotient_valuation(coinvariant_presentation(elem, n), k);
            CHECK(v == f * (std::min(2, k) + 1) * size);
            CHECK(v >= prev);
            prev = v;
          }
        }
      }
    }
  }
}

TEST_CASE("growth fits") {
  auto unr = share(LocalRing::make(3, 1, 2, 10));
  auto mpi = ModulePresentation::elementary(unr, 1, {1});
  auto fit = fit_leading(growth_scan(mpi, 1, {1, 2, 3, 4}));
  CHECK(fit.c == Rational(2));
  CHECK(fit.c_rounded == 2);
  CHECK(fit.bounded);

  auto z3 = share(LocalRing::make(3, 1, 1, 10));
  auto free = fit_leading(growth_scan(ModulePresentation::free(z3, 1, 1), 2, {1, 2, 3}));
  CHECK(free.c_rounded == 2);

  auto z2 = share(LocalRing::make(2, 1, 1, 10));
  auto t1 = ModulePresentation::cyclic(T(z2, 2, 0));
  auto s = growth_scan(t1, 1, {1, 2, 3, 4});
  auto ft = fit_leading(s);
  CHECK(ft.c_rounded == 0);
  CHECK(ft.rounds);
  CHECK(ft.bounded);
  for (const auto& pt : s.points) CHECK(pt.valuation == ipow(2, pt.n));

  // valuations non-decreasing in n
  for (std::size_t i = 1; i < s.points.size(); ++i) CHECK(s.points[i].valuation >= s.points[i - 1].valuation);
}

TEST_CASE("size cap") {
  auto z3 = share(LocalRing::make(3, 1, 1, 10));
  CHECK_THROWS_AS(coinvariant_presentation(ModulePresentation::free(z3, 2, 1), 4), ResourceCapError);
  CHECK(max_feasible_level(ModulePresentation::free(z3, 2, 1), 4096) == 3);
  CHECK(max_feasible_level(ModulePresentation::free(z3, 1, 2), 4096) == 6);
}

TEST_CASE("restriction of scalars preserves cardinalities") {
  auto ram = share(LocalRing::make(3, 2, 1, 10));
  auto h = T(ram, 1, 0) + AlgebraElt::constant(ram, 1, ram->pi());
  auto m = ModulePresentation::cyclic(h);
  auto res = restriction_of_scalars(m);
  CHECK(res.rank == 2);
  for (int n = 0; n <= 2; ++n) {
    // |O/pi^{2j}| = |Z_p/p^j|^2: cardinality at level 2j over O matches level j over Z_p
    for (int j = 1; j <= 2; ++j) {
      CHECK(quotient_valuation(coinvariant_presentation(m, n), 2 * j) ==
            quotient_valuation(coinvariant_presentation(res, n), j));
    }
  }
}
