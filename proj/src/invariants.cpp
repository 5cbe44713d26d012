#include "iwasawa/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "iwasawa/error.hpp"

namespace iwasawa {

MuPair mu_elementary(const std::vector<int>& exponents, int k) {
  MuPair r;
  for (int e : exponents) {
    if (e < 1) throw InvalidArgument("elementary exponents must be positive");
    r.mu += e;
    r.mu_k += std::min(e, k);
  }
  return r;
}

long long SymbolicInvariants::mu() const { return mu_elementary(pi_exponents, 1).mu; }

long long SymbolicInvariants::mu_k(int k) const { return mu_elementary(pi_exponents, k).mu_k; }

std::optional<SymbolicInvariants> symbolic_invariants(const ModulePresentation& m) {
  SymbolicInvariants s;
  auto add_series = [&s](const AlgebraElt& f) {
    if (f.is_zero()) {
      ++s.rank;
      return;
    }
    int c = pi_content(f);
    if (c > 0) s.pi_exponents.push_back(c);
  };
  switch (m.kind) {
    case ShortcutKind::generic:
      return std::nullopt;
    case ShortcutKind::cyclic:
      add_series(*m.cyclic_generator);
      return s;
    case ShortcutKind::elementary:
      s.rank = m.free_rank;
      s.pi_exponents = m.pi_exponents;
      for (const auto& f : m.series) add_series(f);
      return s;
  }
  return std::nullopt;
}

std::vector<int> MuAsymptotic::exponents() const {
  std::vector<int> out;
  long long prev_mu = 0;
  std::vector<long long> at_least;  // at_least[k-1] = #{e_i >= k}
  int expect = 1;
  for (const auto& [k, mu] : mu_k) {
    if (k != expect) throw EstimationError("exponent recovery needs k = 1, 2, ... contiguous");
    at_least.push_back(mu - prev_mu);
    prev_mu = mu;
    ++expect;
  }
  for (std::size_t k = 0; k < at_least.size(); ++k) {
    long long next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
    long long count = at_least[k] - next;
    if (count < 0) throw EstimationError("truncated mu is not concave in k");
    for (long long i = 0; i < count; ++i) out.push_back(static_cast<int>(k + 1));
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

std::vector<int> default_levels(const ModulePresentation& m, const std::vector<int>& offsets, int count) {
  int top = max_feasible_level(m, ambient_dimension_cap(), offsets);
  if (top < 1) throw ResourceCapError("no two consecutive levels fit under the dimension cap");
  std::vector<int> ns;
  for (int n = std::max(0, top - count + 1); n <= top; ++n) ns.push_back(n);
  return ns;
}

MuAsymptotic mu_asymptotic(const ModulePresentation& m, const std::vector<int>& ks_in, std::vector<int> ns,
                           const std::vector<int>& offsets) {
  std::vector<int> ks = ks_in;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  if (ks.size() < 2) throw InvalidArgument("mu_asymptotic needs at least two truncation levels");
  if (ns.empty()) ns = default_levels(m, offsets);
  MuAsymptotic out;
  out.ks = ks;
  out.ns = ns;
  auto series = growth_scans(m, ks, ns, offsets);
  const long long f = m.ring->f();
  for (std::size_t i = 0; i < ks.size(); ++i) {
    GrowthFit fit = fit_leading(series[i]);
    if (!fit.rounds) {
      throw EstimationError("leading coefficient " + format_rational(fit.c) + " at k=" + std::to_string(ks[i]) +
                            " is not within tolerance of an integer");
    }
    out.c[ks[i]] = fit.c_rounded;
    out.fits.emplace(ks[i], std::move(fit));
  }
  auto slope = [&](std::size_t i) {
    long long dc = out.c[ks[i]] - out.c[ks[i - 1]];
    long long dk = ks[i] - ks[i - 1];
    return Rational(dc, dk * f);
  };
  Rational top = slope(ks.size() - 1);
  if (top.denominator() != 1) throw EstimationError("rank estimate " + format_rational(top) + " is not an integer");
  out.rank = top.numerator();
  out.saturated = ks.size() >= 3 && slope(ks.size() - 2) == top;
  for (int k : ks) {
    long long r = out.c[k] - f * out.rank * k;
    if (r % f != 0 || r < 0) throw EstimationError("truncated mu estimate at k=" + std::to_string(k) + " is invalid");
    out.mu_k[k] = r / f;
  }
  return out;
}

L0Direct l0_direct(const AlgebraElt& h, int bound, int degree_cap) {
  if (h.is_zero()) throw InvalidArgument("l0 of the zero series");
  if (bound < 1) throw InvalidArgument("tag bound must be positive");
  AlgebraElt g = divide_by_pi_power(h, pi_content(h));
  AlgebraElt gb = reduce_mod_pi(g);
  L0Direct out;
  if (gb.total_degree() == 0) return out;
  const int l = h.vars();
  std::set<Tag> seen;
  Tag a(l, -bound);
  for (;;) {
    if (auto t = normalize_tag(a); t && seen.insert(*t).second) {
      IntMatrix u = column_completion(*t);
      AlgebraElt img = apply_automorphism(gb, u, degree_cap);
      int v = -1;
      for (const auto& [e, c] : img.terms()) v = v < 0 ? e[0] : std::min(v, e[0]);
      if (v > 0) {
        out.certificate.emplace_back(*t, v);
        out.l0 += v;
      }
    }
    int i = 0;
    while (i < l && a[i] == bound) a[i++] = -bound;
    if (i == l) break;
    ++a[i];
  }
  std::sort(out.certificate.begin(), out.certificate.end());
  return out;
}

AlgebraElt cyclotomic_special_factor(RingPtr ring, const Tag& a, int j) {
  const int l = static_cast<int>(a.size());
  Tag pos(l, 0), neg(l, 0);
  for (int i = 0; i < l; ++i) (a[i] > 0 ? pos[i] : neg[i]) = std::llabs(a[i]);
  AlgebraElt zero_tag(ring, l);
  AlgebraElt P = special_generator(ring, pos) + AlgebraElt::from_int(ring, l, 1);
  AlgebraElt N = special_generator(ring, neg) + AlgebraElt::from_int(ring, l, 1);
  if (j == 0) return P - N;
  const std::uint64_t p = ring->p();
  const std::uint64_t s = checked_power(p, j - 1);
  AlgebraElt out(ring, l);
  for (std::uint64_t k = 0; k < p; ++k) out += P.pow(k * s) * N.pow((p - 1 - k) * s);
  return out;
}

SpecialSplit split_special(const AlgebraElt& h, int bound, int max_j) {
  if (h.is_zero()) throw InvalidArgument("split of the zero series");
  const int l = h.vars();
  SpecialSplit out{AlgebraElt::from_int(h.ring_ptr(), l, 1), h, {}};
  std::set<Tag> seen;
  Tag a(l, -bound);
  for (;;) {
    if (auto t = normalize_tag(a); t && seen.insert(*t).second) {
      for (int j = 0; j <= max_j; ++j) {
        AlgebraElt g = cyclotomic_special_factor(h.ring_ptr(), *t, j);
        if (g.total_degree() > out.remainder.total_degree()) continue;
        int mult = 0;
        while (out.remainder.total_degree() > 0) {
          auto q = divide_exact(out.remainder, g);
          if (!q) break;
          out.remainder = *q;
          out.special_part = out.special_part * g;
          ++mult;
        }
        if (mult > 0) out.factors.push_back({*t, j, mult});
      }
    }
    int i = 0;
    while (i < l && a[i] == bound) a[i++] = -bound;
    if (i == l) break;
    ++a[i];
  }
  return out;
}

namespace {

long long ipow(long long b, long long e) {
  long long r = 1;
  for (long long i = 0; i < e; ++i) r = checked_mul(r, b);
  return r;
}

Rational eval_vp(const AlgebraElt& g, const std::vector<std::int64_t>& x, int n,
                 std::vector<std::optional<CycloRing>>& rings, std::vector<std::optional<CycloRing>>& fine) {
  const auto p = static_cast<std::int64_t>(g.ring().p());
  const int l = g.vars();
  std::vector<int> orders(l, 0);
  std::vector<std::int64_t> choices(l, 1);
  int m = 0;
  for (int i = 0; i < l; ++i) {
    if (x[i] == 0) continue;
    int v = valuation(static_cast<Residue>(x[i]), static_cast<std::uint64_t>(p));
    orders[i] = n - v;
    choices[i] = x[i] / ipow(p, v);
    m = std::max(m, orders[i]);
  }
  const int digits = max_digits(g.ring().p());
  if (!rings[m]) rings[m].emplace(g.ring().p(), m, std::min(g.ring().precision(), digits));
  auto v = rings[m]->vp(psi_eval(*rings[m], g, orders, choices));
  if (!v && rings[m]->digits_ring().digits() < digits) {
    if (!fine[m]) fine[m].emplace(g.ring().p(), m, digits);
    v = fine[m]->vp(psi_eval(*fine[m], g, orders, choices));
  }
  if (!v) {
    throw SpecialDivisorError("characteristic-zero special divisor present; use l0_direct on the split part");
  }
  return *v;
}

// A in v(n) = A n q^n + B q^n + C n + D through the top four points
Rational four_level_coefficient(const std::vector<std::pair<int, Rational>>& pts, long long q) {
  const std::size_t base = pts.size() - 4;
  std::vector<std::vector<Rational>> m(4, std::vector<Rational>(5));
  for (int i = 0; i < 4; ++i) {
    const auto& [n, v] = pts[base + i];
    Rational qn(ipow(q, n));
    m[i] = {Rational(n) * qn, qn, Rational(n), Rational(1), v};
  }
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    while (piv < 4 && m[piv][c] == Rational(0)) ++piv;
    if (piv == 4) throw EstimationError("growth model is degenerate");
    std::swap(m[c], m[piv]);
    for (int r = 0; r < 4; ++r) {
      if (r == c || m[r][c] == Rational(0)) continue;
      Rational t = m[r][c] / m[c][c];
      for (int j = c; j < 5; ++j) m[r][j] -= t * m[c][j];
    }
  }
  return m[0][4] / m[0][0];
}

}  // namespace

Rational psi_sum(const AlgebraElt& h, int n) {
  if (h.ring().degree() != 1) throw InvalidArgument("the psi-sum expects a series over Z_p");
  if (n < 0) throw InvalidArgument("negative level");
  const auto p = static_cast<std::int64_t>(h.ring().p());
  const int l = h.vars();
  const long long pn = ipow(p, n);
  if (ipow(pn, l) > (1LL << 22)) throw ResourceCapError("psi-sum level too large");
  std::vector<std::int64_t> units;
  for (std::int64_t u = 1; u < pn || (pn == 1 && u == 1); ++u) {
    if (u % p != 0 || pn == 1) units.push_back(u);
    if (pn == 1) break;
  }
  // Galois orbits: x ~ u*x
  std::map<std::vector<std::int64_t>, long long> orbits;
  std::vector<std::int64_t> x(l, 0);
  for (;;) {
    std::vector<std::int64_t> best;
    for (auto u : units) {
      std::vector<std::int64_t> y(l);
      for (int i = 0; i < l; ++i) y[i] = (u * x[i]) % pn;
      if (best.empty() || y < best) best = std::move(y);
    }
    ++orbits[best];
    int i = 0;
    while (i < l && x[i] == pn - 1) x[i++] = 0;
    if (i == l) break;
    ++x[i];
  }
  std::vector<std::optional<CycloRing>> rings(n + 1), fine(n + 1);
  Rational total(0);
  for (const auto& [rep, count] : orbits) total += Rational(count) * eval_vp(h, rep, n, rings, fine);
  return total;
}

L0Estimate l0_psi(const AlgebraElt& h, int n, int bound) {
  if (h.ring().degree() != 1) throw InvalidArgument("l0_psi expects a series over Z_p");
  if (n < 1) throw InvalidArgument("l0_psi needs n >= 1");
  auto split = split_special(h, bound);
  if (!split.factors.empty()) {
    throw SpecialDivisorError("characteristic-zero special divisor present; use l0_direct on the split part");
  }
  AlgebraElt g = divide_by_pi_power(h, pi_content(h));
  L0Estimate out;
  if (reduce_mod_pi(g).total_degree() == 0) {
    out.rounds = true;
    return out;
  }
  const auto p = static_cast<long long>(h.ring().p());
  const int l = h.vars();
  Rational s_prev = psi_sum(g, n - 1);
  Rational s_n = psi_sum(g, n);
  out.sums = {{n - 1, s_prev}, {n, s_n}};
  long long scale = ipow(p, static_cast<long long>(n) * (l - 1));
  out.value = s_n / Rational(n * scale);
  out.extrapolated = (s_n - Rational(ipow(p, l - 1)) * s_prev) / Rational(scale);
  double x = boost::rational_cast<double>(out.extrapolated);
  out.rounded = std::llround(x);
  out.rounds = std::fabs(x - static_cast<double>(out.rounded)) < kRoundingTolerance;
  return out;
}

L0Estimate l0_growth(const AlgebraElt& h, const std::vector<int>& ns, int bound) {
  if (ns.size() < 2) throw InvalidArgument("l0_growth needs at least two levels");
  for (std::size_t i = 1; i < ns.size(); ++i) {
    if (ns[i] != ns[i - 1] + 1) throw InvalidArgument("l0_growth levels must be consecutive");
  }
  if (ns.front() < 1) throw InvalidArgument("l0_growth levels start at 1");
  const LocalRing& ring = h.ring();
  auto split = split_special(h, bound);
  long long special = 0;
  if (split.special_part.total_degree() > 0) special = l0_direct(split.special_part, bound).l0 * ring.degree();
  AlgebraElt g = divide_by_pi_power(split.remainder, pi_content(split.remainder));
  const auto p = static_cast<long long>(ring.p());
  const int l = h.vars();
  const int cap = ring.cap();
  auto m = ModulePresentation::cyclic(g);
  L0Estimate out;
  std::vector<Rational> normalized;
  for (int n : ns) {
    auto d = diagonal_form(coinvariant_presentation(m, n), cap);
    long long v = 0;
    for (int t : d.pivots) {
      if (2 * t > cap) throw PrecisionError("torsion exponent too close to the working precision");
      v += t;
    }
    v *= ring.f();
    out.sums.emplace_back(n, Rational(v));
    normalized.push_back(Rational(v, ipow(p, static_cast<long long>(n) * (l - 1))));
  }
  int top = ns.back();
  out.value = normalized.back() / Rational(top) + Rational(special);
  if (l >= 2 && ns.size() >= 4) {
    out.extrapolated = four_level_coefficient(out.sums, ipow(p, l - 1)) + Rational(special);
  } else {
    out.extrapolated = normalized.back() - normalized[normalized.size() - 2] + Rational(special);
  }
  double x = boost::rational_cast<double>(out.extrapolated);
  out.rounded = std::llround(x);
  out.rounds = std::fabs(x - static_cast<double>(out.rounded)) < kRoundingTolerance;
  return out;
}

std::string format_tag(const Tag& a) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < a.size(); ++i) out << (i ? "," : "") << a[i];
  out << ")";
  return out.str();
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace iwasawa
