#include "iwasawa/homcount.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "iwasawa/error.hpp"
#include "iwasawa/integer_matrix.hpp"
#include "iwasawa/local_ring.hpp"
#include "iwasawa/residue.hpp"

namespace iwasawa {

FiniteAbelianPGroup::FiniteAbelianPGroup(std::vector<int> xs) : exponents(std::move(xs)) {
  for (int x : exponents) {
    if (x < 1) throw InvalidArgument("group exponents must be positive");
  }
  std::sort(exponents.rbegin(), exponents.rend());
}

long long FiniteAbelianPGroup::length() const {
  long long s = 0;
  for (int x : exponents) s += x;
  return s;
}

void validate(const DivisibleSpec& s) {
  if (!is_prime(s.p)) throw InvalidArgument("p must be prime");
  if (s.e < 1 || s.f < 1) throw InvalidArgument("e and f must be positive");
  if (s.d < 0) throw InvalidArgument("d must be non-negative");
  if (s.k < 1) throw InvalidArgument("k must be positive");
}

long long tensor_quotient_valuation(const FiniteAbelianPGroup& y, const DivisibleSpec& s) {
  validate(s);
  long long v = 0;
  for (int x : y.exponents) v += static_cast<long long>(s.f) * std::min<long long>(static_cast<long long>(s.e) * x, s.k);
  return v;
}

long long hom_valuation(const FiniteAbelianPGroup& y, const DivisibleSpec& s) {
  return s.d * tensor_quotient_valuation(y, s);
}

long long hom_brute_force(const FiniteAbelianPGroup& y, const DivisibleSpec& s) {
  validate(s);
  const double bits = static_cast<double>(hom_valuation(y, s)) * std::log2(static_cast<double>(s.p));
  if (bits > 20.0) throw ResourceCapError("Hom group too large to enumerate");
  if (y.exponents.empty() || s.d == 0) return 0;
  // A[pi^k] = pi^{-k}O/O = O/pi^k
  const int digits = (s.k + s.e - 1) / s.e + 1;
  LocalRing full = LocalRing::make(s.p, s.e, s.f, digits);
  LocalRing r = full.quotient(s.k);
  const double ring_bits = static_cast<double>(s.f) * s.k * std::log2(static_cast<double>(s.p));
  if (ring_bits > 20.0) throw ResourceCapError("O/pi^k too large to enumerate");
  std::map<int, long long> killed;
  for (int x : y.exponents) {
    if (killed.count(x)) continue;
    RingElt px = r.pow(r.from_int(static_cast<std::int64_t>(s.p)), x);
    long long count = 0;
    RingElt a{};
    const int deg = r.degree();
    for (;;) {
      if (r.is_zero(r.mul(px, a))) ++count;
      int j = 0;
      while (j < deg && a.c[j] + 1 == r.coordinate_modulus(j)) a.c[j++] = 0;
      if (j == deg) break;
      ++a.c[j];
    }
    killed[x] = count;
  }
  // a homomorphism is a choice of image per generator and per copy of A
  long long v = 0;
  for (int x : y.exponents) v += s.d * static_cast<long long>(valuation(static_cast<Residue>(killed[x]), s.p));
  for (const auto& [x, c] : killed) {
    if (checked_power(s.p, valuation(static_cast<Residue>(c), s.p)) != static_cast<std::uint64_t>(c)) {
      throw Error("element count is not a power of p");
    }
  }
  return v;
}

FiniteAbelianPGroup quotient_group(const FiniteAbelianPGroup& y, std::uint64_t p,
                                   const std::vector<std::vector<std::int64_t>>& gens) {
  const std::size_t m = y.exponents.size();
  if (m == 0) return {};
  IntMatrix rel(m, std::vector<std::int64_t>(m + gens.size(), 0));
  for (std::size_t i = 0; i < m; ++i) rel[i][i] = static_cast<std::int64_t>(checked_power(p, y.exponents[i]));
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (gens[g].size() != m) throw InvalidArgument("generator has the wrong length");
    for (std::size_t i = 0; i < m; ++i) rel[i][m + g] = gens[g][i];
  }
  std::vector<int> xs;
  for (auto d : smith_form(rel).diagonal) {
    if (d == 0) throw Error("quotient of a finite group is infinite");
    if (d != 1) xs.push_back(valuation(static_cast<Residue>(d), p));
  }
  return FiniteAbelianPGroup(xs);
}

namespace {

struct Encoder {
  std::vector<std::int64_t> mod;
  long long size = 1;

  std::vector<std::int64_t> decode(long long c) const {
    std::vector<std::int64_t> x(mod.size());
    for (std::size_t i = 0; i < mod.size(); ++i) {
      x[i] = c % mod[i];
      c /= mod[i];
    }
    return x;
  }
  long long encode(const std::vector<std::int64_t>& x) const {
    long long c = 0;
    for (std::size_t i = mod.size(); i-- > 0;) c = c * mod[i] + ((x[i] % mod[i]) + mod[i]) % mod[i];
    return c;
  }
  long long add(long long a, long long b) const {
    auto x = decode(a), y = decode(b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return encode(x);
  }
};

using Subgroup = std::vector<bool>;

Subgroup extend(const Encoder& enc, const Subgroup& s, long long g) {
  std::vector<long long> multiples{0};
  for (long long c = g; c != 0; c = enc.add(c, g)) multiples.push_back(c);
  Subgroup out(enc.size, false);
  for (long long a = 0; a < enc.size; ++a) {
    if (!s[a]) continue;
    for (long long mlt : multiples) out[enc.add(a, mlt)] = true;
  }
  return out;
}

constexpr std::size_t kMaxSubgroups = 100000;

}  // namespace

DefectReport defect_bound_check(const FiniteAbelianPGroup& y, int c_rank, const DivisibleSpec& s,
                                std::uint64_t seed) {
  validate(s);
  if (c_rank < 0) throw InvalidArgument("c_rank must be non-negative");
  DefectReport out;
  out.bound = static_cast<long long>(s.f) * s.d * s.k * c_rank;
  const long long base = s.d * tensor_quotient_valuation(y, s);
  auto record = [&](const std::vector<std::vector<std::int64_t>>& gens) {
    long long v = s.d * tensor_quotient_valuation(quotient_group(y, s.p, gens), s);
    out.max_defect = std::max(out.max_defect, std::llabs(v - base));
    ++out.subgroups;
  };

  Encoder enc;
  double bits = 0;
  for (int x : y.exponents) bits += x * std::log2(static_cast<double>(s.p));
  if (bits <= 12.0 + 1e-9) {
    for (int x : y.exponents) {
      enc.mod.push_back(static_cast<std::int64_t>(checked_power(s.p, x)));
      enc.size *= enc.mod.back();
    }
    Subgroup trivial(enc.size, false);
    trivial[0] = true;
    std::map<Subgroup, std::vector<std::vector<std::int64_t>>> seen{{trivial, {}}};
    std::vector<Subgroup> frontier{trivial};
    bool overflow = false;
    for (int r = 0; r < c_rank && !overflow; ++r) {
      std::vector<Subgroup> next;
      for (const auto& sg : frontier) {
        for (long long g = 1; g < enc.size && !overflow; ++g) {
          if (sg[g]) continue;
          Subgroup t = extend(enc, sg, g);
          if (seen.count(t)) continue;
          auto gens = seen[sg];
          gens.push_back(enc.decode(g));
          seen.emplace(t, std::move(gens));
          next.push_back(std::move(t));
          overflow = seen.size() > kMaxSubgroups;
        }
      }
      frontier = std::move(next);
    }
    if (!overflow) {
      out.exhaustive = true;
      for (const auto& [sg, gens] : seen) record(gens);
    }
  }
  if (!out.exhaustive) {
    std::mt19937_64 rng(seed);
    record({});
    for (int t = 0; t < kDefectSamples; ++t) {
      std::vector<std::vector<std::int64_t>> gens;
      for (int j = 0; j < c_rank; ++j) {
        std::vector<std::int64_t> g;
        for (int x : y.exponents) g.push_back(static_cast<std::int64_t>(rng() % checked_power(s.p, x)));
        gens.push_back(std::move(g));
      }
      record(gens);
    }
  }
  out.pass = out.max_defect <= out.bound;
  return out;
}

}  // namespace iwasawa
