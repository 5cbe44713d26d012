#pragma once

// Reference computations used only by the tests. They deliberately go through
// different formulas than the library.

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

inline u64 ipow(u64 b, int e) {
  u64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline int vp_int(u64 a, u64 p) {
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

// Coefficients of P(lambda + 1) for P given low degree first, mod m.
inline std::vector<u64> taylor_shift(const std::vector<u64>& poly, u64 m) {
  std::vector<u64> out(poly.size(), 0);
  // Horner: Q <- Q*(lambda+1) + c
  for (std::size_t i = poly.size(); i-- > 0;) {
    std::vector<u64> next(poly.size(), 0);
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (out[j] == 0) continue;
      next[j] = (next[j] + out[j]) % m;
      if (j + 1 < next.size()) next[j + 1] = (next[j + 1] + out[j]) % m;
    }
    next[0] = (next[0] + poly[i] % m) % m;
    out = std::move(next);
  }
  return out;
}

// v_p of an element of Z/p^N[zeta_{p^m}] given in the power basis, by
// rewriting in the uniformizer lambda = zeta - 1 (Eisenstein of degree phi).
inline std::optional<boost::rational<long long>> lambda_valuation(const std::vector<u64>& coeffs,
                                                                  u64 p, int m, int digits) {
  u64 mod = ipow(p, digits);
  if (m == 0) {
    u64 a = coeffs.empty() ? 0 : coeffs[0] % mod;
    if (a == 0) return std::nullopt;
    return boost::rational<long long>(vp_int(a, p), 1);
  }
  u64 step = ipow(p, m - 1);
  std::size_t phi = step * (p - 1);
  std::vector<u64> cyc(step * p - step + 1, 0);
  for (u64 j = 0; j < p; ++j) cyc[j * step] = 1;
  auto e = taylor_shift(cyc, mod);
  std::vector<u64> poly(coeffs);
  poly.resize(std::max(poly.size(), phi), 0);
  auto b = taylor_shift(poly, mod);
  for (std::size_t d = b.size(); d-- > phi;) {
    u64 c = b[d];
    if (c == 0) continue;
    b[d] = 0;
    for (std::size_t j = 0; j < phi; ++j) {
      b[d - phi + j] = (b[d - phi + j] + mod - mulmod(c, e[j], mod)) % mod;
    }
  }
  std::optional<long long> best;
  for (std::size_t j = 0; j < phi; ++j) {
    if (b[j] == 0) continue;
    long long v = static_cast<long long>(phi) * vp_int(b[j], p) + static_cast<long long>(j);
    if (!best || v < *best) best = v;
  }
  if (!best) return std::nullopt;
  return boost::rational<long long>(*best, static_cast<long long>(phi));
}

}  // namespace oracle
