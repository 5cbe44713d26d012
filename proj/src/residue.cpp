#include "iwasawa/residue.hpp"

#include <utility>

#include "iwasawa/error.hpp"

namespace iwasawa {

Residue Modulus::from_int(std::int64_t v) const {
  if (v >= 0) return static_cast<Residue>(v) % m;
  // -(v+1) avoids overflow at INT64_MIN
  Residue r = (static_cast<Residue>(-(v + 1)) % m + 1) % m;
  return neg(r);
}

Residue Modulus::pow(Residue a, std::uint64_t exp) const {
  Residue result = 1 % m;
  a %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul(result, a);
    a = mul(a, a);
    exp >>= 1U;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Residue checked_power(std::uint64_t p, int k) {
  if (k < 0) throw InvalidArgument("negative exponent");
  Residue r = 1;
  for (int i = 0; i < k; ++i) {
    if (r >= kMaxModulus / p) throw InvalidArgument("p^N exceeds 2^62");
    r *= p;
  }
  return r;
}

int max_digits(std::uint64_t p) {
  int n = 0;
  Residue r = 1;
  while (r < kMaxModulus / p) {
    r *= p;
    ++n;
  }
  return n;
}

int valuation(Residue a, std::uint64_t p) {
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

std::optional<Residue> inverse_mod(Residue a, Residue m) {
  if (m == 1) return Residue{0};
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = a % m;
  while (new_r != 0) {
    __int128 q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) return std::nullopt;
  if (t < 0) t += m;
  return static_cast<Residue>(t);
}

PrimePowerRing::PrimePowerRing(std::uint64_t p, int digits)
    : p_(p), digits_(digits), mod_{checked_power(p, digits)} {
  if (!is_prime(p)) throw InvalidArgument("modulus base must be prime");
  if (digits < 1) throw InvalidArgument("need at least one p-adic digit");
}

std::optional<int> PrimePowerRing::val(Residue a) const {
  a %= mod_.m;
  if (a == 0) return std::nullopt;
  return valuation(a, p_);
}

Residue PrimePowerRing::inverse(Residue a) const {
  auto inv = inverse_mod(a % mod_.m, mod_.m);
  if (!inv) throw InvalidArgument("element is not a unit");
  return *inv;
}

Residue PrimePowerRing::divide(Residue a, Residue b) const {
  auto vb = val(b);
  if (!vb) throw InvalidArgument("division by zero");
  auto va = val(a);
  if (!va) return 0;
  if (*va < *vb) throw InvalidArgument("inexact division");
  Residue pt = checked_power(p_, *vb);
  // a/p^t and b/p^t are known modulo p^(N-t); any lift gives a valid quotient.
  Residue a_red = (a % mod_.m) / pt;
  Residue b_red = (b % mod_.m) / pt;
  return mod_.mul(a_red, inverse(b_red));
}

Residue PrimePowerRing::determinant(std::vector<Residue> a, std::size_t n) const {
  const Modulus& md = mod_;
  Residue det = 1 % md.m;
  bool negate = false;
  for (std::size_t s = 0; s < n; ++s) {
    // full pivoting on minimal valuation keeps every quotient exact
    std::size_t pr = n, pc = n;
    int best = digits_;
    for (std::size_t r = s; r < n; ++r) {
      for (std::size_t c = s; c < n; ++c) {
        auto v = val(a[r * n + c]);
        if (v && *v < best) {
          best = *v;
          pr = r;
          pc = c;
        }
      }
    }
    if (pr == n) return 0;
    if (pr != s) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[pr * n + c], a[s * n + c]);
      negate = !negate;
    }
    if (pc != s) {
      for (std::size_t r = 0; r < n; ++r) std::swap(a[r * n + pc], a[r * n + s]);
      negate = !negate;
    }
    const Residue pivot = a[s * n + s];
    det = md.mul(det, pivot);
    for (std::size_t r = s + 1; r < n; ++r) {
      if (a[r * n + s] == 0) continue;
      Residue q = divide(a[r * n + s], pivot);
      for (std::size_t c = s; c < n; ++c) {
        a[r * n + c] = md.sub(a[r * n + c], md.mul(q, a[s * n + c]));
      }
    }
  }
  return negate ? md.neg(det) : det;
}

std::vector<Residue> PrimePowerRing::solve(std::vector<Residue> a, std::vector<Residue> rhs,
                                           std::size_t n) const {
  const Modulus& md = mod_;
  for (std::size_t s = 0; s < n; ++s) {
    std::size_t pr = n;
    for (std::size_t r = s; r < n; ++r) {
      if (a[r * n + s] % p_ != 0) {
        pr = r;
        break;
      }
    }
    if (pr == n) throw InvalidArgument("singular system");
    if (pr != s) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[pr * n + c], a[s * n + c]);
      std::swap(rhs[pr], rhs[s]);
    }
    Residue inv = inverse(a[s * n + s]);
    for (std::size_t c = 0; c < n; ++c) a[s * n + c] = md.mul(a[s * n + c], inv);
    rhs[s] = md.mul(rhs[s], inv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == s || a[r * n + s] == 0) continue;
      Residue q = a[r * n + s];
      for (std::size_t c = 0; c < n; ++c) {
        a[r * n + c] = md.sub(a[r * n + c], md.mul(q, a[s * n + c]));
      }
      rhs[r] = md.sub(rhs[r], md.mul(q, rhs[s]));
    }
  }
  return rhs;
}

}  // namespace iwasawa
