#pragma once

// Arithmetic and small dense linear algebra over Z/p^N.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace iwasawa {

using Residue = std::uint64_t;

// Moduli are kept below 2^62 so that a + b never overflows.
inline constexpr Residue kMaxModulus = Residue{1} << 62;

struct Modulus {
  Residue m = 1;

  Residue add(Residue a, Residue b) const {
    Residue s = a + b;
    return s >= m ? s - m : s;
  }
  Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + (m - b); }
  Residue neg(Residue a) const { return a == 0 ? 0 : m - a; }
  Residue mul(Residue a, Residue b) const {
    return static_cast<Residue>(static_cast<unsigned __int128>(a) * b % m);
  }
  Residue from_int(std::int64_t v) const;
  Residue pow(Residue a, std::uint64_t exp) const;
};

bool is_prime(std::uint64_t n);

// p^k, throwing InvalidArgument if it would reach kMaxModulus.
Residue checked_power(std::uint64_t p, int k);

// Largest N with p^N < kMaxModulus.
int max_digits(std::uint64_t p);

// p-adic valuation of a nonzero integer.
int valuation(Residue a, std::uint64_t p);

std::optional<Residue> inverse_mod(Residue a, Residue m);

// Chain-ring helpers for Z/p^N. `p` is the prime, `mod.m` a power of it.
class PrimePowerRing {
 public:
  PrimePowerRing(std::uint64_t p, int digits);

  std::uint64_t prime() const { return p_; }
  int digits() const { return digits_; }
  const Modulus& mod() const { return mod_; }

  // v_p(a), or nullopt when a is zero in Z/p^N.
  std::optional<int> val(Residue a) const;

  // q with q * b == a, requiring v(a) >= v(b) and b != 0.
  Residue divide(Residue a, Residue b) const;

  // Inverse of a unit.
  Residue inverse(Residue a) const;

  // Determinant of an n x n row-major matrix.
  Residue determinant(std::vector<Residue> matrix, std::size_t n) const;

  // Solves A x = rhs for A invertible (determinant a unit).
  std::vector<Residue> solve(std::vector<Residue> matrix, std::vector<Residue> rhs,
                             std::size_t n) const;

 private:
  std::uint64_t p_;
  int digits_;
  Modulus mod_;
};

}  // namespace iwasawa
