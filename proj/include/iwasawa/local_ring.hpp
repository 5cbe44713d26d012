#pragma once

// The coefficient ring O: an unramified extension W = Z_p[x]/(u(x)) of degree f
// followed by an Eisenstein extension O = W[y]/(E(y)) of degree e, truncated
// at pi^K. Elements are coordinate vectors in the basis x^i y^j,
// stored at index i + f*j.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iwasawa/residue.hpp"

namespace iwasawa {

inline constexpr int kMaxRank = 9;

struct RingElt {
  std::array<Residue, kMaxRank> c{};

  bool operator==(const RingElt&) const = default;
};

class LocalRing {
 public:
  // make_ring: deterministic tower with the first primitive unramified
  // polynomial (in a fixed enumeration order) and E(y) = y^e - p.
  static LocalRing make(std::uint64_t p, int e, int f, int precision);

  // Tower from explicit polynomials, coefficients low degree first.
  // `unram` has length f+1 (monic); `eisenstein` has length e+1, each entry the
  // f coordinates of an element of W (the last must be 1).
  static LocalRing from_polynomials(std::uint64_t p, int precision,
                                    std::vector<std::int64_t> unram,
                                    std::vector<std::vector<std::int64_t>> eisenstein);

  // O / pi^k, carrying enough p-adic digits to represent it.
  LocalRing quotient(int k) const;
  // Same tower at a different p-adic precision (uncapped).
  LocalRing with_precision(int precision) const;
  // Z_p at this ring's precision.
  LocalRing base() const;

  std::uint64_t p() const { return p_; }
  int e() const { return e_; }
  int f() const { return f_; }
  int degree() const { return e_ * f_; }
  int precision() const { return digits_; }
  // Elements are known modulo pi^cap(); cap() == e*precision() for an uncapped ring.
  int cap() const { return cap_; }
  bool is_capped() const { return cap_ < e_ * digits_; }
  std::uint64_t residue_field_size() const;
  const PrimePowerRing& digits_ring() const { return zn_; }
  Residue coordinate_modulus(int index) const { return coord_mod_[index]; }

  const std::vector<Residue>& unramified_polynomial() const { return unram_; }
  const std::vector<RingElt>& eisenstein_polynomial() const { return eisen_; }

  // Tower shape equality (p, e, f, defining polynomials); ignores precision.
  bool same_tower(const LocalRing& other) const;

  RingElt zero() const { return RingElt{}; }
  RingElt one() const;
  RingElt from_int(std::int64_t v) const;
  RingElt from_coords(const std::vector<std::int64_t>& coords) const;
  RingElt basis(int index) const;
  RingElt pi() const;
  RingElt x() const;

  bool is_zero(const RingElt& a) const;
  RingElt add(const RingElt& a, const RingElt& b) const;
  RingElt sub(const RingElt& a, const RingElt& b) const;
  RingElt neg(const RingElt& a) const;
  RingElt mul(const RingElt& a, const RingElt& b) const;
  RingElt scale(const RingElt& a, Residue s) const;
  RingElt pow(RingElt a, std::uint64_t exp) const;

  // v_pi(a); nullopt when a vanishes modulo pi^cap().
  std::optional<int> v_pi(const RingElt& a) const;
  bool is_unit(const RingElt& a) const { return v_pi(a) == 0; }

  // a / pi for v_pi(a) >= 1. The quotient is determined modulo pi^(cap-1).
  RingElt divide_by_pi(const RingElt& a) const;
  RingElt divide_by_pi_power(RingElt a, int t) const;
  RingElt inverse(const RingElt& unit) const;
  // q with q*b == a, requiring v_pi(a) >= v_pi(b).
  RingElt divide(const RingElt& a, const RingElt& b) const;

  // Field norm down to Z_p (mod p^N); nullopt when indeterminate.
  std::optional<Residue> norm_to_Zp(const RingElt& a) const;
  // Column j holds the coordinates of a * basis(j); row-major, degree x degree.
  std::vector<Residue> multiplication_matrix(const RingElt& a) const;

  // Image of a coordinate vector over Z_p (lifted) under Z_p -> O.
  RingElt embed(Residue base_value) const;

  // Map from a ring with the same tower at another precision/cap.
  RingElt convert(const LocalRing& from, const RingElt& a) const;

  std::string describe() const;
  std::string format(const RingElt& a) const;

 private:
  LocalRing() = default;
  void finalize();
  void finalize_moduli_only();
  RingElt reduce(RingElt a) const;
  // multiplication in W on coordinate arrays of length f
  void unram_mul(const Residue* a, const Residue* b, Residue* out) const;

  std::uint64_t p_ = 2;
  int e_ = 1;
  int f_ = 1;
  int digits_ = 1;
  int cap_ = 1;
  PrimePowerRing zn_{2, 1};
  std::vector<std::int64_t> unram_int_;
  std::vector<std::vector<std::int64_t>> eisen_int_;
  std::vector<Residue> unram_;
  std::vector<RingElt> eisen_;
  std::array<Residue, kMaxRank> coord_mod_{};
  RingElt rho_;  // p / y when e > 1
};

// Search order used by make(): first primitive monic polynomial of degree f over
// F_p, constant coefficient varying fastest. f == 1 gives x.
std::vector<Residue> find_unramified_polynomial(std::uint64_t p, int f);

}  // namespace iwasawa
