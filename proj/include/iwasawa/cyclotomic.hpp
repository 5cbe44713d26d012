#pragma once

// Z/p^N[zeta] for zeta a primitive p^m-th root of unity, in the power basis
// 1, zeta, ..., zeta^(phi-1) modulo the p^m-th cyclotomic polynomial.

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <vector>

#include "iwasawa/residue.hpp"

namespace iwasawa {

using Rational = boost::rational<long long>;

struct CycloElt {
  std::vector<Residue> c;

  bool operator==(const CycloElt&) const = default;
};

class CycloRing {
 public:
  CycloRing(std::uint64_t p, int level, int precision);

  std::uint64_t p() const { return p_; }
  int level() const { return level_; }
  int phi() const { return phi_; }
  // p^level
  std::uint64_t order() const { return order_; }
  const PrimePowerRing& digits_ring() const { return zn_; }

  CycloElt zero() const;
  CycloElt one() const;
  CycloElt from_int(std::int64_t v) const;
  CycloElt from_residue(Residue v) const;
  // zeta^u for any integer u
  CycloElt zeta_power(std::int64_t u) const;

  bool is_zero(const CycloElt& a) const;
  CycloElt add(const CycloElt& a, const CycloElt& b) const;
  CycloElt sub(const CycloElt& a, const CycloElt& b) const;
  CycloElt mul(const CycloElt& a, const CycloElt& b) const;
  CycloElt scale(const CycloElt& a, Residue s) const;

  // Galois action zeta -> zeta^u, u prime to p.
  CycloElt conjugate(const CycloElt& a, std::int64_t u) const;

  // Norm down to Z/p^N (determinant of multiplication).
  Residue norm(const CycloElt& a) const;

  // cyclo_vp: v_p(a) normalized by v_p(p) = 1; nullopt when a vanishes mod p^N
  // or its norm does.
  std::optional<Rational> vp(const CycloElt& a) const;

 private:
  // reduce a coefficient vector of any length modulo Phi_{p^m}
  CycloElt reduce(std::vector<Residue> coeffs) const;

  std::uint64_t p_;
  int level_;
  int phi_;
  std::uint64_t order_;
  std::uint64_t step_;  // p^(level-1)
  PrimePowerRing zn_;
};

}  // namespace iwasawa
