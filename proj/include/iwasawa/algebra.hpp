#pragma once

// Polynomial representatives of elements of O[[T_1, ..., T_l]].

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "iwasawa/cyclotomic.hpp"
#include "iwasawa/integer_matrix.hpp"
#include "iwasawa/local_ring.hpp"

namespace iwasawa {

using Exponent = std::vector<int>;
using RingPtr = std::shared_ptr<const LocalRing>;

inline RingPtr share(LocalRing r) { return std::make_shared<const LocalRing>(std::move(r)); }

inline constexpr int kDefaultDegreeCap = 64;

class AlgebraElt {
 public:
  AlgebraElt(RingPtr ring, int vars);

  static AlgebraElt constant(RingPtr ring, int vars, const RingElt& c);
  static AlgebraElt from_int(RingPtr ring, int vars, std::int64_t c);
  // T_i, 0-based
  static AlgebraElt variable(RingPtr ring, int vars, int i);
  static AlgebraElt monomial(RingPtr ring, int vars, Exponent exps, const RingElt& c);

  const LocalRing& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  int vars() const { return vars_; }
  const std::map<Exponent, RingElt>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  // -1 for the zero polynomial
  int total_degree() const;
  int degree_in(int var) const;
  RingElt coefficient(const Exponent& exps) const;
  void add_term(const Exponent& exps, const RingElt& c);

  AlgebraElt operator+(const AlgebraElt& o) const;
  AlgebraElt operator-(const AlgebraElt& o) const;
  AlgebraElt operator-() const;
  AlgebraElt operator*(const AlgebraElt& o) const;
  AlgebraElt& operator+=(const AlgebraElt& o);
  AlgebraElt& operator-=(const AlgebraElt& o);
  AlgebraElt scale(const RingElt& c) const;
  AlgebraElt pow(std::uint64_t exp) const;

  bool operator==(const AlgebraElt& o) const;

  // Same polynomial with coefficients mapped into another ring of the same tower.
  AlgebraElt convert(RingPtr target) const;

  std::string format() const;

 private:
  void check_compatible(const AlgebraElt& o) const;

  RingPtr ring_;
  int vars_;
  std::map<Exponent, RingElt> terms_;
};

// (1+T_i)^k
AlgebraElt one_plus_t_power(RingPtr ring, int vars, int i, std::uint64_t k);
// omega_n(T_i) = (1+T_i)^(p^n) - 1, variable index 0-based
AlgebraElt omega(RingPtr ring, int n, int i, int vars);

// min v_pi over coefficients; throws on zero
int pi_content(const AlgebraElt& h);
AlgebraElt divide_by_pi_power(const AlgebraElt& h, int t);
// Coefficientwise image in O/pi; throws if h vanishes mod pi.
AlgebraElt reduce_mod_pi(const AlgebraElt& h);

// Primitive integer vector (gcd 1, first nonzero entry positive) spanning the
// same line; nullopt for the zero vector.
std::optional<std::vector<std::int64_t>> normalize_tag(std::vector<std::int64_t> a);
bool is_valid_tag(const std::vector<std::int64_t>& a, std::uint64_t p);

// prod_{a_i>0}(1+T_i)^{a_i} - prod_{a_i<0}(1+T_i)^{-a_i}
AlgebraElt special_generator(RingPtr ring, const std::vector<std::int64_t>& a);

// Ring map induced by (1+T_i) -> prod_j (1+T_j)^{m[i][j]}, up to a monomial
// unit in the (1+T_j). All entries of `hs` share the same unit factor.
std::vector<AlgebraElt> apply_automorphism(const std::vector<AlgebraElt>& hs, const IntMatrix& m,
                                           int degree_cap = kDefaultDegreeCap);
AlgebraElt apply_automorphism(const AlgebraElt& h, const IntMatrix& m,
                              int degree_cap = kDefaultDegreeCap);

// Matrix (over the base ring Z_p) of multiplication by h on O[[T]] = Z_p[[T]]^{ef}.
std::vector<std::vector<AlgebraElt>> restriction_matrix(const AlgebraElt& h);
// Norm O[[T]] -> Z_p[[T]]
AlgebraElt norm_series(const AlgebraElt& h);

// Embed a polynomial over Z_p (degree-one ring) into O.
AlgebraElt extend_scalars(const AlgebraElt& h, RingPtr target);

// q with h = q*g when g divides h exactly; g must have a unit leading
// coefficient in lex order.
std::optional<AlgebraElt> divide_exact(const AlgebraElt& h, const AlgebraElt& g);

// Lex-leading monomial (largest exponent vector) of a nonzero polynomial.
Exponent leading_exponent(const AlgebraElt& h);

// psi-map: h(zeta_1 - 1, ..., zeta_l - 1) where zeta_i = zeta^(choice_i * p^(m - order_i))
// and zeta generates the p^m-th roots of unity of `target` (m = target.level()).
CycloElt psi_eval(const CycloRing& target, const AlgebraElt& h, const std::vector<int>& orders,
                  const std::vector<std::int64_t>& choices);

}  // namespace iwasawa
