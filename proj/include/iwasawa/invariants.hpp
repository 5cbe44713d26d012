#pragma once

// rank, mu, truncated mu and l0 by symbolic, psi-sum and growth methods, and
// the checks of the transfer and scaling laws.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iwasawa/module.hpp"

namespace iwasawa {

using Tag = std::vector<std::int64_t>;

inline constexpr int kDefaultTagBound = 3;
inline constexpr double kRoundingTolerance = 0.25;

struct MuPair {
  long long mu = 0;
  long long mu_k = 0;
};

MuPair mu_elementary(const std::vector<int>& exponents, int k);

// Symbolic data of a module with a cyclic or elementary shortcut.
struct SymbolicInvariants {
  long long rank = 0;
  std::vector<int> pi_exponents;  // elementary pi-exponents e_i (including series contents)
  long long mu() const;
  long long mu_k(int k) const;
};

std::optional<SymbolicInvariants> symbolic_invariants(const ModulePresentation& m);

struct MuAsymptotic {
  std::vector<int> ks;
  std::vector<int> ns;
  std::map<int, GrowthFit> fits;
  std::map<int, long long> c;     // rounded leading coefficients
  long long rank = 0;
  std::map<int, long long> mu_k;
  bool saturated = false;
  // mu^(k) - mu^(k-1) = #{i : e_i >= k} recovers the elementary exponents
  std::vector<int> exponents() const;
  long long mu() const { return mu_k.rbegin()->second; }
};

// ns empty: the top three levels allowed by the dimension cap.
MuAsymptotic mu_asymptotic(const ModulePresentation& m, const std::vector<int>& ks,
                           std::vector<int> ns = {}, const std::vector<int>& offsets = {});

std::vector<int> default_levels(const ModulePresentation& m, const std::vector<int>& offsets = {},
                                int count = 3);

struct L0Direct {
  long long l0 = 0;
  std::vector<std::pair<Tag, int>> certificate;
};

L0Direct l0_direct(const AlgebraElt& h, int bound = kDefaultTagBound, int degree_cap = kDefaultDegreeCap);

// Characteristic-zero special factors Phi_{p^j}(sigma^a) (negative powers cleared).
AlgebraElt cyclotomic_special_factor(RingPtr ring, const Tag& a, int j);

struct SpecialFactor {
  Tag tag;
  int j = 0;
  int multiplicity = 0;
};

struct SpecialSplit {
  AlgebraElt special_part;   // F'
  AlgebraElt remainder;      // F''
  std::vector<SpecialFactor> factors;
};

SpecialSplit split_special(const AlgebraElt& h, int bound = kDefaultTagBound, int max_j = 2);

struct L0Estimate {
  Rational value;          // S(n)/(n p^{n(l-1)}) or the growth difference
  Rational extrapolated;   // two-level estimate
  long long rounded = 0;
  bool rounds = false;
  std::vector<std::pair<int, Rational>> sums;  // (n, S(n)) or (n, v(n))
};

// psi-sum over all of (W^l)[p^n], h over Z_p.
Rational psi_sum(const AlgebraElt& h, int n);
L0Estimate l0_psi(const AlgebraElt& h, int n, int bound = kDefaultTagBound);

// Growth of the finite part of O[G/G_n]/(h); the result is in the
// normalization of the base ring (ef times the O-invariant). With four or more
// levels and l >= 2 the top four fix v(n) = A n q^n + B q^n + C n + D
// (q = p^(l-1)) and A is returned; otherwise the two-level difference.
L0Estimate l0_growth(const AlgebraElt& h, const std::vector<int>& ns, int bound = kDefaultTagBound);

struct Check {
  std::string invariant;
  std::string method;
  Rational value;
  std::optional<Rational> expected;
  std::vector<std::string> certificate;
  std::vector<double> residuals;
  bool pass = true;
};

struct VerifyReport {
  std::string law;
  std::string case_id;
  std::vector<Check> checks;
  std::string error;  // set when the case could not be evaluated
  bool capped = false;  // error came from a size cap
  bool pass() const;
};

VerifyReport verify_mu_f_scaling(RingPtr ring, int l, const std::vector<int>& exponents);
// Both elementary descriptions of O[[G]]-module and its restriction.
VerifyReport verify_lemma22(RingPtr ring, int l, const std::vector<int>& exponents);
VerifyReport verify_mu_e_scaling(std::uint64_t p, int e, int f, int n, int l = 1, bool asymptotic = true);
VerifyReport verify_l0_tensor(const AlgebraElt& h, RingPtr ring, int bound = kDefaultTagBound);
// growth_levels empty: 1..4 when they fit under dim_cap (0 = current cap), else the top two.
VerifyReport verify_l0_norm(const AlgebraElt& h, const std::vector<int>& growth_levels = {},
                            int bound = kDefaultTagBound, int dim_cap = 0);
VerifyReport verify_uniform_scaling(const ModulePresentation& m, const IntMatrix& lattice,
                                    const std::vector<int>& ks);
VerifyReport verify_growth_theorem(const ModulePresentation& m, const std::vector<int>& ks,
                                   const std::vector<int>& ns);
// S(n) against expected_sums[n-1] for n = 1..size, and the extrapolated l0.
VerifyReport verify_psi_law(const AlgebraElt& h, const std::vector<Rational>& expected_sums,
                            long long expected_l0);

std::string format_tag(const Tag& a);
std::string format_rational(const Rational& r);

}  // namespace iwasawa
