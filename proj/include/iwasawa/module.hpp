#pragma once

// Finitely presented modules over O[[T_1..T_l]], their finite quotients
// M_{G_n} / pi^k, and cardinality valuations.

#include <optional>
#include <utility>
#include <vector>

#include "iwasawa/algebra.hpp"

namespace iwasawa {

enum class ShortcutKind { generic, cyclic, elementary };

struct ModulePresentation {
  RingPtr ring;
  int vars = 1;
  int rank = 0;
  // each relation is a vector of length `rank`
  std::vector<std::vector<AlgebraElt>> relations;
  ShortcutKind kind = ShortcutKind::generic;
  std::optional<AlgebraElt> cyclic_generator;
  // elementary shortcut: generators ordered pi-torsion, series, free
  std::vector<int> pi_exponents;
  std::vector<AlgebraElt> series;
  int free_rank = 0;

  static ModulePresentation free(RingPtr ring, int vars, int rank);
  static ModulePresentation cyclic(const AlgebraElt& h);
  // (+) O[[G]]/(pi^e_i)  (+)  (+) O[[G]]/(f_j)  (+)  O[[G]]^free_rank
  static ModulePresentation elementary(RingPtr ring, int vars, std::vector<int> pi_exponents,
                                       std::vector<AlgebraElt> series = {}, int free_rank = 0);
  static ModulePresentation zero(RingPtr ring, int vars);
};

ModulePresentation direct_sum(const ModulePresentation& a, const ModulePresentation& b);

// The same module viewed over Z_p[[G]] (rank multiplied by ef).
ModulePresentation restriction_of_scalars(const ModulePresentation& m);

// Image of the module under the automorphism of apply_automorphism.
ModulePresentation transform(const ModulePresentation& m, const IntMatrix& mat,
                             int degree_cap = kDefaultDegreeCap);

using SparseColumn = std::vector<std::pair<int, RingElt>>;

struct FinitePresentation {
  RingPtr ring;
  int rows = 0;
  std::vector<SparseColumn> columns;
};

// Default cap on the ambient dimension; IWASAWA_MAX_DIM overrides it.
int ambient_dimension_cap();

// Raises or lowers the cap on this thread while in scope (IWASAWA_MAX_DIM still wins).
class ScopedDimensionCap {
 public:
  explicit ScopedDimensionCap(int cap);
  ~ScopedDimensionCap();
  ScopedDimensionCap(const ScopedDimensionCap&) = delete;
  ScopedDimensionCap& operator=(const ScopedDimensionCap&) = delete;

 private:
  int previous_;
};

// O[G/G_n]-coinvariants with G_n generated by sigma_i^(p^levels[i]).
FinitePresentation coinvariant_presentation(const ModulePresentation& m, const std::vector<int>& levels);
FinitePresentation coinvariant_presentation(const ModulePresentation& m, int n);

struct DiagonalForm {
  // pi-exponents of the nonzero diagonal entries (all < cap of the working ring)
  std::vector<int> pivots;
  // rows carrying no pivot (copies of O/pi^cap)
  int free_rows = 0;
  int cap = 0;
};

// Diagonalization over O/pi^k (k <= cap of fp.ring).
DiagonalForm diagonal_form(const FinitePresentation& fp, int k);

// v_p(|coker mod pi^k|)
long long quotient_valuation(const FinitePresentation& fp, int k);

// Same quantity by enumerating the image subgroup; ambient size <= 2^20.
long long brute_force_valuation(const FinitePresentation& fp, int k);

struct GrowthPoint {
  int n = 0;
  int k = 0;
  long long valuation = 0;
};

struct GrowthSeries {
  std::uint64_t p = 2;
  int l = 1;
  int e = 1;
  int f = 1;
  std::vector<GrowthPoint> points;
};

// Growth along the filtration with levels offsets[i] + n (offsets default 0).
GrowthSeries growth_scan(const ModulePresentation& m, int k, const std::vector<int>& ns,
                         const std::vector<int>& offsets = {});
// One series per k, sharing a single diagonalization per level.
std::vector<GrowthSeries> growth_scans(const ModulePresentation& m, const std::vector<int>& ks,
                                       const std::vector<int>& ns, const std::vector<int>& offsets = {});

struct GrowthFit {
  Rational c;          // extrapolated leading coefficient
  Rational c_raw;      // v(n)/p^{nl} at the top n
  long long c_rounded = 0;
  bool rounds = false;  // |c - c_rounded| < 0.25
  std::vector<double> residuals;  // (v - c_rounded p^{nl}) / (k p^{n(l-1)})
  double max_residual = 0;
  bool bounded = false;
};

GrowthFit fit_leading(const GrowthSeries& s);

// Largest n with rank * p^{nl} <= cap (and >= 0), optionally with offsets.
int max_feasible_level(const ModulePresentation& m, int cap, const std::vector<int>& offsets = {});

}  // namespace iwasawa
