#pragma once

// Finite abelian p-groups, Hom into divisible O-modules and the truncation
// defect of quotients.

#include <cstdint>
#include <vector>

namespace iwasawa {

struct FiniteAbelianPGroup {
  // x_1 >= ... >= x_m >= 1, the group (+) Z/p^{x_i}
  std::vector<int> exponents;

  FiniteAbelianPGroup() = default;
  explicit FiniteAbelianPGroup(std::vector<int> xs);
  // log_p of the order
  long long length() const;
};

struct DivisibleSpec {
  std::uint64_t p = 2;
  int e = 1;
  int f = 1;
  int d = 1;  // A = (F/O)^d
  int k = 1;  // A[pi^k]
};

void validate(const DivisibleSpec& s);

// v_p |Hom(Y, A[pi^k])|
long long hom_valuation(const FiniteAbelianPGroup& y, const DivisibleSpec& s);
// v_p |(Y (x) O) / pi^k|
long long tensor_quotient_valuation(const FiniteAbelianPGroup& y, const DivisibleSpec& s);
// Counts homomorphisms through generator images; |Hom| <= 2^20.
long long hom_brute_force(const FiniteAbelianPGroup& y, const DivisibleSpec& s);

// Structure of Y / <gens>, each generator given by coordinates in (+) Z/p^{x_i}.
FiniteAbelianPGroup quotient_group(const FiniteAbelianPGroup& y, std::uint64_t p,
                                   const std::vector<std::vector<std::int64_t>>& gens);

struct DefectReport {
  bool exhaustive = false;
  long long subgroups = 0;
  long long max_defect = 0;
  long long bound = 0;
  bool pass = true;
};

inline constexpr long long kExhaustiveGroupOrder = 1LL << 12;
inline constexpr int kDefectSamples = 200;

DefectReport defect_bound_check(const FiniteAbelianPGroup& y, int c_rank, const DivisibleSpec& s,
                                std::uint64_t seed = 1);

}  // namespace iwasawa
