#pragma once

// Small dense integer matrices: Smith form, unimodular completion.
// Entries are checked against int64 overflow.

#include <cstdint>
#include <vector>

namespace iwasawa {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

IntMatrix identity_matrix(std::size_t n);
IntMatrix transpose(const IntMatrix& a);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
std::int64_t determinant(const IntMatrix& a);
// Inverse of a matrix with determinant +-1.
IntMatrix unimodular_inverse(const IntMatrix& a);

struct SmithForm {
  IntMatrix u;  // rows x rows
  IntMatrix v;  // cols x cols
  // diagonal entries d_1 | d_2 | ..., non-negative; length min(rows, cols)
  std::vector<std::int64_t> diagonal;
};

// u * a * v = diag(diagonal) with u, v unimodular.
SmithForm smith_form(const IntMatrix& a);

// Unimodular U with (a^T) U = g e_1^T where g = gcd(a) > 0.
IntMatrix column_completion(const std::vector<std::int64_t>& a);

std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_add(std::int64_t a, std::int64_t b);

}  // namespace iwasawa
