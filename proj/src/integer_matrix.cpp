#include "iwasawa/integer_matrix.hpp"

#include <cstdlib>
#include <utility>

#include "iwasawa/error.hpp"

namespace iwasawa {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceCapError("integer matrix overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ResourceCapError("integer matrix overflow");
  return r;
}

namespace {

std::size_t cols_of(const IntMatrix& a) { return a.empty() ? 0 : a[0].size(); }

// row_i += q * row_j
void add_row(IntMatrix& a, std::size_t i, std::size_t j, std::int64_t q) {
  for (std::size_t c = 0; c < a[i].size(); ++c) a[i][c] = checked_add(a[i][c], checked_mul(q, a[j][c]));
}

void add_col(IntMatrix& a, std::size_t i, std::size_t j, std::int64_t q) {
  for (auto& row : a) row[i] = checked_add(row[i], checked_mul(q, row[j]));
}

void swap_cols(IntMatrix& a, std::size_t i, std::size_t j) {
  for (auto& row : a) std::swap(row[i], row[j]);
}

}  // namespace

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix transpose(const IntMatrix& a) {
  IntMatrix t(cols_of(a), std::vector<std::int64_t>(a.size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  }
  return t;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (cols_of(a) != b.size()) throw InvalidArgument("matrix shape mismatch");
  IntMatrix r(a.size(), std::vector<std::int64_t>(cols_of(b), 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols_of(b); ++j) {
        r[i][j] = checked_add(r[i][j], checked_mul(a[i][k], b[k][j]));
      }
    }
  }
  return r;
}

std::int64_t determinant(const IntMatrix& a) {
  const std::size_t n = a.size();
  if (cols_of(a) != n) throw InvalidArgument("determinant of a non-square matrix");
  if (n == 0) return 1;
  // Bareiss fraction-free elimination
  std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
  }
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && m[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(m[s], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  __int128 d = m[n - 1][n - 1] * sign;
  if (d > INT64_MAX || d < INT64_MIN) throw ResourceCapError("determinant overflow");
  return static_cast<std::int64_t>(d);
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
  const std::size_t n = a.size();
  IntMatrix m = a;
  IntMatrix inv = identity_matrix(n);
  for (std::size_t t = 0; t < n; ++t) {
    // Euclid down column t among rows >= t
    for (;;) {
      std::size_t best = n;
      for (std::size_t i = t; i < n; ++i) {
        if (m[i][t] != 0 && (best == n || std::llabs(m[i][t]) < std::llabs(m[best][t]))) best = i;
      }
      if (best == n) throw InvalidArgument("matrix is not unimodular");
      std::swap(m[best], m[t]);
      std::swap(inv[best], inv[t]);
      bool done = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (m[i][t] == 0) continue;
        std::int64_t q = m[i][t] / m[t][t];
        add_row(m, i, t, -q);
        add_row(inv, i, t, -q);
        if (m[i][t] != 0) done = false;
      }
      if (done) break;
    }
    if (std::llabs(m[t][t]) != 1) throw InvalidArgument("matrix is not unimodular");
    if (m[t][t] < 0) {
      for (auto& v : m[t]) v = -v;
      for (auto& v : inv[t]) v = -v;
    }
  }
  for (std::size_t t = n; t-- > 0;) {
    for (std::size_t i = 0; i < t; ++i) {
      if (m[i][t] == 0) continue;
      std::int64_t q = m[i][t];
      add_row(m, i, t, -q);
      add_row(inv, i, t, -q);
    }
  }
  return inv;
}

SmithForm smith_form(const IntMatrix& a) {
  const std::size_t rows = a.size();
  const std::size_t cols = cols_of(a);
  IntMatrix m = a;
  SmithForm out{identity_matrix(rows), identity_matrix(cols), {}};
  IntMatrix& u = out.u;
  IntMatrix& v = out.v;
  const std::size_t steps = std::min(rows, cols);
  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (m[i][j] != 0 && (pr == rows || std::llabs(m[i][j]) < std::llabs(m[pr][pc]))) {
            pr = i;
            pc = j;
          }
        }
      }
      if (pr == rows) break;
      std::swap(m[pr], m[t]);
      std::swap(u[pr], u[t]);
      swap_cols(m, pc, t);
      swap_cols(v, pc, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        std::int64_t q = m[i][t] / m[t][t];
        add_row(m, i, t, -q);
        add_row(u, i, t, -q);
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        std::int64_t q = m[t][j] / m[t][t];
        add_col(m, j, t, -q);
        add_col(v, j, t, -q);
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility of the remaining block
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (m[i][j] % m[t][t] != 0) {
            bad = i;
            break;
          }
        }
      }
      if (bad == rows) break;
      add_row(m, t, bad, 1);
      add_row(u, t, bad, 1);
    }
    if (m[t][t] < 0) {
      for (auto& x : m[t]) x = -x;
      for (auto& x : u[t]) x = -x;
    }
  }
  out.diagonal.resize(steps);
  for (std::size_t t = 0; t < steps; ++t) out.diagonal[t] = m[t][t];
  return out;
}

IntMatrix column_completion(const std::vector<std::int64_t>& a) {
  const std::size_t n = a.size();
  if (n == 0) throw InvalidArgument("empty vector");
  IntMatrix row{a};
  IntMatrix u = identity_matrix(n);
  for (std::size_t j = 1; j < n; ++j) {
    while (row[0][j] != 0) {
      std::int64_t q = row[0][0] / row[0][j];
      add_col(row, 0, j, -q);
      add_col(u, 0, j, -q);
      swap_cols(row, 0, j);
      swap_cols(u, 0, j);
    }
  }
  if (row[0][0] == 0) throw InvalidArgument("zero vector has no completion");
  if (row[0][0] < 0) {
    for (auto& r : u) r[0] = -r[0];
  }
  return u;
}

}  // namespace iwasawa
