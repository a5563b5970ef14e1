#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "frolip/numeric.hpp"

// Small dense exact linear algebra over the rationals.
namespace frolip::linalg {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;  // row-major

inline std::size_t cols(const Matrix& m) { return m.empty() ? 0 : m.front().size(); }

inline Rational dot(const Vector& a, const Vector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Matrix transpose(const Matrix& m) {
  Matrix t(cols(m), Vector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  Matrix out(a.size(), Vector(cols(b), Rational(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols(b); ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

inline Vector multiply(const Matrix& a, const Vector& x) {
  Vector out(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = dot(a[i], x);
  return out;
}

// Indices of a maximal linearly independent subset of rows, chosen greedily in order.
inline std::vector<std::size_t> independent_rows(const Matrix& m) {
  std::vector<std::size_t> picked;
  Matrix reduced;  // echelon rows of picked vectors
  std::vector<std::size_t> pivots;
  for (std::size_t r = 0; r < m.size(); ++r) {
    Vector row = m[r];
    for (std::size_t k = 0; k < reduced.size(); ++k) {
      const Rational f = row[pivots[k]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < row.size(); ++j) row[j] -= f * reduced[k][j];
    }
    std::size_t piv = row.size();
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) {
        piv = j;
        break;
      }
    if (piv == row.size()) continue;
    const Rational inv = 1 / row[piv];
    for (auto& v : row) v *= inv;
    // keep earlier echelon rows reduced in the new pivot column
    for (std::size_t k = 0; k < reduced.size(); ++k) {
      const Rational f = reduced[k][piv];
      if (f == 0) continue;
      for (std::size_t j = 0; j < row.size(); ++j) reduced[k][j] -= f * row[j];
    }
    reduced.push_back(std::move(row));
    pivots.push_back(piv);
    picked.push_back(r);
  }
  return picked;
}

inline std::size_t rank(const Matrix& m) { return independent_rows(m).size(); }

// Unique solution of a square nonsingular system, or nullopt if singular.
inline std::optional<Vector> solve_square(Matrix a, Vector b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    const Rational inv = 1 / a[c][c];
    for (std::size_t j = c; j < n; ++j) a[c][j] *= inv;
    b[c] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
      b[r] -= f * b[c];
    }
  }
  return b;
}

// Minimum-norm solution of A x = b when consistent, nullopt otherwise.
// The minimizer lies in the row space of A, so x = B^T y over independent rows B.
inline std::optional<Vector> solve_min_norm(const Matrix& a, const Vector& b) {
  const std::size_t n = cols(a);
  const auto rows = independent_rows(a);
  if (rows.empty()) {
    for (const auto& v : b)
      if (v != 0) return std::nullopt;
    return Vector(n, Rational(0));
  }
  Matrix basis;
  Vector rhs;
  for (auto r : rows) {
    basis.push_back(a[r]);
    rhs.push_back(b[r]);
  }
  // B B^T y = b_B on the independent rows, then check the dependent ones.
  const Matrix gram = multiply(basis, transpose(basis));
  auto y = solve_square(gram, rhs);
  if (!y) return std::nullopt;
  Vector x(n, Rational(0));
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (std::size_t j = 0; j < n; ++j) x[j] += (*y)[k] * basis[k][j];
  for (std::size_t i = 0; i < a.size(); ++i)
    if (dot(a[i], x) != b[i]) return std::nullopt;
  return x;
}

}  // namespace frolip::linalg
