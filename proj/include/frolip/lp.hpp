#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "frolip/linalg.hpp"
#include "frolip/numeric.hpp"

// Exact two-phase simplex over the rationals (dense tableau, Bland's rule).
// Problems here have a handful of rows, so no attempt is made at sparsity.
namespace frolip::lp {

using linalg::Matrix;
using linalg::Vector;

enum class Status { Optimal, Infeasible, Unbounded };

// minimize c.x  subject to  A x = b,  x >= 0
struct Problem {
  Matrix a;
  Vector b;
  Vector c;
};

struct Solution {
  Status status = Status::Infeasible;
  Vector x;
  Rational objective = 0;
};

namespace detail {

class Tableau {
 public:
  Tableau(const Matrix& a, const Vector& b, std::size_t n) : n_(n) {
    const std::size_t m = a.size();
    width_ = n + m;  // structural + artificial columns
    for (std::size_t i = 0; i < m; ++i) {
      Vector row(width_ + 1, Rational(0));
      const bool flip = b[i] < 0;
      for (std::size_t j = 0; j < n; ++j) row[j] = flip ? Rational(-a[i][j]) : a[i][j];
      row[n + i] = 1;
      row[width_] = flip ? Rational(-b[i]) : b[i];
      rows_.push_back(std::move(row));
      basis_.push_back(n + i);
    }
    allowed_.assign(width_, true);
  }

  void set_objective(const Vector& c) {
    cost_.assign(width_ + 1, Rational(0));
    for (std::size_t j = 0; j < c.size(); ++j) cost_[j] = c[j];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational cb = basis_[i] < c.size() ? c[basis_[i]] : Rational(0);
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= width_; ++j) cost_[j] -= cb * rows_[i][j];
    }
  }

  Status run() {
    for (;;) {
      std::size_t enter = width_;
      for (std::size_t j = 0; j < width_; ++j)
        if (allowed_[j] && cost_[j] < 0) {
          enter = j;
          break;
        }
      if (enter == width_) return Status::Optimal;
      std::size_t leave = rows_.size();
      Rational best;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i][enter] <= 0) continue;
        const Rational ratio = rows_[i][width_] / rows_[i][enter];
        if (leave == rows_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows_.size()) return Status::Unbounded;
      pivot(leave, enter);
    }
  }

  Rational objective() const { return -cost_[width_]; }

  // Pivots zero-valued artificials out of the basis; drops redundant rows.
  void purge_artificials() {
    for (std::size_t i = 0; i < rows_.size();) {
      if (basis_[i] < n_) {
        ++i;
        continue;
      }
      std::size_t col = n_;
      for (std::size_t j = 0; j < n_; ++j)
        if (rows_[i][j] != 0) {
          col = j;
          break;
        }
      if (col == n_) {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
        continue;
      }
      pivot(i, col);
      ++i;
    }
    for (std::size_t j = n_; j < width_; ++j) allowed_[j] = false;
  }

  Vector primal() const {
    Vector x(n_, Rational(0));
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (basis_[i] < n_) x[basis_[i]] = rows_[i][width_];
    return x;
  }

 private:
  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / rows_[r][c];
    for (auto& v : rows_[r]) v *= inv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r || rows_[i][c] == 0) continue;
      const Rational f = rows_[i][c];
      for (std::size_t j = 0; j <= width_; ++j)
        if (rows_[r][j] != 0) rows_[i][j] -= f * rows_[r][j];
    }
    if (!cost_.empty() && cost_[c] != 0) {
      const Rational f = cost_[c];
      for (std::size_t j = 0; j <= width_; ++j)
        if (rows_[r][j] != 0) cost_[j] -= f * rows_[r][j];
    }
    basis_[r] = c;
  }

  std::size_t n_;
  std::size_t width_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> basis_;
  std::vector<bool> allowed_;
  Vector cost_;
};

}  // namespace detail

inline Solution minimize(const Problem& p) {
  const std::size_t n = p.c.size();
  for (const auto& row : p.a)
    if (row.size() != n) throw DomainError("DimensionMismatch", "LP row width differs from cost length");
  if (p.a.size() != p.b.size()) throw DomainError("DimensionMismatch", "LP right-hand side length");

  detail::Tableau t(p.a, p.b, n);
  Vector phase1(n + p.a.size(), Rational(0));
  for (std::size_t i = n; i < phase1.size(); ++i) phase1[i] = 1;
  t.set_objective(phase1);
  t.run();
  Solution out;
  if (t.objective() != 0) {
    out.status = Status::Infeasible;
    return out;
  }
  t.purge_artificials();
  t.set_objective(p.c);
  out.status = t.run();
  if (out.status == Status::Optimal) {
    out.x = t.primal();
    out.objective = t.objective();
  }
  return out;
}

// Some x >= 0 with A x = b, if one exists.
inline std::optional<Vector> find_feasible(const Matrix& a, const Vector& b, std::size_t n) {
  Problem p{a, b, Vector(n, Rational(0))};
  auto s = minimize(p);
  if (s.status != Status::Optimal) return std::nullopt;
  return s.x;
}

}  // namespace frolip::lp
