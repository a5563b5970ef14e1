#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "frolip/exponent_lattice.hpp"
#include "frolip/linalg.hpp"
#include "frolip/lp.hpp"

namespace frolip {

// Conical hull R+ G_1 + ... + R+ G_m of integer generators (a multiset).
class Cone {
 public:
  explicit Cone(std::vector<ExponentVector> generators) : generators_(std::move(generators)) {
    common_dimension(generators_);
    bool nonzero = false;
    for (const auto& g : generators_) nonzero = nonzero || !g.is_zero();
    if (!nonzero) throw DomainError("ZeroCone", "all cone generators are zero");
  }

  std::size_t dimension() const { return generators_.front().size(); }
  const std::vector<ExponentVector>& generators() const noexcept { return generators_; }

 private:
  std::vector<ExponentVector> generators_;
};

// Strictly separating functional: X_j . alpha > 0 for every generator.
struct HalfSpaceCertificate {
  std::vector<Rational> alpha;
};

// eta with <eta, X_j> = 1 for every vector, when the vectors are coplanar.
struct CoplanarFunctional {
  std::optional<std::vector<Rational>> eta;
  bool present() const { return eta.has_value(); }
};

namespace detail {

inline void require_dimension(std::size_t got, std::size_t want) {
  if (got != want) throw DomainError("DimensionMismatch", "point and cone differ in dimension");
}

}  // namespace detail

// x is a nonnegative rational combination of the generators (exact LP feasibility).
inline bool cone_member(const std::vector<Rational>& x, const Cone& c) {
  detail::require_dimension(x.size(), c.dimension());
  const std::size_t m = c.generators().size();
  linalg::Matrix a(c.dimension(), linalg::Vector(m));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < c.dimension(); ++i) a[i][j] = c.generators()[j][i];
  return lp::find_feasible(a, x, m).has_value();
}

inline bool cone_member(const ExponentVector& x, const Cone& c) {
  return cone_member(x.to_rational(), c);
}

inline bool cone_equal(const Cone& a, const Cone& b) {
  if (a.dimension() != b.dimension()) throw DomainError("DimensionMismatch", "cones differ in dimension");
  for (const auto& g : a.generators())
    if (!cone_member(g, b)) return false;
  for (const auto& g : b.generators())
    if (!cone_member(g, a)) return false;
  return true;
}

// Equality of the positive rational spans of the logs. Generators are integral,
// so rational and real feasibility agree and this is cone equality.
inline bool v_plus_equal(const Cone& a, const Cone& b) { return cone_equal(a, b); }

// Maximizes the minimum slack t of X_j . alpha >= t over ||alpha||_1 <= 1, then
// rescales alpha to the primitive integer vector on its ray.
inline HalfSpaceCertificate half_space_certificate(const Cone& c) {
  const std::size_t s = c.dimension();
  const std::size_t m = c.generators().size();
  // columns: alpha+ (s), alpha- (s), t, w_j (m), u
  const std::size_t n = 2 * s + 1 + m + 1;
  const std::size_t t_col = 2 * s;
  linalg::Matrix a;
  linalg::Vector b;
  for (std::size_t j = 0; j < m; ++j) {
    linalg::Vector row(n, Rational(0));
    for (std::size_t i = 0; i < s; ++i) {
      row[i] = c.generators()[j][i];
      row[s + i] = -c.generators()[j][i];
    }
    row[t_col] = -1;
    row[t_col + 1 + j] = -1;
    a.push_back(std::move(row));
    b.emplace_back(0);
  }
  linalg::Vector norm(n, Rational(0));
  for (std::size_t i = 0; i < 2 * s; ++i) norm[i] = 1;
  norm[n - 1] = 1;
  a.push_back(std::move(norm));
  b.emplace_back(1);
  linalg::Vector cost(n, Rational(0));
  cost[t_col] = -1;

  const auto sol = lp::minimize(lp::Problem{a, b, cost});
  if (sol.status != lp::Status::Optimal || sol.x[t_col] <= 0)
    throw DomainError("NoHalfSpace", "generators are not contained in an open half-space");

  std::vector<Rational> alpha(s);
  for (std::size_t i = 0; i < s; ++i) alpha[i] = sol.x[i] - sol.x[s + i];
  BigInt lcm = 1;
  for (const auto& v : alpha) lcm = boost::multiprecision::lcm(lcm, denominator_of(v));
  BigInt g = 0;
  for (const auto& v : alpha) g = boost::multiprecision::gcd(g, numerator_of(v * Rational(lcm)));
  for (auto& v : alpha) v = v * Rational(lcm) / Rational(g);
  return HalfSpaceCertificate{std::move(alpha)};
}

// Solves <eta, X_j> = 1 exactly; eta is the minimum-norm solution when one exists.
inline CoplanarFunctional coplanar_functional(const std::vector<ExponentVector>& vectors) {
  common_dimension(vectors);
  const auto a = to_rational_matrix(vectors);
  return CoplanarFunctional{linalg::solve_min_norm(a, linalg::Vector(vectors.size(), Rational(1)))};
}

}  // namespace frolip
