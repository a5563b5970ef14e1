#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "frolip/cones.hpp"
#include "frolip/frobenius.hpp"
#include "frolip/linalg.hpp"
#include "frolip/lp.hpp"

namespace frolip {

struct EntropySolution {
  std::vector<double> p;
  double value = 0;        // h(p) in nats
  std::vector<double> beta;  // dual vector in R^s
  std::vector<std::size_t> active_support;
  double residual = 0;     // l-infinity moment error
  double dual_value = 0;   // log Z(beta) - <beta, v>, restricted to the support
  bool stalled = false;    // Newton hit the iteration cap above tolerance
};

struct EntropyOptions {
  double tolerance = 1e-12;
  int max_iterations = 80;
};

namespace detail {

// LP rows for: sum_j p_j X_j = v, sum_j p_j = 1, p >= 0.
inline void simplex_moment_rows(const std::vector<ExponentVector>& xs, const std::vector<Rational>& v,
                                linalg::Matrix& a, linalg::Vector& b) {
  const std::size_t s = v.size(), m = xs.size();
  a.assign(s + 1, linalg::Vector(m, Rational(0)));
  b.assign(s + 1, Rational(0));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < s; ++i) a[i][j] = xs[j][i];
    a[s][j] = 1;
  }
  for (std::size_t i = 0; i < s; ++i) b[i] = v[i];
  b[s] = 1;
}

// Indices positive in some feasible p: the generators of the minimal face
// of the hull containing v.
inline std::vector<std::size_t> minimal_face(const std::vector<ExponentVector>& xs, const std::vector<Rational>& v) {
  linalg::Matrix a;
  linalg::Vector b;
  simplex_moment_rows(xs, v, a, b);
  const std::size_t m = xs.size();
  std::vector<bool> positive(m, false);
  auto first = lp::find_feasible(a, b, m);
  if (!first) throw DomainError("TargetOutsideHull", "target lies outside the convex hull of the vectors");
  for (std::size_t j = 0; j < m; ++j) positive[j] = (*first)[j] > 0;
  for (std::size_t j = 0; j < m; ++j) {
    if (positive[j]) continue;
    linalg::Vector c(m, Rational(0));
    c[j] = -1;
    const auto sol = lp::minimize(lp::Problem{a, b, c});
    if (sol.status != lp::Status::Optimal) continue;
    for (std::size_t k = 0; k < m; ++k)
      if (sol.x[k] > 0) positive[k] = true;
  }
  std::vector<std::size_t> face;
  for (std::size_t j = 0; j < m; ++j)
    if (positive[j]) face.push_back(j);
  return face;
}

inline double entropy(const std::vector<double>& p) {
  double h = 0;
  for (double q : p)
    if (q > 0) h -= q * std::log(q);
  return h;
}

}  // namespace detail

// Maximizes h(p) subject to sum p_j X_j = v, sum p_j = 1, p >= 0. The maximizer
// is supported on the minimal face containing v; on that face it is the
// exponential family p_j ~ exp<beta, X_j>, fitted by damped Newton on the dual.
inline EntropySolution max_entropy(const std::vector<ExponentVector>& xs, const std::vector<Rational>& v,
                                   EntropyOptions opts = {}) {
  const std::size_t s = common_dimension(xs);
  if (v.size() != s) throw DomainError("DimensionMismatch", "target and vectors differ in dimension");
  const std::size_t m = xs.size();
  EntropySolution out;
  out.active_support = detail::minimal_face(xs, v);
  const auto& face = out.active_support;
  out.p.assign(m, 0.0);
  out.beta.assign(s, 0.0);

  // Reduced coordinates y_j = B (X_j - X_0) with B spanning the face directions.
  const ExponentVector& base = xs[face.front()];
  linalg::Matrix diffs;
  for (std::size_t j : face) diffs.push_back((xs[j] - base).to_rational());
  linalg::Matrix basis;
  for (std::size_t r : linalg::independent_rows(diffs)) basis.push_back(diffs[r]);
  const std::size_t r = basis.size();

  auto reduce = [&](const linalg::Vector& d) {
    Eigen::VectorXd y(static_cast<Eigen::Index>(r));
    for (std::size_t k = 0; k < r; ++k) y[static_cast<Eigen::Index>(k)] = to_double(linalg::dot(basis[k], d));
    return y;
  };
  const std::size_t n = face.size();
  Eigen::MatrixXd y(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(r));
  for (std::size_t j = 0; j < n; ++j) y.row(static_cast<Eigen::Index>(j)) = reduce(diffs[j]).transpose();
  linalg::Vector shifted = v;
  for (std::size_t i = 0; i < s; ++i) shifted[i] -= base[i];
  const Eigen::VectorXd target = reduce(shifted);

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(r));
  Eigen::VectorXd w(static_cast<Eigen::Index>(n));
  auto weights = [&](const Eigen::VectorXd& b) {
    Eigen::VectorXd e = y * b;
    const double top = r ? e.maxCoeff() : 0.0;
    Eigen::VectorXd q = (e.array() - top).exp();
    const double z = q.sum();
    return std::pair<Eigen::VectorXd, double>{q / z, std::log(z) + top};
  };
  auto moment_error = [&](const Eigen::VectorXd& q) {
    return r ? (y.transpose() * q - target).cwiseAbs().maxCoeff() : 0.0;
  };

  auto [q, log_z] = weights(beta);
  double err = moment_error(q);
  int iter = 0;
  while (err > opts.tolerance && iter < opts.max_iterations) {
    ++iter;
    const Eigen::VectorXd mean = y.transpose() * q;
    const Eigen::MatrixXd centered = y.rowwise() - mean.transpose();
    const Eigen::MatrixXd hess = centered.transpose() * q.asDiagonal() * centered;
    const Eigen::VectorXd step = hess.ldlt().solve(mean - target);
    double t = 1.0;
    bool improved = false;
    for (int halve = 0; halve < 60; ++halve, t *= 0.5) {
      const Eigen::VectorXd trial = beta - t * step;
      auto [tq, tz] = weights(trial);
      const double terr = moment_error(tq);
      if (std::isfinite(terr) && terr < err) {
        beta = trial;
        q = tq;
        log_z = tz;
        err = terr;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  out.stalled = err > opts.tolerance;

  for (std::size_t j = 0; j < n; ++j) out.p[face[j]] = q[static_cast<Eigen::Index>(j)];
  out.value = detail::entropy(out.p);
  out.dual_value = log_z - (r ? beta.dot(target) : 0.0);
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t i = 0; i < s; ++i) out.beta[i] += beta[static_cast<Eigen::Index>(k)] * to_double(basis[k][i]);
  for (std::size_t i = 0; i < s; ++i) {
    double mom = 0;
    for (std::size_t j = 0; j < m; ++j) mom += out.p[j] * static_cast<double>(xs[j][i]);
    out.residual = std::max(out.residual, std::abs(mom - to_double(v[i])));
  }
  return out;
}

// Floating target: snapped to a dyadic rational, then projected exactly onto
// the affine hull of the vectors. A projection moving it by more than 1e-9
// means the target is off the hull.
inline EntropySolution max_entropy(const std::vector<ExponentVector>& xs, const std::vector<double>& v,
                                   EntropyOptions opts = {}) {
  const std::size_t s = common_dimension(xs);
  if (v.size() != s) throw DomainError("DimensionMismatch", "target and vectors differ in dimension");
  const auto snapped = snap_rational(v);
  linalg::Matrix diffs;
  for (const auto& x : xs) diffs.push_back((x - xs.front()).to_rational());
  linalg::Matrix basis;
  for (std::size_t r : linalg::independent_rows(diffs)) basis.push_back(diffs[r]);
  linalg::Vector d(s);
  for (std::size_t i = 0; i < s; ++i) d[i] = snapped[i] - xs.front()[i];
  linalg::Vector proj = xs.front().to_rational();
  if (!basis.empty()) {
    // coefficients c with (B B^T) c = B d; projection = B^T c
    const std::size_t r = basis.size();
    linalg::Matrix gram(r, linalg::Vector(r));
    linalg::Vector rhs(r);
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t b = 0; b < r; ++b) gram[a][b] = linalg::dot(basis[a], basis[b]);
      rhs[a] = linalg::dot(basis[a], d);
    }
    const auto c = linalg::solve_square(gram, rhs);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t i = 0; i < s; ++i) proj[i] += (*c)[a] * basis[a][i];
  }
  for (std::size_t i = 0; i < s; ++i)
    if (std::abs(to_double(proj[i] - snapped[i])) > 1e-9)
      throw DomainError("TargetOutsideHull", "target lies off the affine hull of the vectors");
  return max_entropy(xs, proj, opts);
}

// <x, eta> * sup h(p) over p with sum p_j X_j = x / <x, eta>; positively
// homogeneous of degree one in x.
inline double analytic_gamma_unnormalized(const std::vector<ExponentVector>& xs, const CoplanarFunctional& eta,
                                          const std::vector<double>& x) {
  if (!eta.present()) throw DomainError("NotCoplanar", "vectors do not lie on a common affine hyperplane");
  const std::size_t s = common_dimension(xs);
  if (x.size() != s) throw DomainError("DimensionMismatch", "direction and vectors differ in dimension");
  double scale = 0;
  for (std::size_t i = 0; i < s; ++i) scale += x[i] * to_double((*eta.eta)[i]);
  if (!(scale > 0)) throw DomainError("DirectionOutsideCone", "direction has non-positive pairing with eta");
  if (!cone_member(snap_rational(x), Cone(xs)))
    throw DomainError("DirectionOutsideCone", "direction lies outside the cone");
  std::vector<double> target;
  for (double c : x) target.push_back(c / scale);
  return scale * max_entropy(xs, target).value;
}

inline double analytic_gamma(const DefiningData& data, const CoplanarFunctional& eta,
                             const std::vector<double>& theta) {
  return analytic_gamma_unnormalized(data.vectors(), eta, detail::unit(theta));
}

inline double analytic_gamma(const DefiningData& data, const std::vector<double>& theta) {
  return analytic_gamma(data, coplanar_functional(data.vectors()), theta);
}

// n unit directions inside the cone. In the plane they are evenly spaced
// strictly between the two extreme rays; in space they are the first n points
// of a Fibonacci sphere lattice that fall inside the cone.
inline std::vector<std::vector<double>> direction_sweep(const DefiningData& data, int n) {
  if (n < 1) throw DomainError("InvalidCount", "direction count must be positive");
  const std::size_t s = data.dimension();
  const Cone cone = data.cone();
  std::vector<std::vector<double>> out;
  if (s == 1) {
    out.push_back({data.vectors().front()[0] > 0 ? 1.0 : -1.0});
    return out;
  }
  if (s == 2) {
    const double ax = to_double(data.alpha()[0]), ay = to_double(data.alpha()[1]);
    const double base = std::atan2(ay, ax);
    double lo = 10, hi = -10;
    for (const auto& x : data.vectors()) {
      const double px = static_cast<double>(x[0]), py = static_cast<double>(x[1]);
      const double phi = std::atan2(ax * py - ay * px, ax * px + ay * py);
      lo = std::min(lo, phi);
      hi = std::max(hi, phi);
    }
    if (hi - lo < 1e-15) return {{std::cos(base + lo), std::sin(base + lo)}};
    for (int i = 1; i <= n; ++i) {
      const double phi = base + lo + i * (hi - lo) / (n + 1);
      out.push_back({std::cos(phi), std::sin(phi)});
    }
    return out;
  }
  if (s != 3) throw DomainError("UnsupportedDimension", "direction sweeps cover dimensions 1 to 3");
  const double golden = M_PI * (3 - std::sqrt(5.0));
  for (long m = n; m <= 200000 && static_cast<int>(out.size()) < n; m *= 2) {
    out.clear();
    for (long i = 0; i < m && static_cast<int>(out.size()) < n; ++i) {
      const double z = 1 - (2.0 * static_cast<double>(i) + 1) / static_cast<double>(m);
      const double r = std::sqrt(1 - z * z);
      const std::vector<double> x{r * std::cos(golden * static_cast<double>(i)), r * std::sin(golden * static_cast<double>(i)), z};
      if (cone_member(snap_rational(x), cone)) out.push_back(x);
    }
  }
  return out;
}

}  // namespace frolip
