#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "frolip/cones.hpp"
#include "frolip/exponent_lattice.hpp"

namespace frolip {

// Exponent vectors X_1..X_m in an open half-space together with the separating
// functional. Rank-deficient input is rewritten in coordinates of its own
// lattice so that the vectors span the space.
class DefiningData {
 public:
  static DefiningData from_vectors(std::vector<ExponentVector> vectors) {
    const std::size_t s = common_dimension(vectors);
    DefiningData d;
    if (integer_rank(vectors) < s) {
      const IntegerMatrix h = hermite_normal_form(vectors);
      if (h.empty()) throw DomainError("ZeroRank", "all exponent vectors are zero");
      for (auto& v : vectors) v = hnf_coordinates(h, v);
      d.embedding_ = h;
    }
    d.alpha_ = half_space_certificate(Cone(vectors));
    d.vectors_ = std::move(vectors);
    for (const auto& a : d.alpha_.alpha) d.alpha_int_.push_back(to_int64(numerator_of(a)));
    return d;
  }

  const std::vector<ExponentVector>& vectors() const noexcept { return vectors_; }
  const HalfSpaceCertificate& certificate() const noexcept { return alpha_; }
  const std::vector<Rational>& alpha() const noexcept { return alpha_.alpha; }
  std::size_t dimension() const { return vectors_.front().size(); }
  std::size_t size() const { return vectors_.size(); }
  // Rows of the lattice basis the input was rewritten in; empty if untouched.
  const IntegerMatrix& embedding() const noexcept { return embedding_; }
  Cone cone() const { return Cone(vectors_); }

  // z . alpha; alpha is the primitive integer certificate, so levels are integers.
  std::int64_t level(const ExponentVector& z) const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      std::int64_t t;
      if (__builtin_mul_overflow(z[i], alpha_int_[i], &t) || __builtin_add_overflow(s, t, &s))
        throw ResourceLimit("level overflow");
    }
    return s;
  }
  Rational level(const std::vector<Rational>& x) const {
    if (x.size() != dimension()) throw DomainError("DimensionMismatch", "point and data differ in dimension");
    return linalg::dot(x, alpha_.alpha);
  }
  std::int64_t min_level() const {
    std::int64_t m = INT64_MAX;
    for (const auto& v : vectors_) m = std::min(m, level(v));
    return m;
  }
  std::int64_t max_level() const {
    std::int64_t m = 0;
    for (const auto& v : vectors_) m = std::max(m, level(v));
    return m;
  }
  double alpha_norm() const {
    double s = 0;
    for (auto a : alpha_int_) s += static_cast<double>(a) * static_cast<double>(a);
    return std::sqrt(s);
  }
  std::int64_t alpha_norm_squared() const {
    std::int64_t s = 0;
    for (auto a : alpha_int_) s += a * a;
    return s;
  }

 private:
  std::vector<ExponentVector> vectors_;
  HalfSpaceCertificate alpha_;
  std::vector<std::int64_t> alpha_int_;
  IntegerMatrix embedding_;
};

struct TableOptions {
  std::size_t point_budget = 2'000'000;
};

// Exact multiplicities m(z) for every z in the semigroup with z . alpha <= K.
// Every predecessor of a stored point has a strictly smaller level, so all
// stored counts are final. Immutable after construction.
class MultiplicityTable {
 public:
  MultiplicityTable(DefiningData data, std::int64_t bound, TableOptions opts = {})
      : data_(std::move(data)), bound_(bound) {
    if (bound <= 0) throw DomainError("InvalidBound", "table bound must be positive");
    build(opts);
  }

  const DefiningData& data() const noexcept { return data_; }
  std::int64_t bound() const noexcept { return bound_; }
  std::size_t size() const noexcept { return points_.size(); }

  // Points in DP order: increasing level, then lexicographic.
  const std::vector<ExponentVector>& points() const noexcept { return points_; }
  const std::vector<BigInt>& counts() const noexcept { return counts_; }

  bool covers(const ExponentVector& z) const { return data_.level(z) <= bound_; }

  // m(z) for a lattice point; 0 outside the semigroup.
  BigInt count(const ExponentVector& z) const {
    if (z.size() != data_.dimension()) throw DomainError("DimensionMismatch", "point and table differ in dimension");
    if (!covers(z)) throw DomainError("QueryOutOfRange", "lattice point lies beyond the table bound");
    const auto it = index_.find(z);
    return it == index_.end() ? BigInt(0) : counts_[it->second];
  }

  const BigInt* find(const ExponentVector& z) const {
    const auto it = index_.find(z);
    return it == index_.end() ? nullptr : &counts_[it->second];
  }

 private:
  void build(const TableOptions& opts) {
    const auto& xs = data_.vectors();
    const ExponentVector origin(data_.dimension());
    std::vector<std::pair<std::int64_t, ExponentVector>> found{{0, origin}};
    std::unordered_set<ExponentVector, ExponentVectorHash> seen{origin};
    for (std::size_t head = 0; head < found.size(); ++head) {
      for (const auto& x : xs) {
        const std::int64_t lvl = found[head].first + data_.level(x);
        if (lvl > bound_) continue;
        ExponentVector next = found[head].second + x;
        if (!seen.insert(next).second) continue;
        if (found.size() >= opts.point_budget)
          throw ResourceLimit("multiplicity table exceeds the point budget of " +
                              std::to_string(opts.point_budget));
        found.emplace_back(lvl, std::move(next));
      }
    }
    seen.clear();
    std::sort(found.begin(), found.end());

    points_.reserve(found.size());
    counts_.reserve(found.size());
    index_.reserve(found.size());
    for (auto& [lvl, z] : found) {
      BigInt m = z.is_zero() ? BigInt(1) : BigInt(0);
      for (const auto& x : xs)
        if (const BigInt* prev = find(z - x)) m += *prev;
      index_.emplace(z, points_.size());
      points_.push_back(std::move(z));
      counts_.push_back(std::move(m));
    }
  }

  DefiningData data_;
  std::int64_t bound_;
  std::vector<ExponentVector> points_;
  std::vector<BigInt> counts_;
  std::unordered_map<ExponentVector, std::size_t, ExponentVectorHash> index_;
};

inline MultiplicityTable build_multiplicity(const DefiningData& data, std::int64_t bound, TableOptions opts = {}) {
  return MultiplicityTable(data, bound, opts);
}

// Largest radius searched for a nearest semigroup point.
inline constexpr std::int64_t kNearestRadiusCap = 8;

struct NearestPoints {
  BigInt multiplicity;            // minimum m over the nearest points
  Rational squared_distance;      // d(x, J)^2
  std::vector<ExponentVector> ties;
};

namespace detail {

inline void require_in_cone(const MultiplicityTable& t, const std::vector<Rational>& x) {
  if (x.size() != t.data().dimension()) throw DomainError("DimensionMismatch", "point and table differ in dimension");
  if (!cone_member(x, t.data().cone())) throw DomainError("OutsideCone", "query point lies outside the cone");
}

}  // namespace detail

// All semigroup points at minimal Euclidean distance from x, by exact integer
// arithmetic on squared distances scaled by the common denominator of x.
inline NearestPoints nearest_semigroup_points(const MultiplicityTable& t, const std::vector<Rational>& x) {
  detail::require_in_cone(t, x);
  const std::size_t s = x.size();
  const Rational lvl = t.data().level(x);
  if (lvl > t.bound()) throw DomainError("QueryOutOfRange", "query point lies beyond the table bound");

  BigInt den = 1;
  for (const auto& c : x) den = boost::multiprecision::lcm(den, denominator_of(c));
  std::vector<BigInt> num;
  for (const auto& c : x) num.push_back(numerator_of(c * Rational(den)));

  for (std::int64_t radius = 1; radius <= kNearestRadiusCap; radius *= 2) {
    const BigInt limit = BigInt(radius) * radius * den * den;
    std::vector<std::int64_t> lo(s), hi(s);
    std::vector<std::vector<BigInt>> sq(s);  // per-coordinate squared offsets
    for (std::size_t i = 0; i < s; ++i) {
      lo[i] = to_int64(ceil_of(x[i] - radius));
      hi[i] = to_int64(floor_of(x[i] + radius));
      for (std::int64_t z = lo[i]; z <= hi[i]; ++z) {
        const BigInt d = BigInt(z) * den - num[i];
        sq[i].push_back(d * d);
      }
    }
    std::optional<BigInt> best;
    NearestPoints out;
    ExponentVector z(s);
    for (std::size_t i = 0; i < s; ++i) z[i] = lo[i];
    for (;;) {
      BigInt d2 = 0;
      for (std::size_t i = 0; i < s; ++i) d2 += sq[i][static_cast<std::size_t>(z[i] - lo[i])];
      if (d2 <= limit && (!best || d2 <= *best)) {
        if (const BigInt* m = t.find(z)) {
          if (!best || d2 < *best) {
            best = d2;
            out.ties.clear();
            out.multiplicity = *m;
          } else if (*m < out.multiplicity) {
            out.multiplicity = *m;
          }
          out.ties.push_back(z);
        }
      }
      std::size_t i = 0;
      while (i < s && z[i] == hi[i]) z[i] = lo[i], ++i;
      if (i == s) break;
      ++z[i];
    }
    if (!best) continue;
    out.squared_distance = Rational(*best, den * den);
    // Every lattice point within the nearest distance must lie inside the table.
    const Rational slack = Rational(t.bound()) - lvl;
    if (slack * slack < out.squared_distance * Rational(t.data().alpha_norm_squared()))
      throw DomainError("QueryOutOfRange", "nearest-point search reaches beyond the table bound");
    std::sort(out.ties.begin(), out.ties.end());
    return out;
  }
  throw DomainError("QueryOutOfRange", "no semigroup point within the search radius");
}

// m(x): exact count at semigroup points, nearest-point minimum elsewhere.
inline BigInt multiplicity_at(const MultiplicityTable& t, const std::vector<Rational>& x) {
  return nearest_semigroup_points(t, x).multiplicity;
}

inline BigInt multiplicity_at(const MultiplicityTable& t, const std::vector<double>& x) {
  return multiplicity_at(t, snap_rational(x));
}

inline BigInt multiplicity_at(const MultiplicityTable& t, const ExponentVector& z) {
  return multiplicity_at(t, z.to_rational());
}

struct GrowthSample {
  double k;
  double log_m;
};

struct GrowthEstimate {
  std::vector<double> theta;
  double gamma_hat = 0;
  std::vector<GrowthSample> samples;
  double std_error = 0;
  double intercept = 0;
};

struct GammaOptions {
  double k_max = 120;
  int k_count = 12;
};

namespace detail {

inline std::vector<double> unit(std::vector<double> theta) {
  double n = 0;
  for (double v : theta) n += v * v;
  n = std::sqrt(n);
  if (!(n > 0) || !std::isfinite(n)) throw DomainError("ZeroDirection", "direction must be a nonzero finite vector");
  for (double& v : theta) v /= n;
  return theta;
}

inline std::vector<double> sample_ks(const GammaOptions& o) {
  if (o.k_count < 2) throw DomainError("InvalidSamples", "k_count must be at least 2");
  if (!(o.k_max > 0)) throw DomainError("InvalidSamples", "k_max must be positive");
  std::vector<double> ks;
  for (int i = 0; i < o.k_count; ++i)
    ks.push_back(o.k_max * std::pow(4.0, -static_cast<double>(o.k_count - 1 - i) / (o.k_count - 1)));
  return ks;
}

inline void require_direction_in_cone(const DefiningData& data, const std::vector<double>& theta) {
  if (theta.size() != data.dimension()) throw DomainError("DimensionMismatch", "direction and data differ in dimension");
  if (!cone_member(snap_rational(theta), data.cone()))
    throw DomainError("DirectionOutsideCone", "direction lies outside the cone");
}

}  // namespace detail

// Table bound sufficient for estimating every direction in thetas up to k_max.
inline std::int64_t gamma_table_bound(const DefiningData& data, const std::vector<std::vector<double>>& thetas,
                                      double k_max) {
  double top = 0;
  for (const auto& th : thetas) {
    const auto u = detail::unit(th);
    double l = 0;
    for (std::size_t i = 0; i < u.size(); ++i) l += u[i] * to_double(data.alpha()[i]);
    top = std::max(top, k_max * l);
  }
  return static_cast<std::int64_t>(std::ceil(top + kNearestRadiusCap * data.alpha_norm())) + 1;
}

// OLS slope of log m(k theta) against k over geometrically spaced k.
inline GrowthEstimate estimate_gamma(const MultiplicityTable& t, const std::vector<double>& theta,
                                     GammaOptions opts = {}) {
  GrowthEstimate g;
  g.theta = detail::unit(theta);
  detail::require_direction_in_cone(t.data(), g.theta);
  for (double k : detail::sample_ks(opts)) {
    std::vector<double> x;
    for (double c : g.theta) x.push_back(k * c);
    g.samples.push_back({k, log_bigint(multiplicity_at(t, x))});
  }
  const double n = static_cast<double>(g.samples.size());
  double mk = 0, ml = 0;
  for (const auto& s : g.samples) mk += s.k / n, ml += s.log_m / n;
  double sxx = 0, sxy = 0;
  for (const auto& s : g.samples) sxx += (s.k - mk) * (s.k - mk), sxy += (s.k - mk) * (s.log_m - ml);
  const double slope = sxy / sxx;
  g.intercept = ml - slope * mk;
  double ssr = 0;
  for (const auto& s : g.samples) {
    const double r = s.log_m - (g.intercept + slope * s.k);
    ssr += r * r;
  }
  g.std_error = n > 2 ? std::sqrt(ssr / (n - 2) / sxx) : 0.0;
  g.gamma_hat = std::max(0.0, slope);
  return g;
}

inline GrowthEstimate estimate_gamma(const DefiningData& data, const std::vector<double>& theta,
                                     GammaOptions opts = {}, TableOptions table_opts = {}) {
  detail::require_direction_in_cone(data, detail::unit(theta));
  const MultiplicityTable t(data, gamma_table_bound(data, {theta}, opts.k_max), table_opts);
  return estimate_gamma(t, theta, opts);
}

// Classical Frobenius number by a sieve up to min(a) * max(a).
inline std::int64_t frobenius_number_1d(const std::vector<std::int64_t>& a) {
  if (a.empty()) throw DomainError("EmptyInput", "no generators given");
  std::int64_t g = 0;
  for (auto v : a) {
    if (v < 1) throw DomainError("InvalidInput", "generators must be positive integers");
    g = std::gcd(g, v);
  }
  if (std::find(a.begin(), a.end(), 1) != a.end()) return -1;
  if (g != 1) throw DomainError("GcdNotOne", "generators are not coprime");
  const std::int64_t lo = *std::min_element(a.begin(), a.end());
  const std::int64_t hi = *std::max_element(a.begin(), a.end());
  if (hi > 100'000'000 / lo) throw ResourceLimit("sieve bound min(a)*max(a) is too large");
  const std::int64_t limit = lo * hi;
  std::vector<bool> reach(static_cast<std::size_t>(limit) + 1, false);
  reach[0] = true;
  std::int64_t last_gap = -1;
  for (std::int64_t n = 1; n <= limit; ++n) {
    for (auto v : a)
      if (v <= n && reach[static_cast<std::size_t>(n - v)]) {
        reach[static_cast<std::size_t>(n)] = true;
        break;
      }
    if (!reach[static_cast<std::size_t>(n)]) last_gap = n;
  }
  return last_gap;
}

// Largest distance to the semigroup over a pitch-0.5 grid of cone points with
// level in [K/2, 3K/4]. Diagnostic estimate of the relative-denseness radius.
inline double relative_density_radius(const MultiplicityTable& t) {
  const auto& data = t.data();
  const std::size_t s = data.dimension();
  const Rational lo_level = Rational(t.bound(), 2), hi_level = Rational(3 * t.bound(), 4);
  // cone slice {x . alpha <= c} = conv(0, c X_j / (X_j . alpha))
  std::vector<Rational> lo(s, Rational(0)), hi(s, Rational(0));
  for (const auto& v : data.vectors()) {
    const Rational scale = hi_level / Rational(data.level(v));
    for (std::size_t i = 0; i < s; ++i) {
      lo[i] = std::min(lo[i], Rational(scale * v[i]));
      hi[i] = std::max(hi[i], Rational(scale * v[i]));
    }
  }
  std::vector<std::int64_t> glo(s), ghi(s);
  double cells = 1;
  for (std::size_t i = 0; i < s; ++i) {
    glo[i] = to_int64(ceil_of(lo[i] * 2));
    ghi[i] = to_int64(floor_of(hi[i] * 2));
    cells *= static_cast<double>(ghi[i] - glo[i] + 1);
  }
  if (cells > 2e6) throw ResourceLimit("density probe grid is too large");
  const Cone cone = data.cone();
  Rational worst = -1;
  std::vector<std::int64_t> g = glo;
  for (;;) {
    std::vector<Rational> x;
    for (auto c : g) x.emplace_back(c, 2);
    const Rational l = data.level(x);
    if (l >= lo_level && l <= hi_level && cone_member(x, cone))
      worst = std::max(worst, nearest_semigroup_points(t, x).squared_distance);
    std::size_t i = 0;
    while (i < s && g[i] == ghi[i]) g[i] = glo[i], ++i;
    if (i == s) break;
    ++g[i];
  }
  if (worst < 0) throw DomainError("EmptyProbe", "no grid point falls in the probe band");
  return std::sqrt(to_double(worst));
}

inline double relative_density_radius(const DefiningData& data, std::int64_t bound, TableOptions opts = {}) {
  return relative_density_radius(MultiplicityTable(data, bound, opts));
}

// max |log(m(z)/m(z'))| / log(1 + |z|) over stored z, z' with |z - z'| <= radius
// and z . alpha >= min_level. Empirical exponent of the polynomial ratio bound;
// raising min_level discards the small-|z| pairs that only affect the constant.
inline double ratio_exponent(const MultiplicityTable& t, std::int64_t radius = 3, std::int64_t min_level = 1) {
  const std::size_t s = t.data().dimension();
  std::vector<ExponentVector> offsets;
  ExponentVector d(s);
  for (std::size_t i = 0; i < s; ++i) d[i] = -radius;
  for (;;) {
    if (!d.is_zero() && d.squared_norm() <= radius * radius) offsets.push_back(d);
    std::size_t i = 0;
    while (i < s && d[i] == radius) d[i] = -radius, ++i;
    if (i == s) break;
    ++d[i];
  }
  double worst = 0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const auto& z = t.points()[k];
    if (z.is_zero() || t.data().level(z) < min_level) continue;
    const double lz = log_bigint(t.counts()[k]);
    const double denom = std::log1p(std::sqrt(to_double(Rational(z.squared_norm()))));
    for (const auto& o : offsets)
      if (const BigInt* m = t.find(z + o)) worst = std::max(worst, std::abs(lz - log_bigint(*m)) / denom);
  }
  return worst;
}

}  // namespace frolip
