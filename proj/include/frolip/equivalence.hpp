#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frolip/cones.hpp"
#include "frolip/frobenius.hpp"
#include "frolip/selfsimilar.hpp"

namespace frolip {

enum class Result { Equivalent, NotEquivalent, Undecided };

inline std::string to_string(Result r) {
  switch (r) {
    case Result::Equivalent: return "EQUIVALENT";
    case Result::NotEquivalent: return "NOT_EQUIVALENT";
    case Result::Undecided: return "UNDECIDED";
  }
  return "UNDECIDED";
}

// For EQUIVALENT. kind is PERMUTATION, TWO_BRANCH_SPECIAL or ITERATION;
// permutation[i] is the index in f^q matched to word i of e^p.
struct Certificate {
  std::string kind;
  int p = 1;
  int q = 1;
  std::vector<std::size_t> permutation;
};

// For NOT_EQUIVALENT: the invariant that differs and its two values.
struct Violation {
  std::string invariant;
  std::string first;
  std::string second;
};

struct GammaDiagnostic {
  std::vector<double> theta;
  double first = 0;
  double second = 0;
};

struct Verdict {
  Result result = Result::Undecided;
  std::string reason;
  std::optional<Certificate> certificate;
  std::optional<Violation> violation;
  std::vector<GammaDiagnostic> diagnostics;
};

struct DecideOptions {
  int pq_bound = 24;
  bool gamma_diagnostics = false;
  GammaOptions gamma{60, 8};
};

namespace detail {

inline Verdict not_equivalent(std::string reason, std::string invariant, std::string a, std::string b) {
  Verdict v;
  v.result = Result::NotEquivalent;
  v.reason = std::move(reason);
  v.violation = Violation{std::move(invariant), std::move(a), std::move(b)};
  return v;
}

inline Verdict equivalent(std::string reason, Certificate c) {
  Verdict v;
  v.result = Result::Equivalent;
  v.reason = std::move(reason);
  v.certificate = std::move(c);
  return v;
}

inline Verdict undecided(std::string reason) {
  Verdict v;
  v.reason = std::move(reason);
  return v;
}

inline std::vector<ExponentVector> sorted(std::vector<ExponentVector> xs) {
  std::sort(xs.begin(), xs.end());
  return xs;
}

inline std::string multiset_string(const std::vector<ExponentVector>& xs) {
  std::string out = "{";
  for (const auto& x : sorted(xs)) {
    if (out.size() > 1) out += ",";
    out += "(";
    for (std::size_t i = 0; i < x.size(); ++i) out += (i ? "," : "") + std::to_string(x[i]);
    out += ")";
  }
  return out + "}";
}

// i -> j with b[j] == a[i], or nullopt if the multisets differ.
inline std::optional<std::vector<std::size_t>> matching_permutation(const std::vector<ExponentVector>& a,
                                                                    const std::vector<ExponentVector>& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::map<ExponentVector, std::vector<std::size_t>> slots;
  for (std::size_t j = b.size(); j-- > 0;) slots[b[j]].push_back(j);
  std::vector<std::size_t> perm(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto it = slots.find(a[i]);
    if (it == slots.end() || it->second.empty()) return std::nullopt;
    perm[i] = it->second.back();
    it->second.pop_back();
  }
  return perm;
}

// Polynomials over Q, low degree first.
using Poly = std::vector<Rational>;

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& b) {
  trim(a);
  while (a.size() >= b.size()) {
    const Rational c = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  return a;
}

inline Poly poly_gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline Rational poly_eval(const Poly& p, const Rational& x) {
  Rational v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

inline constexpr std::int64_t kMoranPolyDegreeCap = 4096;

// sum_j x^{k_j} - 1 for positive exponents k_j.
inline Poly moran_poly(const std::vector<ExponentVector>& xs) {
  std::int64_t top = 0;
  for (const auto& x : xs) top = std::max(top, x[0]);
  Poly p(static_cast<std::size_t>(top) + 1, Rational(0));
  p[0] = -1;
  for (const auto& x : xs) p[static_cast<std::size_t>(x[0])] += 1;
  return p;
}

// Single shared generator: x = lambda^delta solves sum x^{k_j} = 1 in (0,1),
// and that root is simple. The dimensions agree iff the two polynomials share
// it, i.e. their gcd changes sign on (0,1).
inline std::optional<bool> symbolic_dimensions_equal(const ContractionSystem& e, const ContractionSystem& f) {
  if (e.numeric() || e.rank() != 1) return std::nullopt;
  for (const auto* sys : {&e, &f})
    for (const auto& x : sys->exponents)
      if (x[0] <= 0 || x[0] > kMoranPolyDegreeCap) return std::nullopt;
  const Poly g = poly_gcd(moran_poly(e.exponents), moran_poly(f.exponents));
  if (g.size() < 2) return false;
  return (poly_eval(g, 0) < 0) != (poly_eval(g, 1) < 0);
}

inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Multiset of p-fold sums with multiplicities.
inline std::map<ExponentVector, BigInt> power_multiset(const std::vector<ExponentVector>& xs, int p) {
  std::map<ExponentVector, BigInt> cur{{ExponentVector(xs.front().size()), BigInt(1)}};
  for (int r = 0; r < p; ++r) {
    std::map<ExponentVector, BigInt> next;
    for (const auto& [z, c] : cur)
      for (const auto& x : xs) next[z + x] += c;
    cur = std::move(next);
  }
  return cur;
}

// m^p = n^q has a solution iff m = d^u, n = d^v; returns the least (p,q) = (v,u).
inline std::optional<std::pair<int, int>> least_cardinality_solution(std::size_t m, std::size_t n) {
  auto fm = factorize(BigInt(m)), fn = factorize(BigInt(n));
  if (m == 1 || n == 1) return m == n ? std::optional<std::pair<int, int>>({1, 1}) : std::nullopt;
  std::vector<BigInt> primes;
  for (const auto& [p, e] : fm) primes.push_back(p);
  std::vector<BigInt> other;
  for (const auto& [p, e] : fn) other.push_back(p);
  if (primes != other) return std::nullopt;
  // exponent vectors must be proportional: e_m / e_n constant
  std::int64_t gm = 0, gn = 0;
  for (const auto& [p, e] : fm) gm = std::gcd(gm, e);
  for (const auto& [p, e] : fn) gn = std::gcd(gn, e);
  for (const auto& p : primes)
    if (fm[p] / gm != fn[p] / gn) return std::nullopt;
  const std::int64_t g = std::gcd(gm, gn);
  return std::pair<int, int>{static_cast<int>(gn / g), static_cast<int>(gm / g)};
}

// Each axis carries one exponent value, every axis is used, and nothing lies
// off the axes. Returns (exponent, multiplicity) per axis.
inline std::optional<std::vector<std::pair<std::int64_t, std::int64_t>>> axis_profile(
    const std::vector<ExponentVector>& xs) {
  const std::size_t s = xs.front().size();
  std::vector<std::pair<std::int64_t, std::int64_t>> prof(s, {0, 0});
  for (const auto& x : xs) {
    std::size_t axis = s, nonzero = 0;
    for (std::size_t i = 0; i < s; ++i)
      if (x[i] != 0) axis = i, ++nonzero;
    if (nonzero != 1) return std::nullopt;
    auto& [k, a] = prof[axis];
    if (a > 0 && k != x[axis]) return std::nullopt;
    k = x[axis];
    ++a;
  }
  for (const auto& [k, a] : prof)
    if (a == 0) return std::nullopt;
  return prof;
}

}  // namespace detail

// Invariant screening over a common basis; nullopt means every check passed.
inline std::optional<Verdict> screen_invariants(const ContractionSystem& e, const ContractionSystem& f) {
  if (e.delta && f.delta) {
    if (std::abs(*e.delta - *f.delta) > 1e-10)
      return detail::not_equivalent("dimension", "dimension", detail::format_double(*e.delta),
                                    detail::format_double(*f.delta));
  } else if (auto same = detail::symbolic_dimensions_equal(e, f); same && !*same) {
    return detail::not_equivalent("dimension", "dimension", "moran root of " + detail::multiset_string(e.exponents),
                                  "moran root of " + detail::multiset_string(f.exponents));
  }
  const std::size_t re = integer_rank(e.exponents), rf = integer_rank(f.exponents);
  if (re != rf) return detail::not_equivalent("rank", "rank", std::to_string(re), std::to_string(rf));
  const Cone ce(e.exponents), cf(f.exponents);
  if (!cone_equal(ce, cf))
    return detail::not_equivalent("cone", "cone", detail::multiset_string(e.exponents),
                                  detail::multiset_string(f.exponents));
  if (!v_plus_equal(ce, cf))
    return detail::not_equivalent("v_plus", "v_plus", detail::multiset_string(e.exponents),
                                  detail::multiset_string(f.exponents));
  return std::nullopt;
}

// Both families full rank: equivalent iff the exponent multisets agree.
inline std::optional<Verdict> decide_full_rank(const ContractionSystem& e, const ContractionSystem& f) {
  if (integer_rank(e.exponents) != e.size() || integer_rank(f.exponents) != f.size()) return std::nullopt;
  if (auto perm = detail::matching_permutation(e.exponents, f.exponents))
    return detail::equivalent("PERMUTATION", Certificate{"PERMUTATION", 1, 1, *perm});
  return detail::not_equivalent("FULL_RANK_MULTISET", "exponent multiset", detail::multiset_string(e.exponents),
                                detail::multiset_string(f.exponents));
}

namespace detail {

// {5c, c} against {3c, 2c} on a rank-one basis.
inline bool two_branch_special(const std::vector<ExponentVector>& a, const std::vector<ExponentVector>& b) {
  if (a.front().size() != 1) return false;
  auto lo_hi = [](const std::vector<ExponentVector>& x) {
    return std::pair<std::int64_t, std::int64_t>{std::min(x[0][0], x[1][0]), std::max(x[0][0], x[1][0])};
  };
  const auto [a1, a5] = lo_hi(a);
  const auto [b2, b3] = lo_hi(b);
  const std::int64_t c = a1;
  return c > 0 && a5 == 5 * c && b2 == 2 * c && b3 == 3 * c;
}

}  // namespace detail

inline std::optional<Verdict> decide_two_branch(const ContractionSystem& e, const ContractionSystem& f) {
  if (e.size() != 2 || f.size() != 2) return std::nullopt;
  if (auto perm = detail::matching_permutation(e.exponents, f.exponents))
    return detail::equivalent("PERMUTATION", Certificate{"PERMUTATION", 1, 1, *perm});
  if (detail::two_branch_special(e.exponents, f.exponents) || detail::two_branch_special(f.exponents, e.exponents))
    return detail::equivalent("TWO_BRANCH_SPECIAL", Certificate{"TWO_BRANCH_SPECIAL", 1, 1, {}});
  return detail::not_equivalent("TWO_BRANCH", "two-branch pattern", detail::multiset_string(e.exponents),
                                detail::multiset_string(f.exponents));
}

// Looks for p, q with e^p a permutation of f^q. Finding one proves equivalence
// for any pair of systems; exhausting the bound proves nothing.
inline std::optional<Verdict> search_iterations(const ContractionSystem& e, const ContractionSystem& f, int bound) {
  const auto base = detail::least_cardinality_solution(e.size(), f.size());
  if (!base) return std::nullopt;
  const auto [p0, q0] = *base;
  for (int c = 1; c * p0 <= bound && c * q0 <= bound; ++c) {
    const int p = c * p0, q = c * q0;
    if (std::pow(static_cast<double>(e.size()), p) > kIterationBudget) break;
    if (detail::power_multiset(e.exponents, p) != detail::power_multiset(f.exponents, q)) continue;
    const auto ep = iterate(e, p), fq = iterate(f, q);
    auto perm = detail::matching_permutation(ep.exponents, fq.exponents);
    if (!perm) throw DomainError("InternalError", "iteration multisets disagree with their tallies");
    return detail::equivalent("ITERATION", Certificate{"ITERATION", p, q, std::move(*perm)});
  }
  return std::nullopt;
}

// Both systems coplanar: equivalent iff some iterations are permutations of
// each other. Cardinality and the axis counting rule refute exactly; an
// exhausted search is UNDECIDED.
inline Verdict decide_coplanar(const ContractionSystem& e, const ContractionSystem& f, int pq_bound = 24) {
  if (!coplanar_functional(e.exponents).present() || !coplanar_functional(f.exponents).present())
    throw DomainError("NotCoplanar", "both systems must be coplanar");
  if (auto perm = detail::matching_permutation(e.exponents, f.exponents))
    return detail::equivalent("PERMUTATION", Certificate{"PERMUTATION", 1, 1, *perm});
  if (!detail::least_cardinality_solution(e.size(), f.size()))
    return detail::not_equivalent("NO_ITERATION_CARDINALITY", "word count", std::to_string(e.size()),
                                  std::to_string(f.size()));
  if (e.rank() >= 2) {
    const auto pa = detail::axis_profile(e.exponents), pb = detail::axis_profile(f.exponents);
    if (pa && pb)
      return detail::not_equivalent("ITERATION_COUNTING", "exponent multiset", detail::multiset_string(e.exponents),
                                    detail::multiset_string(f.exponents));
  }
  if (auto v = search_iterations(e, f, pq_bound)) return *v;
  return detail::undecided("SEARCH_BOUND");
}

namespace detail {

inline std::vector<std::vector<double>> diagnostic_directions(const std::vector<ExponentVector>& xs) {
  std::vector<std::vector<double>> dirs;
  std::vector<ExponentVector> uniq = sorted(xs);
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  std::vector<double> all(xs.front().size(), 0.0);
  for (const auto& x : uniq)
    for (std::size_t i = 0; i < x.size(); ++i) all[i] += static_cast<double>(x[i]);
  dirs.push_back(unit(all));
  for (std::size_t a = 0; a < uniq.size() && dirs.size() < 8; ++a)
    for (std::size_t b = a + 1; b < uniq.size() && dirs.size() < 8; ++b) {
      std::vector<double> d(all.size());
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = static_cast<double>(uniq[a][i] + uniq[b][i]);
      dirs.push_back(unit(d));
    }
  return dirs;
}

inline void attach_gamma(Verdict& v, const ContractionSystem& e, const ContractionSystem& f, const GammaOptions& g) {
  const auto de = e.defining_data(), df = f.defining_data();
  for (const auto& theta : diagnostic_directions(e.exponents)) {
    try {
      v.diagnostics.push_back({theta, estimate_gamma(de, theta, g).gamma_hat, estimate_gamma(df, theta, g).gamma_hat});
    } catch (const DomainError&) {
      // direction outside one cone
    }
  }
}

}  // namespace detail

inline Verdict decide(const ContractionSystem& e, const ContractionSystem& f, const DecideOptions& opts = {}) {
  std::optional<BasisPair> pair;
  try {
    pair = common_basis(e, f);
  } catch (const DomainError& err) {
    if (err.tag() != "IncompatibleSymbolicBases") throw;
    return detail::undecided("NO_COMMON_BASIS");
  }
  const ContractionSystem& a = pair->first;
  const ContractionSystem& b = pair->second;
  if (auto v = screen_invariants(a, b)) return *v;
  if (auto perm = detail::matching_permutation(a.exponents, b.exponents))
    return detail::equivalent("PERMUTATION", Certificate{"PERMUTATION", 1, 1, *perm});
  if (auto v = decide_full_rank(a, b)) return *v;
  if (auto v = decide_two_branch(a, b)) return *v;
  if (coplanar_functional(a.exponents).present() && coplanar_functional(b.exponents).present())
    return decide_coplanar(a, b, opts.pq_bound);
  Verdict v = detail::undecided("OUTSIDE_DECIDABLE_FAMILIES");
  if (auto found = search_iterations(a, b, opts.pq_bound)) v = *found;
  if (v.result == Result::Undecided && opts.gamma_diagnostics) detail::attach_gamma(v, a, b, opts.gamma);
  return v;
}

// Recomputes an EQUIVALENT certificate from fresh systems.
inline bool verify_certificate(const ContractionSystem& e, const ContractionSystem& f, const Verdict& v) {
  if (v.result != Result::Equivalent || !v.certificate) return false;
  const auto pair = common_basis(e, f);
  const Certificate& c = *v.certificate;
  if (c.kind == "TWO_BRANCH_SPECIAL")
    return pair.first.size() == 2 && pair.second.size() == 2 &&
           (detail::two_branch_special(pair.first.exponents, pair.second.exponents) ||
            detail::two_branch_special(pair.second.exponents, pair.first.exponents));
  const auto ep = iterate(pair.first, c.p), fq = iterate(pair.second, c.q);
  if (c.permutation.size() != ep.size() || fq.size() != ep.size()) return false;
  std::vector<bool> used(fq.size(), false);
  for (std::size_t i = 0; i < ep.size(); ++i) {
    const std::size_t j = c.permutation[i];
    if (j >= fq.size() || used[j] || ep.exponents[i] != fq.exponents[j]) return false;
    used[j] = true;
  }
  return true;
}

}  // namespace frolip
