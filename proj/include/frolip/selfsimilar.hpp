#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <tuple>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "frolip/cones.hpp"
#include "frolip/exponent_lattice.hpp"
#include "frolip/flow.hpp"
#include "frolip/frobenius.hpp"

namespace frolip {

// Ratios of a dust-like self-similar set class together with their exponent
// vectors over a pseudo-basis.
struct ContractionSystem {
  RatioList ratios;
  PseudoBasis basis;
  std::vector<ExponentVector> exponents;
  std::optional<double> delta;  // Hausdorff dimension; numeric systems only
  HalfSpaceCertificate alpha;

  std::size_t size() const { return exponents.size(); }
  std::size_t rank() const { return basis.size(); }
  bool numeric() const { return basis.numeric(); }
  DefiningData defining_data() const { return DefiningData::from_vectors(exponents); }
};

// Unique u > 0 with sum_j exp(-u c_j) = 1, for positive c_j and at least two terms.
inline double solve_moran(const std::vector<double>& c) {
  if (c.size() < 2) throw DomainError("TooFewRatios", "the Moran equation needs at least two ratios");
  for (double v : c)
    if (!(v > 0)) throw DomainError("RatioOutOfRange", "Moran coefficients must be positive");
  auto f = [&](double u) {
    double s = -1;
    for (double v : c) s += std::exp(-u * v);
    return s;
  };
  auto df = [&](double u) {
    double s = 0;
    for (double v : c) s -= v * std::exp(-u * v);
    return s;
  };
  double lo = 0, hi = 1;
  while (f(hi) > 0) lo = hi, hi *= 2;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? lo : hi) = mid;
  }
  double u = 0.5 * (lo + hi);
  for (int i = 0; i < 5; ++i) {
    const double step = f(u) / df(u);
    if (!std::isfinite(step)) break;
    u -= step;
  }
  return u;
}

// delta with sum_j rho_j^delta = 1.
inline double hausdorff_dimension(const std::vector<Rational>& ratios) {
  std::vector<double> c;
  for (const auto& r : ratios) {
    if (r <= 0 || r >= 1) throw DomainError("RatioOutOfRange", "ratio " + to_string(r) + " not in (0,1)");
    c.push_back(-log_rational(r));
  }
  return solve_moran(c);
}

namespace detail {

inline std::vector<Rational> rational_values(const RatioList& list) {
  std::vector<Rational> out;
  for (const auto& r : list.ratios) out.push_back(r.rational());
  return out;
}

}  // namespace detail

inline ContractionSystem build_system(const RatioList& ratios) {
  ratios.validate();
  if (ratios.size() < 2) throw DomainError("TooFewRatios", "a contraction system needs at least two ratios");
  const LatticeSystem raw =
      ratios.symbolic() ? ingest_monomials(ratios) : factor_rationals(detail::rational_values(ratios));
  const LatticeSystem reduced = reduce_to_pseudo_basis(raw);
  ContractionSystem sys;
  sys.ratios = ratios;
  sys.basis = reduced.basis;
  sys.exponents = reduced.vectors;
  sys.alpha = half_space_certificate(Cone(sys.exponents));
  if (!ratios.symbolic()) sys.delta = hausdorff_dimension(detail::rational_values(ratios));
  return sys;
}

inline constexpr double kIterationBudget = 1e6;

// All m^p products in lexicographic word order; exponents are the matching sums.
inline ContractionSystem iterate(const ContractionSystem& sys, int p) {
  if (p < 1) throw DomainError("InvalidIteration", "iteration order must be at least 1");
  if (std::pow(static_cast<double>(sys.size()), p) > kIterationBudget)
    throw ResourceLimit("iteration has more than 1e6 ratios");
  if (p == 1) return sys;
  ContractionSystem out;
  out.basis = sys.basis;
  out.alpha = sys.alpha;
  out.ratios.generators = sys.ratios.generators;
  std::vector<std::pair<RatioSpec, ExponentVector>> cur{{sys.ratios.symbolic()
                                                             ? RatioSpec{std::vector<std::int64_t>(
                                                                   sys.ratios.generators.size(), 0)}
                                                             : RatioSpec{Rational(1)},
                                                         ExponentVector(sys.rank())}};
  for (int r = 0; r < p; ++r) {
    std::vector<std::pair<RatioSpec, ExponentVector>> next;
    next.reserve(cur.size() * sys.size());
    for (const auto& [spec, exp] : cur)
      for (std::size_t j = 0; j < sys.size(); ++j) {
        RatioSpec s = spec;
        if (s.is_rational()) {
          s.value = s.rational() * sys.ratios.ratios[j].rational();
        } else {
          auto m = s.monomial();
          for (std::size_t g = 0; g < m.size(); ++g) m[g] += sys.ratios.ratios[j].monomial()[g];
          s.value = m;
        }
        next.emplace_back(std::move(s), exp + sys.exponents[j]);
      }
    cur = std::move(next);
  }
  for (auto& [spec, exp] : cur) {
    out.ratios.ratios.push_back(std::move(spec));
    out.exponents.push_back(std::move(exp));
  }
  if (sys.delta) {
    out.delta = hausdorff_dimension(detail::rational_values(out.ratios));
    if (std::abs(*out.delta - *sys.delta) > 1e-12)
      throw DomainError("MoranMismatch", "iteration changed the Moran root");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Thresholds and cut-sets

// t in (0,1), given exactly or as exp(-k) with rational k > 0. For a symbolic
// system over one generator, exp(-k) is read as lambda^k.
class Threshold {
 public:
  static Threshold exact(Rational t) {
    if (t <= 0 || t >= 1) throw DomainError("ThresholdOutOfRange", "threshold must lie in (0,1)");
    return Threshold(true, std::move(t));
  }
  static Threshold exp_neg(Rational k) {
    if (k <= 0) throw DomainError("ThresholdOutOfRange", "exponent k must be positive");
    return Threshold(false, std::move(k));
  }

  bool is_exact() const noexcept { return exact_; }
  // t for exact thresholds, k for exp(-k).
  const Rational& value() const noexcept { return value_; }
  std::string describe() const { return exact_ ? to_string(value_) : "exp(-" + to_string(value_) + ")"; }

 private:
  Threshold(bool exact, Rational v) : exact_(exact), value_(std::move(v)) {}
  bool exact_;
  Rational value_;
};

inline constexpr double kThresholdTieBand = 1e-12;

namespace detail {

inline HighFloat high_log(const Rational& r) {
  return boost::multiprecision::log(HighFloat(numerator_of(r))) - boost::multiprecision::log(HighFloat(denominator_of(r)));
}

// For a symbolic basis over one generator: the generator power of each element.
inline std::optional<std::vector<std::int64_t>> single_root_powers(const PseudoBasis& b) {
  if (b.numeric() || b.root_count() != 1) return std::nullopt;
  std::vector<std::int64_t> e;
  for (const auto& el : b.elements()) e.push_back(el[0]);
  return e;
}

}  // namespace detail

// -log rho_z with alpha_real = -(log lambda_1, ..., log lambda_s); a single
// symbolic generator counts as exp(-1).
inline std::vector<HighFloat> real_alpha(const ContractionSystem& sys) {
  std::vector<HighFloat> a;
  if (sys.numeric()) {
    for (const auto& v : sys.basis.values()) a.push_back(-detail::high_log(v));
  } else if (auto e = detail::single_root_powers(sys.basis)) {
    for (auto x : *e) a.emplace_back(x);
  } else {
    throw DomainError("UnsupportedThreshold", "real levels need a numeric or single-generator basis");
  }
  return a;
}

inline HighFloat real_level(const std::vector<HighFloat>& alpha, const ExponentVector& z) {
  HighFloat s = 0;
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i] != 0) s += alpha[i] * z[i];
  return s;
}

// Decides rho_z > t for exponent vectors of one system.
class ThresholdTest {
 public:
  ThresholdTest(const ContractionSystem& sys, const Threshold& t) : sys_(sys), t_(t) {
    if (auto e = detail::single_root_powers(sys.basis)) {
      if (t.is_exact()) throw DomainError("UnsupportedThreshold", "symbolic systems need a threshold exp(-k)");
      powers_ = *e;
      return;
    }
    if (!sys.numeric()) throw DomainError("UnsupportedThreshold", "cut-sets over several symbolic generators");
    alpha_hi_ = real_alpha(sys);
    for (const auto& a : alpha_hi_) alpha_lo_.push_back(a.convert_to<double>());
    k_hi_ = t.is_exact() ? HighFloat(-detail::high_log(t.value())) : to_high(t.value());
    k_lo_ = k_hi_.convert_to<double>();
  }

  // rho_z > t, i.e. z . alpha_real < k.
  bool interior(const ExponentVector& z) const {
    if (!powers_.empty()) {
      BigInt l = 0;
      for (std::size_t i = 0; i < z.size(); ++i) l += BigInt(z[i]) * powers_[i];
      return Rational(l) < t_.value();
    }
    double l = 0;
    for (std::size_t i = 0; i < z.size(); ++i) l += alpha_lo_[i] * static_cast<double>(z[i]);
    const double margin = 1e-7 * std::max(1.0, std::abs(k_lo_));
    if (l < k_lo_ - margin) return true;
    if (l > k_lo_ + margin) return false;
    if (t_.is_exact()) return sys_.basis.evaluate(z) > t_.value();
    const HighFloat diff = real_level(alpha_hi_, z) - k_hi_;
    if (boost::multiprecision::abs(diff) < kThresholdTieBand)
      throw DomainError("ThresholdTie", "a ratio lies within 1e-12 of the threshold; perturb k");
    return diff < 0;
  }

 private:
  const ContractionSystem& sys_;
  Threshold t_;
  std::vector<std::int64_t> powers_;
  std::vector<HighFloat> alpha_hi_;
  std::vector<double> alpha_lo_;
  HighFloat k_hi_;
  double k_lo_ = 0;
};

using Word = std::vector<std::uint32_t>;  // letters 1..m

inline std::string word_to_string(const Word& w, std::size_t alphabet) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (alphabet > 9 && i > 0) out += ".";
    out += std::to_string(w[i]);
  }
  return out;
}

inline ExponentVector word_exponent(const ContractionSystem& sys, const Word& w) {
  ExponentVector e(sys.rank());
  for (auto letter : w) {
    if (letter < 1 || letter > sys.size()) throw DomainError("InvalidWord", "letter outside the alphabet");
    e += sys.exponents[letter - 1];
  }
  return e;
}

struct CutSet {
  Threshold threshold;
  std::vector<Word> words;  // lexicographic order
  std::vector<ExponentVector> exponents;
  std::vector<std::string> ratios;
};

inline constexpr std::size_t kCutSetWordBudget = 1'000'000;

// W(t) = { i : rho_i <= t < rho_{i*} } by depth-first search of the word tree.
inline CutSet cut_set(const ContractionSystem& sys, const Threshold& t, std::size_t budget = kCutSetWordBudget) {
  const ThresholdTest test(sys, t);
  CutSet out{t, {}, {}, {}};
  Word w;
  std::vector<ExponentVector> stack{ExponentVector(sys.rank())};
  // iterative DFS: w holds the current interior prefix
  std::vector<std::uint32_t> next_letter{1};
  while (!next_letter.empty()) {
    std::uint32_t& letter = next_letter.back();
    if (letter > sys.size()) {
      next_letter.pop_back();
      stack.pop_back();
      if (!w.empty()) w.pop_back();
      continue;
    }
    const std::uint32_t j = letter++;
    ExponentVector child = stack.back() + sys.exponents[j - 1];
    w.push_back(j);
    if (test.interior(child)) {
      stack.push_back(std::move(child));
      next_letter.push_back(1);
      continue;
    }
    if (out.words.size() >= budget) throw ResourceLimit("cut-set exceeds the word budget");
    out.words.push_back(w);
    out.ratios.push_back(sys.basis.describe(child));
    out.exponents.push_back(std::move(child));
    w.pop_back();
  }
  return out;
}

// The multiset A_k = { log_lambda rho_i : i in W(t) } aggregated per point. Counts
// come from multiplicities of interior points, so no words are enumerated.
struct CutPoints {
  std::vector<ExponentVector> points;  // sorted
  std::vector<BigInt> counts;

  BigInt total() const {
    BigInt s = 0;
    for (const auto& c : counts) s += c;
    return s;
  }
};

inline constexpr std::size_t kInteriorPointBudget = 4'000'000;

inline CutPoints cut_points(const ContractionSystem& sys, const Threshold& t,
                            std::size_t budget = kInteriorPointBudget) {
  const ThresholdTest test(sys, t);
  const DefiningData data = sys.defining_data();
  const ExponentVector origin(sys.rank());
  std::vector<std::pair<std::int64_t, ExponentVector>> interior{{0, origin}};
  std::unordered_set<ExponentVector, ExponentVectorHash> inside{origin}, outside;
  for (std::size_t head = 0; head < interior.size(); ++head) {
    for (const auto& x : sys.exponents) {
      ExponentVector w = interior[head].second + x;
      if (inside.count(w) || outside.count(w)) continue;
      if (test.interior(w)) {
        if (interior.size() >= budget) throw ResourceLimit("cut-set interior exceeds the point budget");
        inside.insert(w);
        interior.emplace_back(data.level(w), std::move(w));
      } else {
        outside.insert(std::move(w));
      }
    }
  }
  std::sort(interior.begin(), interior.end());
  std::unordered_map<ExponentVector, BigInt, ExponentVectorHash> mult, cut;
  for (const auto& [lvl, z] : interior) {
    BigInt m = z.is_zero() ? BigInt(1) : BigInt(0);
    for (const auto& x : sys.exponents) {
      auto it = mult.find(z - x);
      if (it != mult.end()) m += it->second;
    }
    for (const auto& x : sys.exponents) {
      ExponentVector w = z + x;
      if (!inside.count(w)) cut[w] += m;
    }
    mult.emplace(z, std::move(m));
  }
  std::map<ExponentVector, BigInt> sorted(cut.begin(), cut.end());
  CutPoints out;
  for (auto& [z, c] : sorted) {
    out.points.push_back(z);
    out.counts.push_back(c);
  }
  return out;
}

// A_k at t = exp(-k).
inline CutPoints a_k_set(const ContractionSystem& sys, const Rational& k) {
  return cut_points(sys, Threshold::exp_neg(k));
}

// Largest distance from a sample of the slice {x in cone : x . alpha_real = k}
// to the nearest point of A_k. The slice is the hull of k X_j / (X_j . alpha_real);
// samples are the barycentric grid with the given resolution.
inline double covering_radius(const ContractionSystem& sys, const Rational& k, int resolution = 12) {
  const CutPoints pts = a_k_set(sys, k);
  const auto alpha = real_alpha(sys);
  const double kd = to_double(k);
  std::vector<std::vector<double>> vertices;
  for (const auto& x : sys.exponents) {
    const double scale = kd / real_level(alpha, x).convert_to<double>();
    std::vector<double> v;
    for (auto c : x) v.push_back(scale * static_cast<double>(c));
    vertices.push_back(std::move(v));
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  const std::size_t m = vertices.size(), s = sys.rank();
  double worst = 0;
  std::vector<int> w(m, 0);
  // enumerate compositions of `resolution` into m parts
  std::function<void(std::size_t, int)> walk = [&](std::size_t j, int left) {
    if (j + 1 == m) {
      w[j] = left;
      std::vector<double> x(s, 0.0);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t c = 0; c < s; ++c) x[c] += w[i] * vertices[i][c] / resolution;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& b : pts.points) {
        double d = 0;
        for (std::size_t c = 0; c < s; ++c) d += (x[c] - static_cast<double>(b[c])) * (x[c] - static_cast<double>(b[c]));
        best = std::min(best, d);
      }
      worst = std::max(worst, std::sqrt(best));
      return;
    }
    for (int a = 0; a <= left; ++a) {
      w[j] = a;
      walk(j + 1, left - a);
    }
  };
  walk(0, resolution);
  return worst;
}

// ---------------------------------------------------------------------------
// Common basis and the distance h

struct BasisPair {
  PseudoBasis basis;
  ContractionSystem first;
  ContractionSystem second;
};

namespace detail {

inline ContractionSystem rebase(const ContractionSystem& sys, const PseudoBasis& basis,
                                std::vector<ExponentVector> exps) {
  ContractionSystem out = sys;
  out.basis = basis;
  out.exponents = std::move(exps);
  out.alpha = half_space_certificate(Cone(out.exponents));
  return out;
}

}  // namespace detail

// Re-expresses two systems over one pseudo-basis of the group they generate together.
inline BasisPair common_basis(const ContractionSystem& a, const ContractionSystem& b) {
  if (a.numeric() != b.numeric())
    throw DomainError("IncompatibleSymbolicBases", "cannot relate numeric ratios to symbolic generators");

  std::vector<std::string> roots;
  std::vector<BigInt> primes;
  if (a.numeric()) {
    std::vector<BigInt> all = a.basis.primes();
    all.insert(all.end(), b.basis.primes().begin(), b.basis.primes().end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    primes = all;
  } else {
    auto sa = a.basis.root_names(), sb = b.basis.root_names();
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) throw DomainError("IncompatibleSymbolicBases", "systems use different named generators");
    roots = a.basis.root_names();
  }
  const PseudoBasis joint = a.numeric() ? PseudoBasis::reciprocal_primes(primes) : PseudoBasis::symbols(roots);

  auto lift = [&](const ContractionSystem& sys) {
    // positions of this system's roots inside the joint root list
    std::vector<std::size_t> where;
    for (std::size_t r = 0; r < sys.basis.root_count(); ++r) {
      std::size_t k = 0;
      if (sys.numeric()) {
        while (primes[k] != sys.basis.primes()[r]) ++k;
      } else {
        while (roots[k] != sys.basis.root_names()[r]) ++k;
      }
      where.push_back(k);
    }
    std::vector<ExponentVector> out;
    for (const auto& x : sys.exponents) {
      const ExponentVector r = sys.basis.to_roots(x);
      ExponentVector padded(joint.root_count());
      for (std::size_t i = 0; i < r.size(); ++i) padded[where[i]] = r[i];
      out.push_back(padded);
    }
    return out;
  };
  LatticeSystem combined{joint, lift(a)};
  const auto lb = lift(b);
  combined.vectors.insert(combined.vectors.end(), lb.begin(), lb.end());
  const LatticeSystem reduced = reduce_to_pseudo_basis(combined);

  std::vector<ExponentVector> ea(reduced.vectors.begin(), reduced.vectors.begin() + static_cast<std::ptrdiff_t>(a.size()));
  std::vector<ExponentVector> eb(reduced.vectors.begin() + static_cast<std::ptrdiff_t>(a.size()), reduced.vectors.end());
  return BasisPair{reduced.basis, detail::rebase(a, reduced.basis, std::move(ea)),
                   detail::rebase(b, reduced.basis, std::move(eb))};
}

struct Distance {
  BigInt squared;
  double value;
};

inline Distance h_distance_exponents(const ExponentVector& x, const ExponentVector& y) {
  const BigInt sq = (x - y).squared_norm();
  return {sq, std::sqrt(sq.convert_to<double>())};
}

// h(rho_i, tau_j) = |log_lambda rho_i - log_lambda tau_j| over a shared basis.
inline Distance h_distance(const ContractionSystem& e, const Word& i, const ContractionSystem& f, const Word& j) {
  if (!(e.basis == f.basis)) throw DomainError("BasisMismatch", "systems do not share a pseudo-basis");
  return h_distance_exponents(word_exponent(e, i), word_exponent(f, j));
}

// ---------------------------------------------------------------------------
// (M0, h)-matchability of cut-sets

struct MatchReport {
  bool feasible = false;
  std::int64_t m0 = 0;
  std::int64_t relation_size = 0;  // number of pairs when feasible
  BigInt left_size = 0;
  BigInt right_size = 0;
  std::optional<std::vector<std::pair<Word, Word>>> witness;
};

inline constexpr std::size_t kWitnessWordLimit = 4096;

namespace detail {

// Spreads f edges of an a-by-b block so that no pair repeats and degrees on
// each side stay balanced; the pointers carry the balance across blocks.
inline void fill_block(std::int64_t f, const std::vector<Word>& left, const std::vector<Word>& right,
                       std::int64_t& pl, std::int64_t& pr, std::vector<std::pair<Word, Word>>& out) {
  const auto a = static_cast<std::int64_t>(left.size()), b = static_cast<std::int64_t>(right.size());
  const std::int64_t run = std::lcm(a, b);
  for (std::int64_t e = 0; e < f; ++e)
    out.emplace_back(left[static_cast<std::size_t>((pl + e) % a)],
                     right[static_cast<std::size_t>((pr + e + e / run) % b)]);
  const std::int64_t full = f / run, rest = f - full * run;
  pl = (pl + f) % a;
  pr = (pr + full + rest) % b;
}

inline std::map<ExponentVector, std::vector<Word>> words_by_point(const CutSet& c) {
  std::map<ExponentVector, std::vector<Word>> out;
  for (std::size_t i = 0; i < c.words.size(); ++i) out[c.exponents[i]].push_back(c.words[i]);
  return out;
}

}  // namespace detail

// Is there R in W_E(t) x W_F(t) with every degree in [1, M0] and h <= M0 on
// every pair? Decided exactly on the point-aggregated flow network.
inline MatchReport matchable(const ContractionSystem& e, const ContractionSystem& f, const Threshold& t,
                             std::int64_t m0) {
  if (m0 < 1) throw DomainError("InvalidM0", "M0 must be a positive integer");
  if (!(e.basis == f.basis)) throw DomainError("BasisMismatch", "systems do not share a pseudo-basis");
  const CutPoints left = cut_points(e, t), right = cut_points(f, t);
  MatchReport rep;
  rep.m0 = m0;
  rep.left_size = left.total();
  rep.right_size = right.total();

  const std::size_t nl = left.points.size(), nr = right.points.size();
  const std::size_t src = nl + nr, sink = src + 1;
  flow::Circulation circ(nl + nr + 2);
  auto cnt = [](const BigInt& c) { return to_int64(c); };
  auto times = [](std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_mul_overflow(x, y, &r)) throw ResourceLimit("cut-set sizes overflow the flow network");
    return r;
  };
  for (std::size_t u = 0; u < nl; ++u) circ.add_edge(src, u, cnt(left.counts[u]), times(m0, cnt(left.counts[u])));
  for (std::size_t v = 0; v < nr; ++v)
    circ.add_edge(nl + v, sink, cnt(right.counts[v]), times(m0, cnt(right.counts[v])));
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> blocks;
  const BigInt limit = BigInt(m0) * m0;
  for (std::size_t u = 0; u < nl; ++u)
    for (std::size_t v = 0; v < nr; ++v)
      if ((left.points[u] - right.points[v]).squared_norm() <= limit)
        blocks.emplace_back(u, v,
                            circ.add_edge(u, nl + v, 0, times(cnt(left.counts[u]), cnt(right.counts[v]))));
  circ.add_edge(sink, src, 0, std::numeric_limits<std::int64_t>::max() / 4);
  rep.feasible = circ.solve();
  if (!rep.feasible) return rep;
  for (const auto& [u, v, id] : blocks) rep.relation_size += circ.flow(id);

  if (rep.left_size > kWitnessWordLimit || rep.right_size > kWitnessWordLimit) return rep;
  const auto lw = detail::words_by_point(cut_set(e, t));
  const auto rw = detail::words_by_point(cut_set(f, t));
  std::vector<std::int64_t> pl(nl, 0), pr(nr, 0);
  std::vector<std::pair<Word, Word>> pairs;
  for (const auto& [u, v, id] : blocks)
    detail::fill_block(circ.flow(id), lw.at(left.points[u]), rw.at(right.points[v]), pl[u], pr[v], pairs);
  std::sort(pairs.begin(), pairs.end());
  rep.witness = std::move(pairs);
  return rep;
}

// Doubles M0 from 1 until feasible or past max_m0; returns the last report.
inline MatchReport matchable_search(const ContractionSystem& e, const ContractionSystem& f, const Threshold& t,
                                    std::int64_t max_m0 = 64) {
  MatchReport rep;
  for (std::int64_t m0 = 1; m0 <= max_m0; m0 *= 2) {
    rep = matchable(e, f, t, m0);
    if (rep.feasible) break;
  }
  return rep;
}

}  // namespace frolip
