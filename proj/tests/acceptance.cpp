// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "frolip/frolip.hpp"
#include "oracles.hpp"

using namespace frolip;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Check = std::function<Outcome()>;

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

ContractionSystem numeric(std::vector<Rational> rs) { return build_system(RatioList::from_rationals(rs)); }

ContractionSystem lambda(std::vector<std::int64_t> ks) {
  std::vector<std::vector<std::int64_t>> mons;
  for (auto k : ks) mons.push_back({k});
  return build_system(RatioList::from_monomials({"l"}, mons));
}

std::vector<ExponentVector> iterate_sums(const std::vector<ExponentVector>& xs, int p) {
  std::vector<ExponentVector> out{ExponentVector(xs.front().size())};
  for (int r = 0; r < p; ++r) {
    std::vector<ExponentVector> next;
    for (const auto& w : out)
      for (const auto& x : xs) next.push_back(w + x);
    out = next;
  }
  return out;
}

// 1. DP counts against word enumeration; tolerance zero.
Outcome multiplicity_exactness() {
  Outcome o;
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> coord(-3, 3), dim(1, 3), size(1, 4);
  std::size_t points = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::optional<DefiningData> data;
    while (!data) {
      std::vector<ExponentVector> xs;
      const int s = dim(rng), m = size(rng);
      for (int j = 0; j < m; ++j) {
        ExponentVector v(static_cast<std::size_t>(s));
        do {
          for (int i = 0; i < s; ++i) v[static_cast<std::size_t>(i)] = coord(rng);
        } while (v.is_zero());
        xs.push_back(v);
      }
      try {
        data = DefiningData::from_vectors(xs);
      } catch (const DomainError&) {
      }
    }
    // a word of length > 8 has level > 8 min(X.alpha)
    const std::int64_t bound = 8 * data->min_level();
    const auto table = build_multiplicity(*data, bound);
    const auto words = oracle::enumerate_words(data->vectors(), 8);
    std::size_t seen = 0;
    for (const auto& [z, n] : words) {
      if (data->level(z) > bound) continue;
      ++seen;
      if (table.count(z) != n) fail(o, "count mismatch in trial " + std::to_string(trial));
    }
    if (seen != table.size()) fail(o, "point set mismatch in trial " + std::to_string(trial));
    points += seen;
  }
  if (o.pass) o.detail = std::to_string(points) + " points over 50 systems";
  return o;
}

// 2. Quadrant multiplicities are binomial coefficients.
Outcome binomial_oracle() {
  Outcome o;
  const auto data = DefiningData::from_vectors({{1, 0}, {0, 1}});
  const auto table = build_multiplicity(data, 30);
  int checked = 0;
  for (std::int64_t a = 0; a <= 30; ++a)
    for (std::int64_t b = 0; a + b <= 30; ++b, ++checked)
      if (table.count(ExponentVector{a, b}) != BigInt(oracle::binomial(static_cast<std::uint64_t>(a + b), static_cast<std::uint64_t>(a))))
        fail(o, "m(" + std::to_string(a) + "," + std::to_string(b) + ")");
  if (o.pass) o.detail = std::to_string(checked) + " points";
  return o;
}

// 3. Regression estimate against the entropy formula; 0.05 per direction, 0.02 on the diagonal.
Outcome gamma_agreement() {
  Outcome o;
  double worst = 0;
  for (const auto& xs : {std::vector<ExponentVector>{{1, 0}, {0, 1}}, std::vector<ExponentVector>{{2, 0}, {1, 1}, {0, 2}}}) {
    const auto data = DefiningData::from_vectors(xs);
    const auto dirs = direction_sweep(data, 9);
    const GammaOptions g{120, 12};
    const auto table = build_multiplicity(data, gamma_table_bound(data, dirs, g.k_max));
    for (const auto& th : dirs) {
      const double diff = std::abs(estimate_gamma(table, th, g).gamma_hat - analytic_gamma(data, th));
      worst = std::max(worst, diff);
      if (diff > 0.05) fail(o, "direction difference " + fmt(diff));
    }
  }
  const double r = 1 / std::sqrt(2.0);
  const auto quad = DefiningData::from_vectors({{1, 0}, {0, 1}});
  const double expected = std::sqrt(2.0) * std::log(2.0);
  const double emp = estimate_gamma(quad, {r, r}, GammaOptions{120, 12}).gamma_hat;
  const double ana = analytic_gamma(quad, {r, r});
  if (std::abs(emp - expected) > 0.02 || std::abs(ana - expected) > 0.02)
    fail(o, "diagonal " + fmt(emp) + " vs " + fmt(expected));
  if (o.pass) o.detail = "max |diff| " + fmt(worst) + ", diagonal " + fmt(emp);
  return o;
}

// 4. Cones and growth agree for (X, X^(p)) and (X, permuted X).
Outcome invariance() {
  Outcome o;
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> coord(0, 3);
  double worst_analytic = 0, worst_empirical = 0;
  int pairs = 0;
  while (pairs < 20) {
    std::vector<ExponentVector> xs;
    const bool coplanar = pairs % 2 == 0;
    for (int j = 0; j < 3; ++j) {
      ExponentVector v(2);
      if (coplanar) {
        v[0] = coord(rng);
        v[1] = 3 - v[0];
      } else {
        do {
          v[0] = coord(rng);
          v[1] = coord(rng);
        } while (v.is_zero());
      }
      xs.push_back(v);
    }
    const auto data = DefiningData::from_vectors(xs);
    if (data.dimension() != 2) continue;
    std::vector<ExponentVector> ys;
    if (pairs < 10) {
      ys = iterate_sums(xs, 2);
    } else {
      ys = xs;
      std::shuffle(ys.begin(), ys.end(), rng);
    }
    const auto other = DefiningData::from_vectors(ys);
    ++pairs;
    if (!cone_equal(data.cone(), other.cone())) fail(o, "cones differ");
    const auto dirs = direction_sweep(data, 3);
    const auto eta = coplanar_functional(data.vectors());
    const GammaOptions g{120, 12};
    const auto t1 = build_multiplicity(data, gamma_table_bound(data, dirs, g.k_max));
    const auto t2 = build_multiplicity(other, gamma_table_bound(other, dirs, g.k_max));
    for (const auto& th : dirs) {
      if (eta.present()) {
        const double d = std::abs(analytic_gamma(data, th) - analytic_gamma(other, th));
        worst_analytic = std::max(worst_analytic, d);
        if (d > 1e-8) fail(o, "analytic difference " + fmt(d));
      }
      const double d = std::abs(estimate_gamma(t1, th, g).gamma_hat - estimate_gamma(t2, th, g).gamma_hat);
      worst_empirical = std::max(worst_empirical, d);
      if (d > 0.05) fail(o, "empirical difference " + fmt(d));
    }
  }
  if (o.pass) o.detail = "analytic " + fmt(worst_analytic) + ", empirical " + fmt(worst_empirical);
  return o;
}

// 5. Decisions on the worked examples.
Outcome decisions() {
  Outcome o;
  const auto special = decide(lambda({5, 1}), lambda({3, 2}));
  if (special.result != Result::Equivalent) fail(o, "lambda^5,lambda vs lambda^3,lambda^2: " + special.reason);
  const auto counting = decide(build_system(RatioList::from_monomials({"l1", "l2"}, {{1, 0}, {1, 0}, {0, 1}})),
                               build_system(RatioList::from_monomials({"l1", "l2"}, {{1, 0}, {0, 1}, {0, 1}})));
  if (counting.result != Result::NotEquivalent) fail(o, "axis family: " + counting.reason);
  const auto halves = numeric({Rational(1, 2), Rational(1, 2)});
  const auto square = iterate(halves, 2);
  const auto iter = decide(halves, square);
  if (iter.result != Result::Equivalent || !iter.certificate || iter.certificate->p != 2 || iter.certificate->q != 1)
    fail(o, "(1/2,1/2) vs its square: " + iter.reason);
  if (!verify_certificate(halves, square, iter)) fail(o, "certificate does not re-verify");
  if (o.pass) o.detail = special.reason + ", " + counting.reason + ", (p,q)=(2,1)";
  return o;
}

// 6. One-dimensional Frobenius numbers.
Outcome frobenius_1d() {
  Outcome o;
  for (auto [a, b, g] : {std::tuple{3, 5, 7}, std::tuple{3, 7, 11}}) {
    const std::int64_t dp = frobenius_number_1d({a, b});
    const std::int64_t search = oracle::frobenius_by_search({a, b}, 200);
    if (dp != g || search != g) fail(o, "g(" + std::to_string(a) + "," + std::to_string(b) + ")=" + std::to_string(dp));
  }
  if (o.pass) o.detail = "g(3,5)=7, g(3,7)=11";
  return o;
}

// 7. Cut-set, band inequality (margin 1e-9) and covering radius (10% slack).
Outcome cut_sets() {
  Outcome o;
  const auto golden = numeric({Rational(1, 2), Rational(1, 4)});
  const auto c = cut_set(golden, Threshold::exact(Rational(1, 4)));
  std::vector<std::string> words;
  for (const auto& w : c.words) words.push_back(word_to_string(w, 2));
  if (words != std::vector<std::string>{"11", "12", "2"}) fail(o, "cut-set at t=1/4");
  std::ostringstream radii;
  for (const auto& sys : {golden, numeric({Rational(1, 2), Rational(1, 3)})}) {
    const auto alpha = real_alpha(sys);
    double log_min = 0;
    for (const auto& r : sys.ratios.ratios) log_min = std::min(log_min, std::log(to_double(r.rational())));
    double running = 0;
    radii << (radii.tellp() > 0 ? "; " : "") << "s=" << sys.rank() << ":";
    for (int k : {5, 10, 20, 40}) {
      for (const auto& b : a_k_set(sys, Rational(k)).points) {
        const double l = real_level(alpha, b).convert_to<double>();
        if (l < k - 1e-9 || l >= k - log_min + 1e-9) fail(o, "band violated at k=" + std::to_string(k));
      }
      const double r = covering_radius(sys, Rational(k));
      radii << " " << fmt(r);
      if (running > 0 && r > 1.1 * running) fail(o, "covering radius grew at k=" + std::to_string(k));
      running = std::max(running, r);
    }
  }
  if (o.pass) o.detail = "radii " + radii.str();
  return o;
}

// 8. Matchability of the equivalent pairs for t = exp(-k), k = 3..12, M0 <= 16.
Outcome matchable_probe() {
  Outcome o;
  const std::vector<std::pair<ContractionSystem, ContractionSystem>> pairs{
      {lambda({5, 1}), lambda({3, 2})},
      {numeric({Rational(1, 2), Rational(1, 2)}), iterate(numeric({Rational(1, 2), Rational(1, 2)}), 2)}};
  std::int64_t largest = 0;
  for (const auto& [e, f] : pairs) {
    const auto common = common_basis(e, f);
    for (int k = 3; k <= 12; ++k) {
      const auto rep = matchable_search(common.first, common.second, Threshold::exp_neg(Rational(k)), 16);
      if (!rep.feasible) fail(o, "infeasible at k=" + std::to_string(k));
      largest = std::max(largest, rep.m0);
    }
  }
  if (o.pass) o.detail = "largest M0 " + std::to_string(largest);
  return o;
}

// 9. Ratio exponent at K = 40, 80, 160 (levels >= K/2); consecutive values within 20%.
Outcome ratio_boundedness() {
  Outcome o;
  const auto data = DefiningData::from_vectors({{1, 0}, {0, 1}});
  std::vector<double> cs;
  for (std::int64_t k : {40, 80, 160}) cs.push_back(ratio_exponent(build_multiplicity(data, k), 3, k / 2));
  for (std::size_t i = 0; i + 1 < cs.size(); ++i)
    if (std::abs(cs[i + 1] - cs[i]) > 0.2 * cs[i]) fail(o, "exponent jumped from " + fmt(cs[i]) + " to " + fmt(cs[i + 1]));
  o.detail = (o.pass ? "" : o.detail + "; ") + "c = " + fmt(cs[0]) + ", " + fmt(cs[1]) + ", " + fmt(cs[2]);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Check>> criteria{
      {"multiplicity exactness", multiplicity_exactness},
      {"binomial oracle", binomial_oracle},
      {"gamma agreement", gamma_agreement},
      {"growth invariance", invariance},
      {"decision results", decisions},
      {"frobenius 1-D", frobenius_1d},
      {"cut-set and band", cut_sets},
      {"matchable probe", matchable_probe},
      {"ratio boundedness", ratio_boundedness},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("[%s] criterion %zu: %s (%s; %.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
