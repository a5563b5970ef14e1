#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "frolip/frobenius.hpp"
#include "oracles.hpp"

using namespace frolip;

namespace {

DefiningData quadrant() { return DefiningData::from_vectors({{1, 0}, {0, 1}}); }

// Random data with coordinates in [-3,3] lying in an open half-space.
DefiningData random_instance(std::mt19937& rng, std::size_t s, std::size_t m) {
  std::uniform_int_distribution<int> coord(-3, 3);
  for (;;) {
    std::vector<ExponentVector> xs;
    for (std::size_t j = 0; j < m; ++j) {
      ExponentVector v(s);
      do {
        for (std::size_t i = 0; i < s; ++i) v[i] = coord(rng);
      } while (v.is_zero());
      xs.push_back(v);
    }
    try {
      return DefiningData::from_vectors(xs);
    } catch (const DomainError&) {
    }
  }
}

std::vector<std::int64_t> alpha_ints(const DefiningData& d) {
  std::vector<std::int64_t> a;
  for (const auto& x : d.alpha()) a.push_back(to_int64(numerator_of(x)));
  return a;
}

}  // namespace

TEST(DefiningData, CertificateSeparatesVectors) {
  auto d = DefiningData::from_vectors({{2, -1}, {-1, 2}, {1, 1}});
  for (const auto& v : d.vectors()) EXPECT_GT(d.level(v), 0);
  EXPECT_THROW(DefiningData::from_vectors({{1, 0}, {-1, 0}}), DomainError);
}

TEST(DefiningData, RankDeficientInputIsRewritten) {
  auto d = DefiningData::from_vectors({{1, 1}, {2, 2}});
  EXPECT_EQ(d.dimension(), 1u);
  EXPECT_EQ(d.vectors(), (std::vector<ExponentVector>{{1}, {2}}));
  EXPECT_FALSE(d.embedding().empty());
}

TEST(BuildMultiplicity, Examples) {
  auto t = build_multiplicity(quadrant(), 10);
  EXPECT_EQ(t.count({3, 2}), 10);
  EXPECT_EQ(t.count({0, 0}), 1);
  auto one = build_multiplicity(DefiningData::from_vectors({{5}, {1}}), 10);
  EXPECT_EQ(one.count({5}), 2);
  EXPECT_EQ(one.count({0}), 1);
  auto cop = build_multiplicity(DefiningData::from_vectors({{2, 0}, {1, 1}, {0, 2}}), 10);
  EXPECT_EQ(cop.count({2, 2}), 3);
  EXPECT_EQ(cop.count({1, 0}), 0);
}

TEST(BuildMultiplicity, BinomialCounts) {
  auto t = build_multiplicity(quadrant(), 20);
  for (std::int64_t a = 0; a <= 20; ++a)
    for (std::int64_t b = 0; a + b <= 20; ++b)
      EXPECT_EQ(t.count({a, b}), oracle::binomial(static_cast<std::uint64_t>(a + b), static_cast<std::uint64_t>(a)));
}

TEST(BuildMultiplicity, MatchesWordEnumeration) {
  std::mt19937 rng(101);
  std::uniform_int_distribution<std::size_t> dim(1, 3), size(1, 3);
  for (int trial = 0; trial < 30; ++trial) {
    auto d = random_instance(rng, dim(rng), size(rng));
    const std::int64_t bound = 10 * d.min_level();
    auto t = build_multiplicity(d, bound);
    // a word reaching level <= 10 min(X.alpha) has length <= 10
    const auto words = oracle::enumerate_words(d.vectors(), 10);
    std::size_t checked = 0;
    for (const auto& [z, n] : words) {
      if (d.level(z) > bound) continue;
      EXPECT_EQ(t.count(z), n) << "trial " << trial;
      ++checked;
    }
    EXPECT_EQ(checked, t.size());
  }
}

TEST(BuildMultiplicity, PermutationInvariant) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto d = random_instance(rng, 2, 4);
    auto xs = d.vectors();
    std::shuffle(xs.begin(), xs.end(), rng);
    auto e = DefiningData::from_vectors(xs);
    auto t1 = build_multiplicity(d, 8 * d.min_level());
    auto t2 = build_multiplicity(e, 8 * e.min_level());
    std::size_t shared = 0;
    for (std::size_t k = 0; k < t1.size(); ++k)
      if (t2.covers(t1.points()[k])) {
        EXPECT_EQ(t2.count(t1.points()[k]), t1.counts()[k]);
        ++shared;
      }
    EXPECT_GT(shared, 1u);
  }
}

TEST(BuildMultiplicity, IterationCountsBlockedWords) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    auto d = random_instance(rng, 2, 2);
    const int p = 2 + trial % 2;
    std::vector<ExponentVector> iterated{ExponentVector(2)};
    for (int r = 0; r < p; ++r) {
      std::vector<ExponentVector> next;
      for (const auto& w : iterated)
        for (const auto& x : d.vectors()) next.push_back(w + x);
      iterated = next;
    }
    auto e = DefiningData::from_vectors(iterated);
    if (e.dimension() != 2) continue;
    const std::int64_t bound = 6 * e.min_level();
    auto t = build_multiplicity(e, bound);
    BigInt total = 0;
    for (const auto& c : t.counts()) total += c;
    EXPECT_EQ(total, oracle::words_with_length_multiple(d.vectors(), alpha_ints(e), p, bound));
  }
}

TEST(BuildMultiplicity, BudgetAndBoundErrors) {
  EXPECT_THROW(build_multiplicity(quadrant(), 100, TableOptions{100}), ResourceLimit);
  EXPECT_THROW(build_multiplicity(quadrant(), 0), DomainError);
  auto t = build_multiplicity(quadrant(), 5);
  EXPECT_THROW(t.count({3, 3}), DomainError);
}

TEST(MultiplicityAt, Examples) {
  auto t = build_multiplicity(quadrant(), 30);
  EXPECT_EQ(multiplicity_at(t, ExponentVector{2, 2}), 6);
  EXPECT_EQ(multiplicity_at(t, std::vector<double>{1.4, 0.6}), 2);
  auto one = build_multiplicity(DefiningData::from_vectors({{5}, {1}}), 30);
  auto near = nearest_semigroup_points(one, {Rational(5, 2)});
  EXPECT_EQ(near.multiplicity, 1);
  EXPECT_EQ(near.ties, (std::vector<ExponentVector>{{2}, {3}}));
  EXPECT_EQ(near.squared_distance, Rational(1, 4));
}

TEST(MultiplicityAt, TieTakesMinimum) {
  auto t = build_multiplicity(quadrant(), 30);
  // (2.5, 1.5) is equidistant from (2,1),(3,1),(2,2),(3,2): counts 3,4,6,10
  auto near = nearest_semigroup_points(t, {Rational(5, 2), Rational(3, 2)});
  EXPECT_EQ(near.ties.size(), 4u);
  EXPECT_EQ(near.multiplicity, 3);
}

TEST(MultiplicityAt, NonSemigroupLatticePoint) {
  auto t = build_multiplicity(DefiningData::from_vectors({{2, 0}, {1, 1}, {0, 2}}), 20);
  // (1,0) is not in the semigroup; nearest points (0,0),(2,0),(1,1) all at distance 1
  auto near = nearest_semigroup_points(t, {Rational(1), Rational(0)});
  EXPECT_EQ(near.squared_distance, 1);
  EXPECT_EQ(near.multiplicity, 1);
}

TEST(MultiplicityAt, Errors) {
  auto t = build_multiplicity(quadrant(), 10);
  try {
    multiplicity_at(t, std::vector<double>{9.5, 0.4});
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.tag(), "QueryOutOfRange");
  }
  EXPECT_THROW(multiplicity_at(t, std::vector<double>{-1, 0}), DomainError);
  EXPECT_THROW(multiplicity_at(t, std::vector<double>{1, 0, 0}), DomainError);
}

TEST(EstimateGamma, DiagonalOfQuadrant) {
  const double r = 1 / std::sqrt(2.0);
  auto g = estimate_gamma(quadrant(), {r, r});
  EXPECT_NEAR(g.gamma_hat, std::sqrt(2.0) * std::log(2.0), 0.02);
  ASSERT_EQ(g.samples.size(), 12u);
  for (std::size_t i = 1; i < g.samples.size(); ++i) EXPECT_LT(g.samples[i - 1].k, g.samples[i].k);
  EXPECT_NEAR(g.samples.back().k, 120, 1e-9);
  EXPECT_GE(g.std_error, 0);
}

TEST(EstimateGamma, BoundaryRayIsFlat) {
  auto g = estimate_gamma(quadrant(), {1, 0});
  EXPECT_NEAR(g.gamma_hat, 0, 1e-12);
}

TEST(EstimateGamma, CoplanarDiagonal) {
  const double r = 1 / std::sqrt(2.0);
  auto g = estimate_gamma(DefiningData::from_vectors({{2, 0}, {1, 1}, {0, 2}}), {r, r});
  EXPECT_NEAR(g.gamma_hat, std::log(3.0) / std::sqrt(2.0), 0.05);
}

TEST(EstimateGamma, RejectsDirectionOutsideCone) {
  try {
    estimate_gamma(quadrant(), {-1, 1});
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.tag(), "DirectionOutsideCone");
  }
}

TEST(EstimateGamma, SharedTableGivesSameResult) {
  const double r = 1 / std::sqrt(2.0);
  auto d = quadrant();
  auto t = build_multiplicity(d, gamma_table_bound(d, {{r, r}, {1, 0}}, 60));
  auto a = estimate_gamma(t, {r, r}, {60, 8});
  auto b = estimate_gamma(d, {r, r}, {60, 8});
  EXPECT_DOUBLE_EQ(a.gamma_hat, b.gamma_hat);
}

TEST(FrobeniusNumber1d, Examples) {
  EXPECT_EQ(frobenius_number_1d({3, 5}), 7);
  EXPECT_EQ(frobenius_number_1d({3, 7}), 11);
  EXPECT_EQ(frobenius_number_1d({1, 4}), -1);
  EXPECT_THROW(frobenius_number_1d({4, 6}), DomainError);
  EXPECT_THROW(frobenius_number_1d({0, 3}), DomainError);
}

TEST(FrobeniusNumber1d, MatchesIndependentSearch) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::int64_t> pick(2, 15);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::int64_t> a{pick(rng), pick(rng)};
    if (trial % 2) a.push_back(pick(rng));
    std::int64_t g = 0;
    for (auto v : a) g = std::gcd(g, v);
    if (g != 1) continue;
    EXPECT_EQ(frobenius_number_1d(a), oracle::frobenius_by_search(a, 300));
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(RelativeDensityRadius, Examples) {
  EXPECT_NEAR(relative_density_radius(quadrant(), 20), std::sqrt(2.0) / 2, 1e-12);
  EXPECT_NEAR(relative_density_radius(DefiningData::from_vectors({{1, 0}, {0, 1}, {1, 1}}), 20),
              std::sqrt(2.0) / 2, 1e-12);
  EXPECT_NEAR(relative_density_radius(DefiningData::from_vectors({{5}, {1}}), 20), 0.5, 1e-12);
}

TEST(RatioExponent, BoundedOnQuadrant) {
  auto t = build_multiplicity(quadrant(), 40);
  // boundary point (0,b) against (3,b): log C(b+3,3) / log(1+b), below 3
  const double c = ratio_exponent(t, 3, 20);
  EXPECT_GT(c, 1.5);
  EXPECT_LT(c, 3.0);
  EXPECT_GE(ratio_exponent(t), c);
}
