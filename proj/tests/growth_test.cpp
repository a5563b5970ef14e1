#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "frolip/growth.hpp"
#include "oracles.hpp"

using namespace frolip;

namespace {

std::vector<Rational> q(std::initializer_list<Rational> xs) { return std::vector<Rational>(xs); }

// Coplanar data: nonnegative points with coordinate sum k.
std::vector<ExponentVector> random_coplanar(std::mt19937& rng, std::size_t s, std::size_t m, int k) {
  std::vector<ExponentVector> xs;
  while (xs.size() < m) {
    ExponentVector v(s);
    int left = k;
    for (std::size_t i = 0; i + 1 < s; ++i) {
      std::uniform_int_distribution<int> part(0, left);
      v[i] = part(rng);
      left -= static_cast<int>(v[i]);
    }
    v[s - 1] = left;
    xs.push_back(v);
  }
  return xs;
}

// A strictly positive convex combination of the vectors.
std::vector<Rational> interior_target(std::mt19937& rng, const std::vector<ExponentVector>& xs) {
  std::uniform_int_distribution<int> w(1, 5);
  std::vector<Rational> v(xs.front().size(), Rational(0));
  Rational total = 0;
  for (const auto& x : xs) {
    const int weight = w(rng);
    total += weight;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += Rational(weight * x[i]);
  }
  for (auto& c : v) c /= total;
  return v;
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

}  // namespace

TEST(MaxEntropy, UniformOnSymmetricTarget) {
  auto sol = max_entropy({{1, 0}, {0, 1}}, q({Rational(1, 2), Rational(1, 2)}));
  EXPECT_NEAR(sol.p[0], 0.5, 1e-12);
  EXPECT_NEAR(sol.p[1], 0.5, 1e-12);
  EXPECT_NEAR(sol.value, std::log(2.0), 1e-12);
  EXPECT_FALSE(sol.stalled);
}

TEST(MaxEntropy, ThreePointSegmentMatchesGridSearch) {
  auto sol = max_entropy({{2, 0}, {1, 1}, {0, 2}}, q({1, 1}));
  // feasible set p = (t, 1-2t, t); scan t on a 1e-6 grid
  double best = -1, best_t = 0;
  for (int i = 0; i <= 500000; ++i) {
    const double t = i * 1e-6;
    const double h = oracle::entropy({t, 1 - 2 * t, t});
    if (h > best) best = h, best_t = t;
  }
  EXPECT_NEAR(sol.value, best, 1e-9);
  EXPECT_NEAR(sol.p[0], best_t, 1e-5);
  EXPECT_NEAR(sol.p[2], best_t, 1e-5);
  EXPECT_NEAR(sol.value, std::log(3.0), 1e-12);
}

TEST(MaxEntropy, VertexTarget) {
  auto sol = max_entropy({{1, 0}, {0, 1}}, q({1, 0}));
  EXPECT_EQ(sol.active_support, (std::vector<std::size_t>{0}));
  EXPECT_DOUBLE_EQ(sol.p[0], 1.0);
  EXPECT_DOUBLE_EQ(sol.p[1], 0.0);
  EXPECT_DOUBLE_EQ(sol.value, 0.0);
}

TEST(MaxEntropy, FaceWithRepeatedVector) {
  // target on the edge (0,0)-(2,0) of the triangle; the repeated (2,0) shares its mass equally
  auto sol = max_entropy({{0, 0}, {2, 0}, {0, 2}, {2, 0}}, q({1, 0}));
  EXPECT_EQ(sol.active_support, (std::vector<std::size_t>{0, 1, 3}));
  EXPECT_NEAR(sol.p[0], 0.5, 1e-12);
  EXPECT_NEAR(sol.p[1], 0.25, 1e-12);
  EXPECT_NEAR(sol.p[3], 0.25, 1e-12);
  EXPECT_NEAR(sol.value, 1.5 * std::log(2.0), 1e-12);
  // collinear points: (3/2,1/2) is interior to the segment, so all four are used
  auto line = max_entropy({{2, 0}, {1, 1}, {0, 2}, {1, 1}}, q({Rational(3, 2), Rational(1, 2)}));
  EXPECT_EQ(line.active_support.size(), 4u);
  EXPECT_NEAR(line.value, line.dual_value, 1e-10);
}

TEST(MaxEntropy, RejectsTargetsOutsideHull) {
  EXPECT_THROW(max_entropy({{1, 0}, {0, 1}}, q({2, 2})), DomainError);
  EXPECT_THROW(max_entropy({{1, 0}, {0, 1}}, q({-1, 2})), DomainError);
  EXPECT_THROW(max_entropy({{1, 0}, {0, 1}}, std::vector<double>{0.7, 0.7}), DomainError);
  try {
    max_entropy({{1, 0}, {0, 1}}, q({-1, 2}));
  } catch (const DomainError& e) {
    EXPECT_EQ(e.tag(), "TargetOutsideHull");
  }
}

TEST(MaxEntropy, DualityGapAndMomentsOnRandomInteriorTargets) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t s = 2 + trial % 2;
    auto xs = random_coplanar(rng, s, 3 + trial % 3, 2 + trial % 3);
    auto v = interior_target(rng, xs);
    auto sol = max_entropy(xs, v);
    double total = 0;
    for (double p : sol.p) {
      EXPECT_GE(p, 0);
      total += p;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_LE(sol.residual, 1e-10);
    EXPECT_NEAR(sol.value, sol.dual_value, 1e-8);
    EXPECT_FALSE(sol.stalled);
  }
}

TEST(MaxEntropy, NoFeasiblePerturbationDoesBetter) {
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> coef(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    auto xs = random_coplanar(rng, 2, 5, 3);
    auto v = interior_target(rng, xs);
    auto sol = max_entropy(xs, v);
    // null space of the moment and normalization rows
    Eigen::MatrixXd a(3, static_cast<Eigen::Index>(xs.size()));
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const auto c = static_cast<Eigen::Index>(j);
      a(0, c) = static_cast<double>(xs[j][0]);
      a(1, c) = static_cast<double>(xs[j][1]);
      a(2, c) = 1;
    }
    const Eigen::MatrixXd null = Eigen::FullPivLU<Eigen::MatrixXd>(a).kernel();
    for (int probe = 0; probe < 200; ++probe) {
      Eigen::VectorXd dir = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(xs.size()));
      for (Eigen::Index k = 0; k < null.cols(); ++k) dir += coef(rng) * null.col(k);
      std::vector<double> p = sol.p;
      bool feasible = true;
      for (std::size_t j = 0; j < p.size(); ++j) {
        p[j] += 0.1 * dir[static_cast<Eigen::Index>(j)];
        feasible = feasible && p[j] >= 0;
      }
      if (feasible) {
        EXPECT_LE(oracle::entropy(p), sol.value + 1e-9);
      }
    }
  }
}

TEST(AnalyticGamma, Examples) {
  const double r = 1 / std::sqrt(2.0);
  auto quadrant = DefiningData::from_vectors({{1, 0}, {0, 1}});
  EXPECT_NEAR(analytic_gamma(quadrant, {r, r}), std::sqrt(2.0) * std::log(2.0), 1e-10);
  EXPECT_NEAR(analytic_gamma(quadrant, {1, 0}), 0.0, 1e-12);
  auto cop = DefiningData::from_vectors({{2, 0}, {1, 1}, {0, 2}});
  EXPECT_EQ(*coplanar_functional(cop.vectors()).eta, q({Rational(1, 2), Rational(1, 2)}));
  EXPECT_NEAR(analytic_gamma(cop, {r, r}), std::log(3.0) / std::sqrt(2.0), 1e-10);
}

TEST(AnalyticGamma, Errors) {
  auto one = DefiningData::from_vectors({{5}, {1}});
  try {
    analytic_gamma(one, {1});
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.tag(), "NotCoplanar");
  }
  auto quadrant = DefiningData::from_vectors({{1, 0}, {0, 1}});
  try {
    analytic_gamma(quadrant, {-1, 2});
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.tag(), "DirectionOutsideCone");
  }
}

TEST(AnalyticGamma, PositivelyHomogeneous) {
  const std::vector<ExponentVector> xs{{2, 0}, {1, 1}, {0, 2}};
  const auto eta = coplanar_functional(xs);
  for (double angle : {0.2, 0.5, 0.9, 1.3}) {
    const std::vector<double> x{std::cos(angle), std::sin(angle)};
    const double g = analytic_gamma_unnormalized(xs, eta, x);
    for (double c : {0.5, 3.0, 17.0})
      EXPECT_NEAR(analytic_gamma_unnormalized(xs, eta, {c * x[0], c * x[1]}) / c, g, 1e-9);
  }
}

TEST(AnalyticGamma, IterationInvariant) {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 6; ++trial) {
    auto xs = random_coplanar(rng, 2, 3, 1 + trial % 3);
    auto data = DefiningData::from_vectors(xs);
    if (data.dimension() != 2) continue;
    const int p = 2 + trial % 2;
    auto iter = DefiningData::from_vectors(iterate_sums(xs, p));
    const auto eta = coplanar_functional(data.vectors());
    const auto eta_p = coplanar_functional(iter.vectors());
    ASSERT_TRUE(eta_p.present());
    for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ((*eta_p.eta)[i] * p, (*eta.eta)[i]);
    // sweep directions strictly inside the cone
    double amin = 10, amax = -10;
    for (const auto& v : data.vectors()) {
      const double a = std::atan2(static_cast<double>(v[1]), static_cast<double>(v[0]));
      amin = std::min(amin, a);
      amax = std::max(amax, a);
    }
    for (int i = 1; i <= 5; ++i) {
      const double a = amin + i * (amax - amin) / 6;
      const std::vector<double> th{std::cos(a), std::sin(a)};
      EXPECT_NEAR(analytic_gamma(data, eta, th), analytic_gamma(iter, eta_p, th), 1e-8);
    }
  }
}
