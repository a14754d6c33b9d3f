#include "permbound/symgroup.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

namespace permbound {
namespace {

GroupFunction random_function(const SymmetricGroup& group, std::mt19937_64& rng,
                              double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  GroupFunction g{group.degree(), std::vector<double>(group.order())};
  for (auto& v : g.values) v = u(rng);
  return g;
}

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.1, 2.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

double max_abs(const GroupFunction& g) {
  double m = 0.0;
  for (double v : g.values) m = std::max(m, std::abs(v));
  return m;
}

TEST(PermutationTest, LehmerRoundTrip) {
  for (std::size_t n = 1; n <= 6; ++n) {
    std::size_t order = 1;
    for (std::size_t k = 2; k <= n; ++k) order *= k;
    for (std::size_t r = 0; r < order; ++r) EXPECT_EQ(lehmer_rank(lehmer_unrank(n, r)), r);
  }
  EXPECT_EQ(lehmer_rank(Permutation::identity(4)), 0u);
  EXPECT_EQ(lehmer_unrank(3, 5), Permutation({2, 1, 0}));
  EXPECT_THROW(Permutation({0, 0, 1}), std::invalid_argument);
}

TEST(PermutationTest, CompositionAndTransposition) {
  const Permutation t = Permutation::transposition(4, 1, 3);
  EXPECT_EQ(t * t, Permutation::identity(4));
  const Permutation a({1, 2, 0});
  const Permutation b({0, 2, 1});
  EXPECT_EQ(a * b, Permutation({1, 0, 2}));
}

TEST(SymmetricGroupTest, TablesAreConsistent) {
  const SymmetricGroup group(4);
  EXPECT_EQ(group.order(), 24u);
  EXPECT_EQ(group.pair_count(), 6u);
  for (std::size_t r = 0; r < group.order(); ++r) {
    const Permutation sigma = lehmer_unrank(4, r);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) {
        const std::size_t target = group.times_transposition(r, group.pair_index(i, j));
        EXPECT_EQ(lehmer_unrank(4, target), sigma * Permutation::transposition(4, i, j));
      }
  }
  EXPECT_THROW(SymmetricGroup(7), std::invalid_argument);
  EXPECT_EQ(SymmetricGroup(7, true).order(), 5040u);
}

TEST(IntegrateTest, Examples) {
  const SymmetricGroup group(3);
  EXPECT_NEAR(integrate(constant_function(group, 2.5)), 2.5, 1e-15);
  const std::vector<double> f{1.0, 4.0, -2.0};
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(integrate(lift(group, f, j)), 1.0, 1e-15);
  GroupFunction indicator{3, std::vector<double>(6, 0.0)};
  indicator.values[lehmer_rank(Permutation::identity(3))] = 1.0;
  EXPECT_NEAR(integrate(indicator), 1.0 / 6.0, 1e-15);
}

TEST(LiftProjectTest, RoundTrip) {
  const SymmetricGroup group(5);
  std::mt19937_64 rng(3);
  const auto f = random_vector(5, rng);
  for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(project(group, lift(group, f, j), j), f);
}

TEST(ApplyDTest, Examples) {
  const SymmetricGroup group(4);
  EXPECT_EQ(max_abs(apply_D(group, 0, 1, constant_function(group, 3.0))), 0.0);
  EXPECT_THROW(apply_D(group, 2, 2, constant_function(group, 1.0)), std::invalid_argument);
  std::mt19937_64 rng(4);
  const auto f = random_vector(4, rng);
  const GroupFunction g = lift(group, f, 1);
  EXPECT_EQ(max_abs(apply_D(group, 0, 2, g)), 0.0);
  EXPECT_EQ(max_abs(apply_D(group, 3, 2, g)), 0.0);
  EXPECT_GT(max_abs(apply_D(group, 1, 2, g)), 0.0);
}

TEST(OperatorSuite, AlgebraicIdentities) {
  std::mt19937_64 rng(12);
  for (std::size_t n = 3; n <= 5; ++n) {
    const SymmetricGroup group(n);
    for (int trial = 0; trial < 5; ++trial) {
      const GroupFunction g = random_function(group, rng);
      const GroupFunction h = random_function(group, rng);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          const GroupFunction dg = apply_D(group, i, j, g);
          const GroupFunction ddg = apply_D(group, i, j, dg);
          for (std::size_t s = 0; s < group.order(); ++s)
            EXPECT_NEAR(ddg.values[s], -2.0 * dg.values[s], 1e-12);
          EXPECT_NEAR(integrate(dg), 0.0, 1e-12);
          EXPECT_NEAR(inner(dg, h), inner(g, apply_D(group, i, j, h)), 1e-12);
          EXPECT_LE(inner(g, dg), 1e-14);
        }

      // Delta g^2 = 2 (Delta g) g + 2 |grad g|^2.
      const GroupFunction lhs = laplacian(group, pointwise_product(g, g));
      const GroupFunction lg = laplacian(group, g);
      const GroupFunction gs = grad_sq(group, g);
      for (std::size_t s = 0; s < group.order(); ++s) {
        EXPECT_NEAR(lhs.values[s], 2 * lg.values[s] * g.values[s] + 2 * gs.values[s], 1e-11);
        EXPECT_GE(gs.values[s], 0.0);
      }

      // D_ij (g h) = (D_ij g) h when h = f o pi_k, k outside {i, j}.
      const auto f = random_vector(n, rng);
      const GroupFunction hk = lift(group, f, 2);
      const GroupFunction prod = apply_D(group, 0, 1, pointwise_product(g, hk));
      const GroupFunction rhs = pointwise_product(apply_D(group, 0, 1, g), hk);
      for (std::size_t s = 0; s < group.order(); ++s)
        EXPECT_NEAR(prod.values[s], rhs.values[s], 1e-12);
    }
  }
}

TEST(LaplacianTest, ConstantsAndSign) {
  const SymmetricGroup group(4);
  EXPECT_EQ(max_abs(laplacian(group, constant_function(group, 7.0))), 0.0);
  EXPECT_EQ(max_abs(grad_sq(group, constant_function(group, 7.0))), 0.0);
  std::mt19937_64 rng(8);
  const GroupFunction g = random_function(group, rng);
  EXPECT_LE(inner(g, laplacian(group, g)), 0.0);
}

TEST(HeatSemigroupTest, Examples) {
  const SymmetricGroup group(4);
  std::mt19937_64 rng(6);
  const GroupFunction g = random_function(group, rng, 0.0, 1.0);
  EXPECT_EQ(heat_semigroup(group, g, 0.0).values, g.values);
  const GroupFunction c = constant_function(group, 1.5);
  for (double v : heat_semigroup(group, c, 2.0).values) EXPECT_NEAR(v, 1.5, 1e-13);
  for (double t : {0.1, 1.0, 10.0}) {
    const GroupFunction e = heat_semigroup(group, g, t);
    EXPECT_NEAR(integrate(e), integrate(g), 1e-12);
    for (double v : e.values) EXPECT_GE(v, 0.0);
  }
  for (double v : heat_semigroup(group, g, 10.0).values) EXPECT_NEAR(v, integrate(g), 1e-12);
  EXPECT_THROW(heat_semigroup(group, g, -0.1), std::invalid_argument);
}

TEST(HeatSemigroupTest, SemigroupPropertyAndGenerator) {
  const SymmetricGroup group(4);
  std::mt19937_64 rng(9);
  const GroupFunction g = random_function(group, rng);
  const GroupFunction once = heat_semigroup(group, g, 0.7);
  const GroupFunction twice = heat_semigroup(group, heat_semigroup(group, g, 0.3), 0.4);
  for (std::size_t s = 0; s < group.order(); ++s)
    EXPECT_NEAR(once.values[s], twice.values[s], 1e-12);

  const double h = 1e-6;
  const GroupFunction step = heat_semigroup(group, g, h);
  const GroupFunction lg = laplacian(group, g);
  for (std::size_t s = 0; s < group.order(); ++s)
    EXPECT_NEAR((step.values[s] - g.values[s]) / h, lg.values[s], 1e-4);
}

TEST(HeatSemigroupTest, ProjectionClosure) {
  std::mt19937_64 rng(10);
  for (std::size_t n = 3; n <= 5; ++n) {
    const SymmetricGroup group(n);
    const auto f = random_vector(n, rng);
    for (std::size_t j = 0; j < n; ++j) {
      GroupFunction g = lift(group, f, j);
      for (auto& v : g.values) v = std::pow(v, 1.5);
      const GroupFunction e = heat_semigroup(group, g, 0.2);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
          if (k == j || l == j) continue;
          EXPECT_LE(max_abs(apply_D(group, k, l, e)), 1e-12);
        }
    }
  }
}

}  // namespace
}  // namespace permbound
