#include "permbound/permanent.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "permbound/matrix.hpp"

namespace permbound {
namespace {

double rel_err(Complex a, Complex b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

TEST(PermNaiveTest, KnownValues) {
  EXPECT_EQ(perm_naive(ColumnMatrix::identity(4)).value, Complex(1.0));
  EXPECT_EQ(perm_naive(ColumnMatrix::ones(3, 3)).value, Complex(6.0));
  // 1 + x^3 + y^3 + 3xy at (0.5, 0.25).
  EXPECT_NEAR(perm_naive(make_circulant3(0.5, 0.25)).value.real(), 1.515625, 1e-15);
  EXPECT_THROW(perm_naive(ColumnMatrix::identity(10)), std::invalid_argument);
}

TEST(PermNaiveTest, SingleEntry) {
  const ColumnMatrix one(1, 1, {Complex(2.0, -3.0)});
  EXPECT_EQ(perm_naive(one).value, Complex(2.0, -3.0));
  EXPECT_EQ(perm_fast(one).value, Complex(2.0, -3.0));
}

TEST(PermFastTest, KnownValues) {
  EXPECT_NEAR(std::abs(perm_fast(ColumnMatrix::identity(6)).value - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(perm_fast(ColumnMatrix::ones(6, 6)).value.real(), 720.0, 1e-9);
  EXPECT_THROW(perm_fast(ColumnMatrix::identity(6), 5), std::invalid_argument);
}

TEST(PermFastTest, FrozenComplexValue) {
  // Brute-force reference from tests/oracles/generate_oracles.py.
  const ColumnMatrix a(4, 4, {{1.0, 0.5}, {-0.3, 0.0}, {0.2, -1.0}, {0.7, 0.1},
                              {0.0, 1.0}, {1.5, 0.0}, {-0.4, 0.3}, {0.1, 0.0},
                              {0.9, -0.2}, {0.3, 0.3}, {1.1, 0.0}, {-0.6, 0.8},
                              {-0.5, 0.0}, {0.2, 0.6}, {0.4, -0.4}, {1.0, 0.0}});
  const Complex expected(0.13059999999999972, -1.0692999999999997);
  EXPECT_LT(rel_err(perm_fast(a).value, expected), 1e-12);
  EXPECT_LT(rel_err(perm_naive(a).value, expected), 1e-12);
}

TEST(PermFastTest, AgreesWithOracleSeven) {
  const auto m = random_matrix(7, 7, RandomMode::kComplexGaussian, RngSeed{3});
  EXPECT_LT(rel_err(perm_fast(m).value, perm_naive(m).value), 1e-10);
}

TEST(PermFastTest, TransposeSymmetryAndMultilinearity) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t n = 2 + seed % 6;
    const auto m = random_matrix(n, n, RandomMode::kComplexGaussian, RngSeed{seed});
    EXPECT_LT(rel_err(perm_fast(m.transpose()).value, perm_fast(m).value), 1e-10);

    const auto u = random_matrix(n, 1, RandomMode::kComplexGaussian, RngSeed{seed + 100}).column(0);
    const auto v = random_matrix(n, 1, RandomMode::kComplexGaussian, RngSeed{seed + 200}).column(0);
    const Complex a(0.7, -1.2);
    const Complex b(-0.4, 0.3);
    const std::size_t k = seed % n;
    ColumnMatrix mu = m, mv = m, mix = m;
    mu.set_column(k, u);
    mv.set_column(k, v);
    ComplexVector w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = a * u[j] + b * v[j];
    mix.set_column(k, w);
    const Complex expected = a * perm_fast(mu).value + b * perm_fast(mv).value;
    EXPECT_LT(std::abs(perm_fast(mix).value - expected),
              1e-10 * (std::abs(a * perm_fast(mu).value) + std::abs(b * perm_fast(mv).value)));
  }
}

TEST(PermFastTest, TriangleBoundAgainstModuli) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto m = random_matrix(5, 5, RandomMode::kComplexGaussian, RngSeed{seed});
    EXPECT_LE(std::abs(perm_fast(m).value), perm_fast(m.abs()).value.real() * (1 + 1e-12));
  }
}

TEST(MinorGradientTest, TwoByTwo) {
  const ColumnMatrix m(2, 2, {2.0, 3.0, 5.0, 7.0});
  const ColumnMatrix g = perm_minor_gradient(m);
  EXPECT_EQ(g, ColumnMatrix(2, 2, {7.0, 5.0, 3.0, 2.0}));
}

TEST(MinorGradientTest, Identity) {
  const ColumnMatrix g = perm_minor_gradient(ColumnMatrix::identity(3));
  EXPECT_NEAR(std::abs(g(0, 0) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(g(0, 1)), 0.0, 1e-14);
}

TEST(MinorGradientTest, ExpansionAndFiniteDifferences) {
  const auto m = random_matrix(5, 5, RandomMode::kComplexGaussian, RngSeed{21});
  const ColumnMatrix g = perm_minor_gradient(m);
  const Complex perm = perm_fast(m).value;
  for (std::size_t j = 0; j < 5; ++j) {
    Complex row_sum{};
    for (std::size_t k = 0; k < 5; ++k) row_sum += m(j, k) * g(j, k);
    EXPECT_LT(rel_err(row_sum, perm), 1e-10);
  }
  const double eps = 1e-6;
  for (std::size_t j = 0; j < 5; ++j)
    for (std::size_t k = 0; k < 5; ++k) {
      ColumnMatrix bumped = m;
      bumped(j, k) += eps;
      const Complex fd = (perm_fast(bumped).value - perm) / eps;
      EXPECT_LT(std::abs(fd - g(j, k)), 1e-5);
    }
}

TEST(SubpermTest, SpecialCases) {
  const ColumnMatrix single = ColumnMatrix::from_rows({{3.0, 4.0}});
  EXPECT_NEAR(subperm_quadratic(single).value, 5.0, 1e-14);
  EXPECT_NEAR(subperm_quadratic(ColumnMatrix::ones(2, 2)).value, 2.0, 1e-14);
  const ColumnMatrix e12 = ColumnMatrix::from_rows({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}});
  EXPECT_NEAR(subperm_quadratic(e12).value, 1.0, 1e-14);
  EXPECT_NEAR(subperm_p(ColumnMatrix::ones(2, 2), PExponent(1.0)).value, 2.0, 1e-14);
  EXPECT_NEAR(subperm_p(ColumnMatrix::ones(3, 2), PExponent(1.0)).value, 6.0, 1e-13);
}

TEST(SubpermTest, FrozenBruteForceValues) {
  const ColumnMatrix rows24 = ColumnMatrix::from_rows({{1.0, 2.0, 0.0, 3.0}, {0.5, 1.0, 4.0, 2.0}});
  EXPECT_NEAR(subperm_quadratic(rows24).value, 17.00735135169495, 1e-12);
  EXPECT_NEAR(subperm_p(rows24, PExponent(1.5)).value, 21.55773436077226, 1e-12);
  const ColumnMatrix rows35 = ColumnMatrix::from_rows(
      {{1.0, 2.0, 0.5, 3.0, 1.0}, {0.5, 1.0, 4.0, 2.0, 0.0}, {2.0, 0.1, 1.0, 1.0, 3.0}});
  EXPECT_NEAR(subperm_quadratic(rows35).value, 77.77384280720608, 1e-11);
  EXPECT_NEAR(subperm_p(rows35, PExponent(1.0)).value, 224.725, 1e-11);
}

TEST(SubpermTest, PTwoMatchesQuadraticAndFullOrderIsPermanent) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rows = random_matrix(4, 2, RandomMode::kNonnegUniform, RngSeed{seed});
    EXPECT_NEAR(subperm_p(rows, PExponent(2.0)).value, subperm_quadratic(rows).value, 1e-12);
    const auto square = random_matrix(4, 4, RandomMode::kComplexGaussian, RngSeed{seed});
    EXPECT_NEAR(subperm_quadratic(square).value, perm_fast(square.abs()).value.real(), 1e-10);
  }
}

}  // namespace
}  // namespace permbound
