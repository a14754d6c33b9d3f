#include "permbound/flow.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "permbound/permanent.hpp"

namespace permbound {
namespace {

ColumnMatrix positive_matrix(std::size_t n, std::uint64_t seed) {
  ColumnMatrix f = random_matrix(n, n, RandomMode::kNonnegUniform, RngSeed{seed});
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) f(j, k) += 0.05;
  return f;
}

// Oracle values: dense scipy expm of the Cayley-graph Laplacian over all of
// S_N (tests/oracles/generate_oracles.py).

TEST(FlowColumnTest, FrozenDenseOracle) {
  const std::vector<double> e1{1.0, 0.0, 0.0, 0.0};
  const std::vector<double> expected{0.5639489914585005, 0.4767814086954805, 0.47678140869548047,
                                     0.4767814086954806};
  for (FlowPath path : {FlowPath::kReduced, FlowPath::kBruteForce}) {
    const auto got = flow_column(e1, 0, 2.0, 0.3, path);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(got[k], expected[k], 1e-12);
  }

  const std::vector<double> g{0.2, 1.0, 0.5, 0.7, 0.1};
  const std::vector<double> expected_g{0.3604234589553551, 0.8391191992478703, 0.5214736382748953,
                                       0.6444534650451281, 0.320344411253548};
  for (FlowPath path : {FlowPath::kReduced, FlowPath::kBruteForce}) {
    const auto got = flow_column(g, 3, 1.5, 0.05, path);
    for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(got[k], expected_g[k], 1e-12);
  }
}

TEST(FlowColumnTest, ReducedAgreesWithBruteForce) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (std::size_t n = 3; n <= 5; ++n) {
    const SymmetricGroup group(n);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> f(n);
      for (auto& v : f) v = u(rng);
      const std::size_t j = trial % n;
      for (double p : {1.0, 1.5, 2.0, 3.0})
        for (double t : {0.01, 0.2, 1.0}) {
          const auto a = flow_column(f, j, p, t, FlowPath::kReduced);
          const auto b = flow_column(group, f, j, p, t);
          for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(a[k], b[k], 1e-9);
        }
    }
  }
}

TEST(FlowColumnTest, EndpointsAndErrors) {
  const std::vector<double> f{0.3, 1.2, 0.0, 2.0};
  EXPECT_EQ(flow_column(f, 1, 1.5, 0.0), f);
  const double p = 1.5;
  const double limit = std::pow((std::pow(0.3, p) + std::pow(1.2, p) + std::pow(2.0, p)) / 4, 1 / p);
  for (double v : flow_column(f, 1, p, 50.0)) EXPECT_NEAR(v, limit, 1e-12);
  const std::vector<double> neg{0.3, -1.0};
  EXPECT_THROW(flow_column(neg, 0, 2.0, 0.1), std::invalid_argument);
  EXPECT_THROW(flow_column(f, 0, 2.0, -0.1), std::invalid_argument);
  EXPECT_THROW(flow_column(f, 0, 0.5, 0.1), std::invalid_argument);
}

TEST(FlowColumnTest, SemigroupProperty) {
  const std::vector<double> f{0.3, 1.2, 0.1, 2.0, 0.7};
  for (double p : {1.0, 1.5, 2.0}) {
    const auto direct = flow_column(f, 2, p, 0.35);
    const auto chained = flow_column(flow_column(f, 2, p, 0.15), 2, p, 0.2);
    for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(direct[k], chained[k], 1e-12);
  }
}

TEST(FlowColumnTest, InitialDerivativeMatchesLeibnizFormula) {
  // d/dt f(t) at 0 for p = 2 is Delta g + |grad g|^2 / g with g = f o pi_j.
  const SymmetricGroup group(4);
  const std::vector<double> f{0.8, 1.2, 1.0, 1.5};
  const std::size_t j = 1;
  const GroupFunction g = lift(group, f, j);
  const GroupFunction lap = laplacian(group, g);
  const GroupFunction gs = grad_sq(group, g);
  GroupFunction formula = lap;
  for (std::size_t s = 0; s < group.order(); ++s) formula.values[s] += gs.values[s] / g.values[s];
  const auto projected = project(group, formula, j);
  // Second-order one-sided stencil.
  const double h = 1e-5;
  const auto one = flow_column(f, j, 2.0, h);
  const auto two = flow_column(f, j, 2.0, 2 * h);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_NEAR((-3 * f[k] + 4 * one[k] - two[k]) / (2 * h), projected[k], 1e-6);
  }
}

TEST(EtaTest, Examples) {
  const ColumnMatrix ones = ColumnMatrix::ones(4, 4);
  for (double p : {1.0, 1.5, 2.0})
    for (double t : {0.0, 0.3, 2.0}) EXPECT_NEAR(eta(ones, p, t), 1.0, 1e-12);

  const ColumnMatrix f = positive_matrix(4, 3);
  EXPECT_NEAR(eta(f, 2.0, 0.0), perm_fast(f).value.real() / 24.0, 1e-12);

  double prev = eta(f, 2.0, 0.0);
  for (int i = 1; i <= 30; ++i) {
    const double cur = eta(f, 2.0, 0.1 * i);
    EXPECT_GE(cur, prev - 1e-10);
    prev = cur;
  }
  double limit = 1.0;
  for (std::size_t j = 0; j < 4; ++j) limit *= p_norm(f.column(j), 2.0) / 2.0;
  EXPECT_NEAR(eta(f, 2.0, 20.0), limit, 1e-12);

  ColumnMatrix neg = ones;
  neg(0, 0) = -1.0;
  EXPECT_THROW(eta(neg, 2.0, 0.1), std::invalid_argument);
}

TEST(EtaTest, FrozenDenseOracleAndPathsAgree) {
  const ColumnMatrix f3 = ColumnMatrix::from_real(3, 3, {0.9, 0.2, 0.5, 0.3, 0.8, 0.4, 0.6, 0.1, 0.7});
  EXPECT_NEAR(eta(f3, 2.0, 0.1), 0.1639500386288705, 1e-12);
  EXPECT_NEAR(eta(f3, 1.3, 0.25), 0.1339414702370337, 1e-12);
  EXPECT_NEAR(eta(f3, 2.0, 0.1, FlowPath::kBruteForce), 0.1639500386288705, 1e-12);
  EXPECT_NEAR(eta(f3, 1.3, 0.25, FlowPath::kBruteForce), 0.1339414702370337, 1e-12);
}

TEST(Eta2DerivativeTest, Examples) {
  EXPECT_NEAR(eta2_derivative_at_zero(ColumnMatrix::ones(4, 4)), 0.0, 1e-14);
  const ComplexVector unit(4, 1.0);
  const std::vector<double> r{0.5, 1.0, 2.0, 3.0};
  const auto rank_one = make_rank_one_constant_modulus(unit, unit, r);
  EXPECT_NEAR(eta2_derivative_at_zero(rank_one), 0.0, 1e-13);
  EXPECT_THROW(eta2_derivative_at_zero(ColumnMatrix::identity(3)), std::invalid_argument);
}

TEST(Eta2DerivativeTest, FrozenFiniteDifferenceOracle) {
  const ColumnMatrix f3 = ColumnMatrix::from_real(3, 3, {0.9, 0.2, 0.5, 0.3, 0.8, 0.4, 0.6, 0.1, 0.7});
  EXPECT_NEAR(eta2_derivative_at_zero(f3), 0.4913304818221497, 1e-6);
  const ColumnMatrix f4 = ColumnMatrix::from_real(
      4, 4, {0.9, 0.2, 0.5, 0.3, 0.3, 0.8, 0.4, 0.6, 0.6, 0.1, 0.7, 0.2, 0.4, 0.5, 0.2, 0.9});
  EXPECT_NEAR(eta2_derivative_at_zero(f4), 0.454585211831851, 1e-6);
}

TEST(Eta2DerivativeTest, MatchesOneSidedDifferencesAndIsNonnegative) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ColumnMatrix f = positive_matrix(4, seed);
    const double d = eta2_derivative_at_zero(f);
    EXPECT_GE(d, -1e-12);
    // Second-order one-sided stencil; the flow is defined for t >= 0 only.
    const double h = 1e-6;
    const double fd = (-3 * eta(f, 2.0, 0.0) + 4 * eta(f, 2.0, h) - eta(f, 2.0, 2 * h)) / (2 * h);
    EXPECT_NEAR(d, fd, 1e-6);
  }
}

TEST(CirculantTest, PhiValues) {
  for (double p : {1.0, 1.5, 2.0}) EXPECT_NEAR(circulant_phi(0.0, 0.0, p), 1.0, 1e-15);
  EXPECT_NEAR(circulant_phi(1.0, 1.0, 2.0), 6.0 / std::pow(3.0, 1.5), 1e-14);
}

TEST(CirculantTest, InitialDecreaseAtPBelowTwo) {
  const auto phi_at = [](double p) {
    return [p](double t) {
      const std::vector<double> times{t};
      return circulant_flow(0.0, 0.0, p, times).circulant->phi.front();
    };
  };
  EXPECT_LT(initial_slope(phi_at(1.5)), -1e-6);
  EXPECT_GE(initial_slope(phi_at(2.0)), -1e-6);
}

TEST(CirculantTest, TraceStaysCirculantAndReachesOnes) {
  const auto times = geometric_time_grid(1e-3, 5.0, 30);
  const FlowTrace trace = circulant_flow(0.0, 0.0, 2.0, times);
  ASSERT_TRUE(trace.circulant);
  EXPECT_LE(max_decrease(trace.circulant->phi), 1e-12);
  EXPECT_NEAR(trace.circulant->x.back(), 1.0, 1e-3);
  EXPECT_NEAR(trace.circulant->y.back(), 1.0, 1e-3);
  for (const auto& state : trace.column_states) {
    const auto c = [&](std::size_t j, std::size_t k) { return state(j, k).real(); };
    EXPECT_NEAR(c(0, 0), c(1, 1), 1e-14);
    EXPECT_NEAR(c(1, 0), c(2, 1), 1e-14);
    EXPECT_NEAR(c(2, 0), c(0, 1), 1e-14);
  }
}

TEST(GridTest, GeometricGrid) {
  const auto grid = geometric_time_grid(1e-3, 1.25, 30);
  ASSERT_EQ(grid.size(), 30u);
  EXPECT_EQ(grid.front(), 0.0);
  EXPECT_EQ(grid[1], 1e-3);
  EXPECT_EQ(grid.back(), 1.25);
  for (std::size_t i = 1; i < grid.size(); ++i) EXPECT_GT(grid[i], grid[i - 1]);
  EXPECT_THROW(geometric_time_grid(1.0, 1.0, 10), std::invalid_argument);
  EXPECT_THROW(geometric_time_grid(1e-3, 1.0, 1), std::invalid_argument);
}

TEST(TraceTest, SerializationIsStable) {
  const ColumnMatrix f = positive_matrix(3, 4);
  const std::vector<double> times{0.0, 0.1, 0.5};
  const FlowTrace trace = flow_trace(f, 2.0, times);
  const std::string csv = to_csv(trace);
  EXPECT_EQ(csv.rfind("# permbound flow trace v1", 0), 0u);
  EXPECT_EQ(csv, to_csv(flow_trace(f, 2.0, times)));
  EXPECT_NE(to_json(trace).find("permbound.flow.v1"), std::string::npos);
  const std::vector<double> bad{0.0, 0.0};
  EXPECT_THROW(flow_trace(f, 2.0, bad), std::invalid_argument);
}

}  // namespace
}  // namespace permbound
