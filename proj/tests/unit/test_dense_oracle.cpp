#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "pstwalk/dense_oracle.hpp"
#include "pstwalk/step.hpp"
#include "test_oracles.hpp"

using namespace pstwalk;
using pstwalk::testing::max_abs_diff;
using pstwalk::testing::random_state;

TEST(DenseOracle, K11OppositeIsMinusSwap) {
  const auto dense = build_dense(WalkParams::make(1, 1, Layout::OppositePart));
  ASSERT_EQ(dense.dim(), 2u);
  const auto& u = dense.matrix();
  EXPECT_EQ(u(0, 0), std::complex<double>(0.0, 0.0));
  EXPECT_EQ(u(1, 0), std::complex<double>(-1.0, 0.0));  // |1,1>_1 -> -|1,1>_2
  EXPECT_EQ(u(0, 1), std::complex<double>(-1.0, 0.0));  // |1,1>_2 -> -|1,1>_1
  EXPECT_EQ(u(1, 1), std::complex<double>(0.0, 0.0));
}

TEST(DenseOracle, K22SamePartUnitary) {
  const auto dense = build_dense(WalkParams::make(2, 2, Layout::SamePart));
  EXPECT_EQ(dense.dim(), 8u);
  EXPECT_LT(dense.unitarity_residual(), 1e-14);
}

TEST(DenseOracle, MatchesStructuredStepOnRandomStates) {
  std::mt19937_64 rng(42);
  for (const Layout layout : {Layout::SamePart, Layout::OppositePart}) {
    const auto params = WalkParams::make(3, 2, layout);
    const auto dense = build_dense(params);
    const StepOperator op(params);
    for (int k = 0; k < 20; ++k) {
      const auto psi = random_state(params, rng);
      EXPECT_LT(max_abs_diff(dense.apply(psi), op(psi)), 1e-13);
    }
  }
}

TEST(DenseOracle, ColumnSparsityFollowsShift) {
  const auto params = WalkParams::make(3, 4, Layout::OppositePart);
  const auto dense = build_dense(params);
  const WalkState layout(params);
  for (std::size_t i = 0; i < params.m; ++i)
    for (std::size_t alpha = 0; alpha < params.n; ++alpha) {
      const auto col = static_cast<Eigen::Index>(layout.part1_index(i, alpha));
      for (Eigen::Index row = 0; row < static_cast<Eigen::Index>(dense.dim()); ++row) {
        bool allowed = false;
        for (std::size_t beta = 0; beta < params.n; ++beta)
          allowed |= row == static_cast<Eigen::Index>(layout.part2_index(beta, i));
        if (!allowed) ASSERT_EQ(dense.matrix()(row, col), std::complex<double>(0.0, 0.0));
      }
    }
  EXPECT_TRUE(dense.is_block_off_diagonal());
}

TEST(DenseOracle, UnitaryForAllSmallSizesAndPlacements) {
  for (std::size_t m = 1; m <= 36; ++m)
    for (std::size_t n = 1; m * n <= 36; ++n) {
      const auto opp = build_dense(WalkParams::make(m, n, Layout::OppositePart));
      EXPECT_LT(opp.unitarity_residual(), 1e-12);
      EXPECT_TRUE(opp.is_block_off_diagonal());
      if (m >= 2) EXPECT_LT(build_dense(WalkParams::make(m, n, Layout::SamePart)).unitarity_residual(), 1e-12);
    }
  // every distinct placement on a few small graphs
  for (std::size_t m = 2; m <= 4; ++m)
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::size_t s = 1; s <= m; ++s) {
        for (std::size_t r = 1; r <= m; ++r)
          if (r != s)
            EXPECT_LT(build_dense(WalkParams::make(m, n, Layout::SamePart, s, r)).unitarity_residual(), 1e-12);
        for (std::size_t rho = 1; rho <= n; ++rho)
          EXPECT_LT(build_dense(WalkParams::make(m, n, Layout::OppositePart, s, rho)).unitarity_residual(), 1e-12);
      }
}

TEST(DenseOracle, SizeGuard) {
  EXPECT_THROW(build_dense(WalkParams::make(65, 64, Layout::OppositePart)), PreconditionError);
  EXPECT_THROW(matrix_power_fidelity(WalkParams::make(4097, 1, Layout::OppositePart), 1), PreconditionError);
}

TEST(MatrixPowerFidelity, ZeroStepsSamePart) {
  EXPECT_EQ(matrix_power_fidelity(WalkParams::make(4, 3, Layout::SamePart), 0), 0.0);
}

TEST(MatrixPowerFidelity, StarK21PerfectAtTwoSteps) {
  // closest even integer to 2 pi / arccos((2-4)/2) = 2 pi / pi
  const double t_real = 2 * std::numbers::pi / std::acos((2.0 - 4.0) / 2.0);
  EXPECT_DOUBLE_EQ(t_real, 2.0);
  EXPECT_NEAR(matrix_power_fidelity(WalkParams::make(2, 1, Layout::SamePart), 2), 1.0, 1e-15);
}

TEST(MatrixPowerFidelity, OppositeEvenStepVanishes) {
  EXPECT_EQ(matrix_power_fidelity(WalkParams::make(4, 3, Layout::OppositePart), 4), 0.0);
}

TEST(MatrixPowerFidelity, IndependentOfMarkedPlacement) {
  for (std::size_t steps = 0; steps <= 12; ++steps) {
    const double ref_same = matrix_power_fidelity(WalkParams::make(4, 3, Layout::SamePart), steps);
    EXPECT_NEAR(matrix_power_fidelity(WalkParams::make(4, 3, Layout::SamePart, 3, 1), steps), ref_same, 1e-12);
    const double ref_opp = matrix_power_fidelity(WalkParams::make(4, 3, Layout::OppositePart), steps);
    EXPECT_NEAR(matrix_power_fidelity(WalkParams::make(4, 3, Layout::OppositePart, 4, 2), steps), ref_opp, 1e-12);
  }
}

TEST(DenseOracle, CsvListsNonzerosOnly) {
  std::ostringstream os;
  build_dense(WalkParams::make(1, 1, Layout::OppositePart)).write_csv(os);
  EXPECT_EQ(os.str(), "row,col,re,im\n0,1,-1,0\n1,0,-1,0\n");
}
