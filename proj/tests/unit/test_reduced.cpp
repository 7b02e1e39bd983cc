#include <gtest/gtest.h>

#include <cmath>

#include "pstwalk/dense_oracle.hpp"
#include "pstwalk/reduced.hpp"
#include "pstwalk/step.hpp"
#include "test_oracles.hpp"

using namespace pstwalk;
using pstwalk::testing::max_abs_diff;

namespace {

WalkState combine(const ReducedModel& model, const Eigen::VectorXd& coords) {
  WalkState out(model.params);
  for (std::size_t j = 0; j < model.basis.size(); ++j)
    for (std::size_t k = 0; k < out.dim(); ++k)
      out.amplitudes()[k] += coords(static_cast<Eigen::Index>(j)) * model.basis[j].amplitudes()[k];
  return out;
}

}  // namespace

// ---------- same part ----------

TEST(ReducedSame, MatrixAtMEqualsFour) {
  const double h = std::sqrt(2.0) / 2.0;
  Eigen::Matrix3d expected;
  expected << 0.5, -0.5, h,
              -0.5, 0.5, h,
              -h, -h, 0.0;
  const auto model = build_reduced_same(4, 3);
  EXPECT_LT((model.matrix - expected).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(model.dim(), 3u);
}

TEST(ReducedSame, IndependentOfSecondPart) {
  for (std::size_t m = 3; m <= 12; ++m)
    EXPECT_EQ(build_reduced_same(m, 1).matrix, build_reduced_same(m, 100).matrix);
}

TEST(ReducedSame, MatchesTwoWalkStepsAtLargeM) {
  for (const std::size_t n : {1, 4, 7}) {
    const auto model = build_reduced_same(100, n);
    EXPECT_LT(model.embedding_residual(), 1e-12) << "n=" << n;
    EXPECT_LT(model.subspace_leakage(), 1e-12);
  }
}

TEST(ReducedSame, OrthogonalAndOrthonormalBasis) {
  for (std::size_t m = 3; m <= 10; ++m)
    for (std::size_t n = 1; n <= 6; ++n) {
      const auto model = build_reduced_same(m, n);
      EXPECT_LT(model.orthogonality_residual(), 1e-12);
      EXPECT_LT(model.basis_orthonormality_residual(), 1e-12);
      EXPECT_LT(model.embedding_residual(), 1e-12);
    }
}

TEST(ReducedSame, NonDefaultPlacement) {
  const auto model = build_reduced_same(WalkParams::make(7, 3, Layout::SamePart, 4, 6));
  EXPECT_LT(model.embedding_residual(), 1e-12);
  EXPECT_LT(model.subspace_leakage(), 1e-12);
}

TEST(ReducedSame, PreconditionsAndLayout) {
  EXPECT_THROW(build_reduced_same(2, 3), PreconditionError);
  EXPECT_THROW(build_reduced_same(WalkParams::make(5, 3, Layout::OppositePart)), PreconditionError);
}

TEST(ReducedSame, FullSimulationEquivalence) {
  for (std::size_t m = 3; m <= 8; ++m)
    for (std::size_t n = 1; n <= 8; ++n) {
      const auto params = WalkParams::make(m, n, Layout::SamePart);
      const auto model = build_reduced_same(params);
      const auto target = target_state(params);
      Walker walker(params);
      for (std::size_t t = 1; t <= 15; ++t) {
        walker.advance(2);
        ASSERT_NEAR(model.fidelity_after(t), fidelity(walker.state(), target), 1e-12)
            << "m=" << m << " n=" << n << " t=" << t;
      }
    }
}

// ---------- degenerate same part ----------

TEST(ReducedSameDegenerate, SwapWithSign) {
  const auto model = build_reduced_same_degenerate(3);
  Eigen::Matrix2d expected;
  expected << 0.0, -1.0, -1.0, 0.0;
  EXPECT_EQ(Eigen::Matrix2d(model.matrix), expected);
  // U_eff phi_1 = -phi_2
  const auto image = StepOperator(model.params)(StepOperator(model.params)(model.basis[0]));
  WalkState minus_phi2 = model.basis[1];
  for (auto& a : minus_phi2.amplitudes()) a = -a;
  EXPECT_LT(max_abs_diff(image, minus_phi2), 1e-15);
}

TEST(ReducedSameDegenerate, PerfectTransferAtTwoStepsAgreesWithOracle) {
  for (const std::size_t n : {1, 2, 5}) {
    const auto model = build_reduced_same_degenerate(n);
    EXPECT_NEAR(model.fidelity_at_step(2), 1.0, 1e-15);
    EXPECT_NEAR(matrix_power_fidelity(model.params, 2), 1.0, 1e-14) << "n=" << n;
    EXPECT_LT(model.embedding_residual(), 1e-14);
    EXPECT_LT(model.subspace_leakage(), 1e-14);
  }
  EXPECT_EQ(build_reduced_same_degenerate(5).matrix, build_reduced_same_degenerate(1).matrix);
}

TEST(ReducedSameDegenerate, RejectsOtherSizes) {
  EXPECT_THROW(build_reduced_same_degenerate(WalkParams::make(3, 2, Layout::SamePart)), PreconditionError);
}

// ---------- opposite parts ----------

TEST(ReducedOpposite, MatrixAtTwoTwo) {
  Eigen::Matrix4d expected;
  expected << 1, 0, 0, 0,
              0, 0, 1, 0,
              0, 0, 0, -1,
              0, -1, 0, 0;
  EXPECT_LT((build_reduced_opposite(2, 2).matrix - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ReducedOpposite, OrthogonalOverGrid) {
  for (std::size_t m = 2; m <= 10; ++m)
    for (std::size_t n = 2; n <= 10; ++n) {
      const auto model = build_reduced_opposite(m, n);
      EXPECT_LT(model.orthogonality_residual(), 1e-12);
      EXPECT_LT(model.basis_orthonormality_residual(), 1e-12);
      EXPECT_LT(model.embedding_residual(), 1e-12) << "m=" << m << " n=" << n;
      EXPECT_LT(model.subspace_leakage(), 1e-12);
    }
}

TEST(ReducedOpposite, MatchesTwoWalkStepsAtLargeSizes) {
  const auto model = build_reduced_opposite(100, 50);
  EXPECT_LT(model.embedding_residual(), 1e-12);
  EXPECT_LT(model.subspace_leakage(), 1e-12);
}

TEST(ReducedOpposite, CoordinatesReconstructStates) {
  const auto params = WalkParams::make(6, 4, Layout::OppositePart, 3, 2);
  const auto model = build_reduced_opposite(params);
  const auto after_one = StepOperator(params)(initial_state(params));
  EXPECT_LT(max_abs_diff(combine(model, model.init_coords), after_one), 1e-15);
  EXPECT_LT(max_abs_diff(combine(model, model.target_coords), target_state(params)), 1e-15);
}

TEST(ReducedOpposite, FullSimulationEquivalence) {
  for (std::size_t m = 2; m <= 8; ++m)
    for (std::size_t n = 2; n <= 8; ++n) {
      const auto params = WalkParams::make(m, n, Layout::OppositePart);
      const auto model = build_reduced_opposite(params);
      const auto target = target_state(params);
      Walker walker(params);
      walker.advance();
      for (std::size_t t = 0; t <= 15; ++t) {
        ASSERT_NEAR(model.fidelity_after(t), fidelity(walker.state(), target), 1e-12)
            << "m=" << m << " n=" << n << " t=" << t;
        ASSERT_LT(max_abs_diff(combine(model, model.evolve_coords(t)), walker.state()), 1e-12);
        walker.advance(2);
      }
    }
}

TEST(ReducedOpposite, DegenerateSizesRejected) {
  EXPECT_THROW(build_reduced_opposite(1, 5), PreconditionError);
  EXPECT_THROW(build_reduced_opposite(5, 1), PreconditionError);
  EXPECT_THROW(build_reduced(WalkParams::make(1, 1, Layout::OppositePart)), PreconditionError);
}

TEST(ReducedModel, DispatchPicksDimension) {
  EXPECT_EQ(build_reduced(WalkParams::make(2, 4, Layout::SamePart)).dim(), 2u);
  EXPECT_EQ(build_reduced(WalkParams::make(3, 4, Layout::SamePart)).dim(), 3u);
  EXPECT_EQ(build_reduced(WalkParams::make(3, 4, Layout::OppositePart)).dim(), 4u);
}

TEST(ReducedModel, FidelityAtWrongParityIsZero) {
  const auto same = build_reduced_same(5, 2);
  const auto opp = build_reduced_opposite(5, 2);
  for (std::size_t t = 1; t < 30; t += 2) EXPECT_EQ(same.fidelity_at_step(t), 0.0);
  for (std::size_t t = 0; t < 30; t += 2) EXPECT_EQ(opp.fidelity_at_step(t), 0.0);
}
