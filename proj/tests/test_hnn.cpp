#include <gtest/gtest.h>

#include <random>

#include "onnham/edge_pipeline.hpp"
#include "onnham/hnn.hpp"
#include "test_support.hpp"

namespace onnham {
namespace {

using testing::closed_form_class;
using testing::kHandColumn;

// Top two rows white, bottom row black: drive S = 8.
const Patch kHorizontalEdge{8, 8, 8, 8, 8, 8, 0, 0, 0};

BipolarState with_neutral_outputs(const Patch& patch) {
  return std::get<BipolarState>(encode_patch(patch, Backend::hnn()));
}

TEST(HnnSweep, HorizontalEdgeSetsBothOutputs) {
  const BipolarState next = hnn_sweep(with_neutral_outputs(kHorizontalEdge), build_edge_ham());
  EXPECT_EQ(next[9], 1.0);
  EXPECT_EQ(next[10], 1.0);
  // Inputs see s_a + s_b = 0 and hold.
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(next[i], kHorizontalEdge[i] == 8 ? 1.0 : -1.0);
}

TEST(HnnSweep, UniformWhiteFlipsNeutralPair) {
  const BipolarState next = hnn_sweep(with_neutral_outputs(testing::uniform_patch(8)), build_edge_ham());
  EXPECT_EQ(next[9], 1.0);
  EXPECT_EQ(next[10], -1.0);
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(next[i], 1.0);
}

TEST(HnnSweep, ZeroWeightsHoldEverything) {
  const BipolarState s({0.25, -1, 1, -0.5});
  EXPECT_EQ(hnn_sweep(s, WeightMatrix(4, 2)), s);
}

TEST(HnnSweep, DimensionMismatch) {
  EXPECT_THROW(hnn_sweep(BipolarState({1, 1}), build_edge_ham()), std::invalid_argument);
  EXPECT_THROW(hnn_run(BipolarState({1, 1}), build_edge_ham()), std::invalid_argument);
  EXPECT_THROW(hnn_run(BipolarState(std::vector<double>(11, 1.0)), build_edge_ham(), 1), std::invalid_argument);
  EXPECT_THROW(BipolarState({1.5}), std::invalid_argument);
}

TEST(HnnRun, HorizontalEdgeReachesFixedPoint) {
  const HnnOutcome o = hnn_run(with_neutral_outputs(kHorizontalEdge), build_edge_ham());
  EXPECT_EQ(o.kind, HnnKind::FixedPoint);
  EXPECT_LE(o.sweeps, 3);
  EXPECT_EQ(o.final_state[9], 1.0);
  EXPECT_EQ(o.final_state[10], 1.0);
}

TEST(HnnRun, UniformPatchesCycle) {
  for (int level = 0; level <= 8; ++level) {
    const HnnOutcome o = hnn_run(with_neutral_outputs(testing::uniform_patch(level)), build_edge_ham());
    EXPECT_EQ(o.kind, HnnKind::Cycle2) << level;
    const BipolarState next = hnn_sweep(o.final_state, build_edge_ham());
    EXPECT_EQ(next[9], -o.final_state[9]);
    EXPECT_EQ(next[10], -o.final_state[10]);
    EXPECT_NE(o.final_state[9], o.final_state[10]);
  }
}

TEST(HnnRun, AlreadyFixedPointTakesOneSweep) {
  std::vector<double> s(11);
  for (int i = 0; i < 9; ++i) s[i] = kHandColumn[i] > 0 ? 1.0 : kHandColumn[i] < 0 ? -1.0 : 0.3;
  s[9] = s[10] = 1.0;
  const HnnOutcome o = hnn_run(BipolarState(s), build_edge_ham());
  EXPECT_EQ(o.kind, HnnKind::FixedPoint);
  EXPECT_EQ(o.sweeps, 1);
  EXPECT_EQ(o.final_state, BipolarState(s));
}

TEST(HnnRun, NonConvergentWhenBudgetTooSmall) {
  // The horizontal edge needs three sweeps to confirm its fixed point.
  const HnnOutcome o = hnn_run(with_neutral_outputs(kHorizontalEdge), build_edge_ham(), 2);
  EXPECT_EQ(o.kind, HnnKind::NonConvergent);
  EXPECT_EQ(o.sweeps, 2);
}

TEST(HnnRun, FixedPointIsClosedUnderSweep) {
  std::mt19937 rng(3);
  const WeightMatrix w = build_edge_ham();
  for (int t = 0; t < 500; ++t) {
    const HnnOutcome o = hnn_run(with_neutral_outputs(testing::random_patch(rng)), w);
    if (o.kind == HnnKind::FixedPoint) {
      EXPECT_EQ(hnn_sweep(o.final_state, w), o.final_state);
    } else if (o.kind == HnnKind::Cycle2) {
      const BipolarState one = hnn_sweep(o.final_state, w);
      EXPECT_NE(one, o.final_state);
      EXPECT_EQ(hnn_sweep(one, w), o.final_state);
    }
  }
}

TEST(HnnRun, Deterministic) {
  std::mt19937 rng(5);
  const WeightMatrix w = build_edge_ham();
  for (int t = 0; t < 100; ++t) {
    const BipolarState init = with_neutral_outputs(testing::random_patch(rng));
    const HnnOutcome a = hnn_run(init, w);
    const HnnOutcome b = hnn_run(init, w);
    EXPECT_EQ(a.kind, b.kind);
    EXPECT_EQ(a.final_state, b.final_state);
    EXPECT_EQ(a.sweeps, b.sweeps);
  }
}

TEST(HnnRun, ClosedFormOracleAllBinaryPatches) {
  const Backend hnn = Backend::hnn();
  for (int code = 0; code < 512; ++code) {
    const Patch p = BwLut::patch_of(code);
    EXPECT_EQ(detect_patch(p, hnn), closed_form_class(p)) << code;
  }
}

TEST(HnnRun, ClosedFormOracleRandomGrayPatches) {
  std::mt19937 rng(2024);
  const Backend hnn = Backend::hnn();
  for (int t = 0; t < 10000; ++t) {
    const Patch p = testing::random_patch(rng);
    ASSERT_EQ(detect_patch(p, hnn), closed_form_class(p));
  }
}

TEST(HnnRun, GlobalSignSymmetry) {
  const Backend hnn = Backend::hnn();
  std::mt19937 rng(9);
  for (int t = 0; t < 2000; ++t) {
    Patch p = testing::random_patch(rng);
    Patch neg{};
    for (int i = 0; i < 9; ++i) neg[i] = 8 - p[i];
    const EdgeClass a = detect_patch(p, hnn);
    const EdgeClass b = detect_patch(neg, hnn);
    if (a == EdgeClass::EdgeA) EXPECT_EQ(b, EdgeClass::EdgeB);
    if (a == EdgeClass::EdgeB) EXPECT_EQ(b, EdgeClass::EdgeA);
    if (a == EdgeClass::NoEdge) EXPECT_EQ(b, EdgeClass::NoEdge);
  }
}

}  // namespace
}  // namespace onnham
