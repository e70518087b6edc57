#include <gtest/gtest.h>

#include <array>

#include "gslocc/entanglement.hpp"
#include "oracles.hpp"

using namespace gslocc;

namespace {

double oracle_ppt(const SymmetricState& s) {
  const Matrix g = oracle::transpose_mode(build_cm(s).matrix(), 0);
  return oracle::symplectic_eigs(g).front();
}

}  // namespace

TEST(Ppt, Vacuum) { EXPECT_NEAR(ppt_min_symplectic({3, 1.0, 1.0, 0.0, 0.0}), 1.0, 1e-12); }

TEST(Ppt, PureSqueezedIsNpt) {
  const SymmetricState s{3, 4.0, 0.375, 2.0, 0.125};
  EXPECT_LT(ppt_min_symplectic(s), 1.0);
  EXPECT_NEAR(ppt_min_symplectic(s), oracle_ppt(s), 1e-9);
  EXPECT_EQ(classify(s), EntanglementClass::ClassI);
}

TEST(Ppt, ProductThermal) {
  const SymmetricState s{3, 4.0, 2.0, 0.0, 0.0};
  EXPECT_NEAR(ppt_min_symplectic(s), std::sqrt(8.0), 1e-10);
}

TEST(Ppt, AgreesWithOracle) {
  for (const SymmetricState& s : sample_physical(4.0, 4.0, 3, 200, 77)) {
    EXPECT_NEAR(ppt_min_symplectic(s), oracle_ppt(s), 1e-9);
  }
}

TEST(Separability, ClosedFormExamples) {
  EXPECT_TRUE(is_fully_separable({3, 1.0, 1.0, 0.0, 0.0}));
  EXPECT_TRUE(is_fully_separable({3, 4.0, 4.0, 1.0, 1.0}));
  EXPECT_FALSE(is_fully_separable({3, 4.0, 4.0, 3.0, 1.6}));
  EXPECT_NEAR(separability_margin({3, 4.0, 4.0, 3.0, 1.6}), -0.2, 1e-12);
  EXPECT_TRUE(separability_oracle({3, 1.0, 1.0, 0.0, 0.0}));
  EXPECT_TRUE(separability_oracle({3, 4.0, 4.0, 1.0, 1.0}));
  EXPECT_FALSE(separability_oracle({3, 4.0, 4.0, 3.0, 1.6}));
}

TEST(Separability, OracleAgreesAwayFromBoundary) {
  for (const SymmetricState& s : sample_physical(4.0, 4.0, 3, 300, 5)) {
    const double margin = separability_margin(s);
    if (std::abs(margin) < 1e-3) continue;
    EXPECT_EQ(separability_oracle(s), margin >= 0.0) << s.c << " " << s.d;
  }
}

TEST(Classify, Labels) {
  EXPECT_EQ(classify({3, 1.0, 1.0, 0.0, 0.0}), EntanglementClass::ClassV);
  EXPECT_EQ(classify({3, 4.0, 4.0, 1.0, 3.0}), EntanglementClass::Unphysical);
  EXPECT_EQ(code(EntanglementClass::ClassIV), 4);
  EXPECT_EQ(to_string(EntanglementClass::ClassIV), "IV");
}

TEST(Classify, BoundEntangledBandExists) {
  // Scan the gap between the separability curve and the PPT boundary.
  int bound = 0;
  for (int i = 0; i <= 400; ++i) {
    for (int j = 0; j <= 200; ++j) {
      const SymmetricState s{3, 4.0, 4.0, -2.0 + 6.0 * i / 400.0, -4.0 + 6.0 * j / 200.0};
      if (classify(s) == EntanglementClass::ClassIV) {
        ++bound;
        EXPECT_GE(oracle_ppt(s), 1.0 - 1e-8);
        EXPECT_FALSE(separability_oracle(s));
      }
    }
  }
  EXPECT_GT(bound, 0);
}

TEST(Grid, AxisEndpoints) {
  const GridAxis a = default_c_axis(4.0, 3, 5);
  EXPECT_DOUBLE_EQ(a.at(0), -2.0);
  EXPECT_DOUBLE_EQ(a.at(4), 4.0);
  EXPECT_DOUBLE_EQ(a.at(2), 1.0);
  const GridAxis d = default_d_axis(4.0, 3, 3);
  EXPECT_DOUBLE_EQ(d.at(0), -4.0);
  EXPECT_DOUBLE_EQ(d.at(2), 2.0);
}

TEST(ClassMap, MatchesPointwiseClassify) {
  const GridAxis c{-2.0, 4.0, 31};
  const GridAxis d{-4.0, 2.0, 29};
  const ClassMap map = class_map(4.0, 4.0, 3, c, d, ProtocolKind::none, std::nullopt);
  ASSERT_EQ(map.codes.size(), 31u * 29u);
  for (int di = 0; di < d.count; ++di)
    for (int ci = 0; ci < c.count; ++ci)
      EXPECT_EQ(map.at(ci, di), classify({3, 4.0, 4.0, c.at(ci), d.at(di)}));
}

TEST(ClassMap, IndependentOfThreadCount) {
  const GridAxis c = default_c_axis(4.0, 3, 40);
  const GridAxis d = default_d_axis(4.0, 3, 40);
  setenv("GSLOCC_THREADS", "1", 1);
  const ClassMap serial = class_map(4.0, 4.0, 3, c, d, ProtocolKind::qnd, TargetRatios{1.0, 2.0});
  setenv("GSLOCC_THREADS", "4", 1);
  const ClassMap parallel = class_map(4.0, 4.0, 3, c, d, ProtocolKind::qnd, TargetRatios{1.0, 2.0});
  unsetenv("GSLOCC_THREADS");
  EXPECT_EQ(serial.codes, parallel.codes);
}

TEST(ClassMap, Validation) {
  EXPECT_THROW(class_map(4.0, 4.0, 3, {0, 1, 0}, {0, 1, 2}, ProtocolKind::none, std::nullopt),
               std::invalid_argument);
  EXPECT_THROW(class_map(4.0, 4.0, 3, {0, 1, 2}, {0, 1, 2}, ProtocolKind::noise, std::nullopt),
               std::invalid_argument);
}
