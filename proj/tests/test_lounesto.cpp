#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace polarspinor;
using polarspinor::testing::random_spinor;

TEST(Classify, Examples) {
  EXPECT_EQ(classify(Spinor(1, 0, 0, 0)).label, LounestoLabel::Dipole);
  EXPECT_EQ(classify(Spinor(1, 0, 0, 1)).label, LounestoLabel::Flagpole);
  EXPECT_EQ(classify(Spinor(1, 0, 1, 0)).label, LounestoLabel::RegularScalar);
  EXPECT_EQ(classify(reconstruct_singular(make_polar_singular(0.3))).label, LounestoLabel::FlagDipole);
}

TEST(Classify, RegularSubclasses) {
  EXPECT_EQ(classify(reconstruct_regular(make_polar_regular(1.0, 0.4))).label,
            LounestoLabel::RegularScalarPseudoscalar);
  EXPECT_EQ(classify(reconstruct_regular(make_polar_regular(1.0, std::numbers::pi / 2))).label,
            LounestoLabel::RegularPseudoscalar);
}

TEST(Classify, ReportsRatiosAndTolerance) {
  const auto c = classify(Spinor(1, 0, 1, 0), 1e-7);
  EXPECT_EQ(c.tolerance_used, 1e-7);
  EXPECT_NEAR(c.phi_ratio, 1.0, 1e-15);
  EXPECT_NEAR(c.theta_ratio, 0.0, 1e-15);
  EXPECT_NEAR(c.s_ratio, 1.0, 1e-15);
}

TEST(Classify, ZeroSpinorRejected) {
  EXPECT_THROW(classify(Spinor::Zero()), InputError);
}

TEST(Classify, ImpossibleBilinearsFlagged) {
  Bilinears b;
  b.U = Vec4(1, 0, 0, 1);
  EXPECT_THROW(classify(b), ConsistencyError);
}

TEST(Classify, RandomSpinorsAreRegular) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 1000; ++trial)
    EXPECT_TRUE(is_regular(classify(random_spinor(rng)).label));
}

TEST(Classify, InvariantUnderTransformations) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = polarspinor::testing::random_transformation(rng);
    std::vector<Spinor> probes = {
        polarspinor::testing::random_regular(rng),
        polarspinor::testing::random_singular(rng, 0.7),
        polarspinor::testing::random_singular(rng, std::numbers::pi / 2),
        polarspinor::testing::random_singular(rng, 0.0),
        reconstruct_regular(make_polar_regular(1.0, 0.0, polarspinor::testing::random_vec3(rng, 1.0))),
    };
    for (const Spinor& p : probes) EXPECT_EQ(classify(s.apply(p)).label, classify(p).label);
  }
}

TEST(Classify, ScaleInvariant) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Complex c(d(rng), d(rng));
    for (const Spinor& p : {Spinor(1, 0, 0, 0), Spinor(1, 0, 0, 1), Spinor(1, 0, 1, 0),
                            polarspinor::testing::random_singular(rng, 1.1)})
      EXPECT_EQ(classify(c * p).label, classify(p).label);
  }
}

TEST(Classify, LabelStrings) {
  EXPECT_EQ(to_string(LounestoLabel::RegularScalar), "Regular(Phi!=0,Theta=0)");
  EXPECT_EQ(to_string(LounestoLabel::Flagpole), "Flagpole");
  EXPECT_TRUE(is_singular(LounestoLabel::Dipole));
}
