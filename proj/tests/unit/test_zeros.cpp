#include <gtest/gtest.h>

#include "foxh/zeros.hpp"

using namespace foxh;

TEST(Zeros, GammaRatioHasOneZeroAtOrigin) {
  // Gamma(1 + s) / Gamma(s) = s
  const auto sym = GammaSymbol::gamma(1.0, 1.0) * GammaSymbol::inverse_gamma(0.0, 1.0);
  const auto rep = find_zeros_on_line(sym, 1.0, 5.0);
  ASSERT_EQ(rep.zeros.size(), 1u);
  EXPECT_LT(std::abs(rep.zeros[0].location), 1e-10);
  EXPECT_EQ(rep.zeros[0].multiplicity, 1);
  EXPECT_EQ(rep.winding_total, 1);
  EXPECT_TRUE(rep.in_exceptional_set);
  EXPECT_LT(std::abs(sym.eval(rep.zeros[0].location)), kDeflationTol);
}

TEST(Zeros, GammaHasNone) {
  const auto g = GammaSymbol::gamma(0.0, 1.0);
  for (double nu : {0.1, 0.5, 0.9}) {
    const auto rep = find_zeros_on_line(g, nu, 50.0);
    EXPECT_TRUE(rep.zeros.empty()) << nu;
    EXPECT_FALSE(rep.in_exceptional_set);
    EXPECT_EQ(rep.winding_total, 0);
  }
  EXPECT_TRUE(find_zeros_on_line(kernels::exponential(), 0.5, 50.0).zeros.empty());
  EXPECT_TRUE(find_zeros_on_line(kernels::beta(1.0), 0.5, 50.0).zeros.empty());
}

TEST(Zeros, DoubleZeroCarriesMultiplicity) {
  const auto s = GammaSymbol::gamma(1.0, 1.0) * GammaSymbol::inverse_gamma(0.0, 1.0);
  const auto rep = find_zeros_on_line(s * s, 1.0, 5.0);
  ASSERT_EQ(rep.zeros.size(), 1u);
  EXPECT_EQ(rep.zeros[0].multiplicity, 2);
}

TEST(Zeros, OffLineZeroIsNotExceptional) {
  // 1/Gamma(s - 2i) vanishes at s = 2i - k; near Re s = 0 only s = 2i
  const auto o = GammaSymbol::inverse_gamma(cplx(0, -2), 1.0) * GammaSymbol::gamma(cplx(1, 0), 1.0);
  const auto rep = find_zeros_on_line(o, 0.9, 5.0);
  ASSERT_EQ(rep.zeros.size(), 1u);
  EXPECT_LT(std::abs(rep.zeros[0].location - cplx(0.0, 2.0)), 1e-9);
  EXPECT_FALSE(rep.in_exceptional_set);
}

TEST(Zeros, PoleOnLineAndStripAreRejected) {
  try {
    find_zeros_on_line(GammaSymbol::gamma(0.0, 1.0), 1.0, 5.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "pole_on_line");
  }
  try {
    find_zeros_on_line(kernels::exponential(), 1.5, 5.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "outside_strip");
  }
}

TEST(Zeros, JsonIsStable) {
  const auto sym = GammaSymbol::gamma(1.0, 1.0) * GammaSymbol::inverse_gamma(0.0, 1.0);
  const auto a = to_json(find_zeros_on_line(sym, 1.0, 5.0)).dump();
  const auto b = to_json(find_zeros_on_line(sym, 1.0, 5.0)).dump();
  EXPECT_EQ(a, b);
  const auto j = nlohmann::json::parse(a);
  EXPECT_EQ(j["zeros"].size(), 1u);
  EXPECT_EQ(j["in_exceptional_set"], true);
}
