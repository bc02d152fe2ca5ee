#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>

#include "foxh/bessel.hpp"

using namespace foxh;

TEST(Bessel, AgreesWithBoostForRealOrder) {
  for (double eta : {-0.75, -0.5, 0.0, 0.5, 1.0, 2.5, 7.0}) {
    for (double z : {0.01, 0.3, 1.0, 4.0, 9.5, 11.9, 12.1, 15.0, 30.0, 120.0}) {
      const double ref = boost::math::cyl_bessel_j(eta, z);
      const cplx got = bessel_j(eta, z);
      EXPECT_NEAR(got.real(), ref, 2e-12 * std::max(1.0, std::abs(ref))) << eta << " " << z;
      EXPECT_NEAR(got.imag(), 0.0, 1e-14);
    }
  }
}

TEST(Bessel, NegativeIntegerOrder) {
  for (double z : {0.5, 3.0, 20.0}) {
    EXPECT_NEAR(std::abs(bessel_j(-3.0, z) + bessel_j(3.0, z)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(bessel_j(-2.0, z) - bessel_j(2.0, z)), 0.0, 1e-14);
  }
}

TEST(Bessel, SeamContinuity) {
  for (cplx eta : {cplx(0.0), cplx(0.5), cplx(-0.4, 0.0), cplx(1.5, 1.0), cplx(3.0, -1.0), cplx(-0.5, 0.7)}) {
    const cplx a = bessel_j_series(eta, kBesselSeam);
    const cplx b = bessel_j_asymptotic(eta, kBesselSeam);
    EXPECT_LT(std::abs(a - b), 1e-10) << eta;
  }
}

TEST(Bessel, RecurrenceForComplexOrder) {
  // J_{eta-1} + J_{eta+1} = (2 eta / z) J_eta
  for (cplx eta : {cplx(0.5, 1.0), cplx(2.0, -0.5), cplx(-0.25, 0.3)}) {
    for (double z : {0.7, 5.0, 11.0, 14.0, 40.0}) {
      const cplx lhs = bessel_j(eta - 1.0, z) + bessel_j(eta + 1.0, z);
      const cplx rhs = 2.0 * eta / z * bessel_j(eta, z);
      EXPECT_LT(std::abs(lhs - rhs), 1e-11 * std::max(1.0, std::abs(rhs))) << eta << " " << z;
    }
  }
}

TEST(Bessel, ZerosAreZeros) {
  for (double eta : {0.0, 0.5, 2.0}) {
    const auto zs = bessel_zeros(eta, 30);
    ASSERT_EQ(zs.size(), 30u);
    for (std::size_t k = 0; k < zs.size(); ++k) {
      EXPECT_NEAR(zs[k], boost::math::cyl_bessel_j_zero(eta, static_cast<int>(k) + 1), 1e-9) << eta << " " << k;
      if (k > 0) EXPECT_GT(zs[k], zs[k - 1]);
    }
  }
}

TEST(Bessel, Errors) {
  EXPECT_THROW(bessel_j(0.5, -1.0), Error);
  EXPECT_THROW(bessel_j(-0.5, 0.0), Error);
  EXPECT_EQ(bessel_j(0.0, 0.0), cplx(1.0));
  EXPECT_EQ(bessel_j(2.0, 0.0), cplx(0.0));
}
