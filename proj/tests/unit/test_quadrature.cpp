#include <gtest/gtest.h>

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <numbers>

#include "foxh/hparams.hpp"
#include "foxh/line_integral.hpp"
#include "foxh/quadrature.hpp"

using namespace foxh;

TEST(GaussJacobi, MonomialMoments) {
  // int_{-1}^1 (1-x)^a (1+x)^b (1+x)^k dx = 2^{a+b+k+1} B(a+1, b+k+1)
  for (auto [a, b] : {std::pair{0.0, 0.0}, {-0.5, -0.5}, {-0.9, 0.3}, {2.5, -0.25}}) {
    const auto rule = gauss_jacobi(20, a, b);
    for (int k = 0; k < 30; ++k) {
      double q = 0;
      for (std::size_t j = 0; j < rule.x.size(); ++j) q += rule.w[j] * std::pow(1.0 + rule.x[j], k);
      const double exact = std::pow(2.0, a + b + k + 1) * boost::math::beta(a + 1.0, b + k + 1.0);
      EXPECT_NEAR(q / exact, 1.0, 1e-12) << a << " " << b << " " << k;
    }
  }
}

TEST(GaussJacobi, LegendreCacheAndErrors) {
  const auto& r = gauss_legendre(64);
  double sum = 0;
  for (double w : r.w) sum += w;
  EXPECT_NEAR(sum, 2.0, 1e-14);
  EXPECT_EQ(&r, &gauss_legendre(64));
  EXPECT_THROW(gauss_legendre(12), Error);
  EXPECT_THROW(gauss_jacobi(8, -1.0, 0.0), Error);
}

TEST(IntegrateDE, KnownIntegrals) {
  const double pi = std::numbers::pi;
  auto gauss = integrate_de([](double t) { return cplx(std::exp(-t * t)); }, -kInf, kInf);
  EXPECT_NEAR(gauss.value.real(), std::sqrt(pi), 1e-13);
  auto half = integrate_de([](double t) { return cplx(std::exp(-t)); }, 0.0, kInf);
  EXPECT_NEAR(half.value.real(), 1.0, 1e-13);
  auto left = integrate_de([](double t) { return cplx(std::exp(t)); }, -kInf, 0.0);
  EXPECT_NEAR(left.value.real(), 1.0, 1e-13);
  auto sing = integrate_de([](double t) { return cplx(1.0 / std::sqrt(t)); }, 0.0, 1.0);
  EXPECT_NEAR(sing.value.real(), 2.0, 1e-12);
  auto osc = integrate_de([](double t) { return std::exp(cplx(0, 3.0 * t)); }, 0.0, 1.0);
  EXPECT_NEAR(std::abs(osc.value - (std::exp(cplx(0, 3.0)) - 1.0) / cplx(0, 3.0)), 0.0, 1e-13);
  auto split = integrate_de_split([](double t) { return cplx(t < 1.0 ? 1.0 : 0.0); }, 0.0, 3.0, {1.0});
  EXPECT_NEAR(split.value.real(), 1.0, 1e-13);
}

TEST(LineSynthesis, GammaInvertsToExponential) {
  LineSynthesis line([](cplx s) { return gamma(s); }, 1.0, 30.0);
  for (double x : {0.2, 1.0, 5.0}) {
    auto r = line.eval_adaptive(std::log(x), 1e-13);
    EXPECT_NEAR(r.value.real(), std::exp(-x), 1e-12) << x;
    EXPECT_NEAR(r.value.imag(), 0.0, 1e-12);
  }
}

TEST(LineSynthesis, DecayScan) {
  auto tail = scan_line_decay([](cplx s) { return gamma(s); }, 1.0);
  EXPECT_GT(tail.half_height, 10.0);
  EXPECT_LT(tail.half_height, 40.0);
  try {
    scan_line_decay([](cplx) { return cplx(1.0); }, 0.0);
    FAIL() << "constant line data accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "non_decaying");
  }
}
