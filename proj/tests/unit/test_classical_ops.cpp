#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "foxh/classical_ops.hpp"

using namespace foxh;

namespace {

const double kPi = std::numbers::pi;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

// t^p on (0, inf); no L_{nu,r} membership, used pointwise only
Function power(double p) {
  Function fn;
  fn.label = "t^" + std::to_string(p);
  fn.f = [p](double t) { return cplx(std::pow(t, p)); };
  fn.nu_lo = fn.nu_hi = -p;
  return fn;
}

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

std::vector<Function> family() {
  return {testfn::power_exp(0.0), testfn::power_exp(0.5, 2.0), testfn::power_exp(1.0),
          testfn::power_exp(2.0, 0.5), testfn::power_exp(-0.3), testfn::gaussian(0.0),
          testfn::gaussian(1.0, 1.0), testfn::gaussian(0.2, 0.3), testfn::truncated_power(0.0),
          testfn::truncated_power(1.0)};
}

}  // namespace

// ---- Mellin transform --------------------------------------------------

TEST(Mellin, Examples) {
  const auto e = testfn::power_exp(0.0);
  EXPECT_NEAR(std::abs(mellin_numeric(e, 2.0) - 1.0), 0.0, 1e-10);
  EXPECT_LT(rel(mellin_numeric(e, 0.5), std::exp(log_gamma(0.5))), 1e-10);
  EXPECT_NEAR(std::abs(mellin_numeric(testfn::truncated_power(1.0), 1.0) - 0.5), 0.0, 1e-10);
}

TEST(Mellin, FamiliesPassSelfCheck) {
  for (const auto& f : family()) EXPECT_LT(mellin_self_check(f, 99), 1e-8) << f.label;
  EXPECT_LT(mellin_self_check(testfn::power_exp(cplx(0.5, 1.0), 1.5), 3), 1e-8);
}

TEST(Mellin, OutsideWitnessIsDivergent) {
  EXPECT_EQ(code_of([] { mellin_numeric(testfn::power_exp(0.0), -0.5); }), "divergent_integral");
  EXPECT_EQ(code_of([] { mellin_numeric(testfn::truncated_power(-0.5), 0.25); }), "divergent_integral");
}

TEST(Mellin, GridFunction) {
  std::vector<double> t;
  std::vector<cplx> v;
  const int n = 500;
  for (int k = 0; k < n; ++k) {
    t.push_back(std::exp(-30.0 + 34.0 * k / (n - 1)));
    v.push_back(std::exp(-t.back()));
  }
  GridFunction g(t, v);
  for (double x : {1e-3, 0.37, 2.0, 7.5}) EXPECT_LT(std::abs(g(x) - std::exp(-x)), 1e-9) << x;
  EXPECT_EQ(g(1e3), cplx(0.0));
  for (cplx s : {cplx(1.0), cplx(2.0, 1.0), cplx(1.5, -3.0)})
    EXPECT_LT(rel(g.mellin_trapezoid(s), gamma(s)), 1e-9) << s;

  EXPECT_EQ(code_of([] { GridFunction(std::vector<double>(8, 1.0), std::vector<cplx>(8)); }), "grid_too_small");
  auto bad = t;
  std::swap(bad[3], bad[4]);
  EXPECT_EQ(code_of([&] { GridFunction(bad, v); }), "grid_not_increasing");
  auto uneven = t;
  uneven[5] *= 1.01;
  EXPECT_EQ(code_of([&] { GridFunction(uneven, v); }), "grid_not_log_uniform");
}

TEST(MellinInverse, Examples) {
  EXPECT_NEAR(std::abs(mellin_inverse_numeric([](cplx s) { return gamma(s); }, 1.0, 1.0) - std::exp(-1.0)), 0.0,
              1e-10);
  auto beta = [](cplx s) { return gamma(s) * gamma(1.0 - s); };
  for (double x : {1.0, 0.1, 4.0}) EXPECT_NEAR(std::abs(mellin_inverse_numeric(beta, 0.5, x) - 1.0 / (1.0 + x)), 0.0, 1e-10);
  EXPECT_EQ(code_of([] { mellin_inverse_numeric([](cplx) { return cplx(2.0); }, 0.5, 1.0); }), "non_decaying");
}

TEST(MellinInverse, RoundTripWithForward) {
  const auto f = testfn::gaussian(0.5, 0.7);
  for (double x : {0.3, 1.0, 2.2}) {
    const cplx back = mellin_inverse_numeric(f.mellin, 1.0, x);
    EXPECT_LT(rel(back, f(x)), 1e-9) << x;
  }
}

// ---- elementary operators ----------------------------------------------

TEST(Elementary, Examples) {
  const auto e = testfn::power_exp(0.0);
  const auto r = op_elementary(ElementaryKind::R, 0.0, e);
  EXPECT_NEAR(r(2.0).real(), 0.3032653299, 1e-10);
  const auto ww = op_elementary(ElementaryKind::W, 0.5, op_elementary(ElementaryKind::W, 2.0, e));
  for (double x : {0.01, 0.5, 1.0, 3.0, 11.0}) EXPECT_NEAR(std::abs(ww(x) - e(x)), 0.0, 1e-15);
  const auto m = op_elementary(ElementaryKind::M, 1.0, e);
  EXPECT_NEAR(std::abs(mellin_numeric(m, 1.0) - 1.0), 0.0, 1e-10);
  EXPECT_EQ(code_of([&] { op_elementary(ElementaryKind::W, -1.0, e); }), "bad_dilation");
  EXPECT_EQ(code_of([&] { op_elementary(ElementaryKind::W, 0.0, e); }), "bad_dilation");
}

TEST(Elementary, NormIdentities) {
  for (const auto& f : family()) {
    for (double r : {1.0, 2.0, 3.5}) {
      const double nu = f.nu_lo + 0.7;
      const double base = lnur_norm(f, nu, r).value;
      for (cplx zeta : {cplx(0.5), cplx(-1.2, 0.8)}) {
        const auto m = op_elementary(ElementaryKind::M, zeta, f);
        EXPECT_NEAR(lnur_norm(m, nu - zeta.real(), r).value / base, 1.0, 1e-9) << f.label << " r=" << r;
      }
      const auto rf = op_elementary(ElementaryKind::R, 0.0, f);
      EXPECT_NEAR(lnur_norm(rf, 1.0 - nu, r).value / base, 1.0, 1e-9) << f.label << " r=" << r;
      for (double d : {0.3, 2.5}) {
        const auto w = op_elementary(ElementaryKind::W, d, f);
        EXPECT_NEAR(lnur_norm(w, nu, r).value / base, std::pow(d, nu), 1e-9 * std::pow(d, nu)) << f.label;
      }
    }
  }
}

TEST(Elementary, MellinBookkeeping) {
  for (const auto& f : family()) {
    const auto chain = op_elementary(
        ElementaryKind::W, 1.7,
        op_elementary(ElementaryKind::R, 0.0, op_elementary(ElementaryKind::M, cplx(0.4, 0.3), f)));
    ASSERT_TRUE(static_cast<bool>(chain.mellin));
    EXPECT_LT(mellin_self_check(chain, 5), 1e-8) << chain.label;
  }
}

// ---- norms -------------------------------------------------------------

TEST(Norms, Examples) {
  const auto e = testfn::power_exp(0.0);
  EXPECT_NEAR(lnur_norm(e, 1.0, 1.0).value, 1.0, 1e-12);
  EXPECT_NEAR(lnur_norm(e, 1.0, 2.0).value, 0.5, 1e-12);
  const auto n = lnur_norm(testfn::truncated_power(-0.5), 0.0, 2.0);
  EXPECT_TRUE(n.infinite);
  // sup of t e^{-t} is 1/e
  EXPECT_NEAR(lnur_norm(e, 1.0, kInf).value, std::exp(-1.0), 1e-6);
  EXPECT_TRUE(lnur_norm(e, -1.0, kInf).infinite);
  EXPECT_EQ(lnur_norm(testfn::zero(), 0.3, 2.0).value, 0.0);
  EXPECT_THROW(lnur_norm(e, 1.0, 0.5), Error);
}

// ---- Erdelyi-Kober -----------------------------------------------------

TEST(ErdelyiKober, Examples) {
  for (double x : {0.1, 1.0, 3.7}) {
    EXPECT_NEAR(std::abs(ek_fractional(EKSide::left, 1.0, 1.0, 0.0, power(1.0), x) - x / 2.0), 0.0, 1e-12 * x);
    EXPECT_NEAR(std::abs(ek_fractional(EKSide::left, 1.0, 1.0, 0.0, power(0.0), x) - 1.0), 0.0, 1e-12);
  }
  // right side: x int_x^inf t^{-2} e^{-t} dt
  boost::math::quadrature::exp_sinh<double> es;
  const double ref = es.integrate([](double v) { return std::exp(-(1.0 + v)) / ((1.0 + v) * (1.0 + v)); }, 0.0,
                                  std::numeric_limits<double>::infinity());
  const cplx got = ek_fractional(EKSide::right, 1.0, 1.0, 1.0, testfn::power_exp(0.0), 1.0);
  EXPECT_NEAR(std::abs(got - ref), 0.0, 1e-9);
}

TEST(ErdelyiKober, AgreesWithDefinitionByQuadrature) {
  // sigma x^{sigma eta}/Gamma(alpha) int_x^inf t^{sigma(1-alpha-eta)-1} (t^sigma - x^sigma)^{alpha-1} f(t) dt
  // and the left analogue over (0, x), f = t e^{-t}
  boost::math::quadrature::exp_sinh<double> es;
  boost::math::quadrature::tanh_sinh<double> ts;
  const auto f = testfn::power_exp(1.0);
  for (auto [alpha, sigma, eta, x] : {std::tuple{0.5, 2.0, 0.3, 1.7}, {1.6, 0.7, -0.2, 0.4}, {0.25, 1.0, 1.5, 5.0}}) {
    const double g = boost::math::tgamma(alpha);
    // t^sigma - x^sigma written through expm1 so the endpoint singularity stays resolved
    const double xs = std::pow(x, sigma);
    const double right = sigma * std::pow(x, sigma * eta) / g *
                         es.integrate(
                             [&](double v) {
                               if (!(v > 0.0)) return 0.0;
                               const double t = x + v;
                               const double gap = xs * std::expm1(sigma * std::log1p(v / x));
                               return std::pow(t, sigma * (1 - alpha - eta) - 1) * std::pow(gap, alpha - 1) * t *
                                      std::exp(-t);
                             },
                             0.0, std::numeric_limits<double>::infinity());
    EXPECT_LT(rel(ek_fractional(EKSide::right, alpha, sigma, eta, f, x), right), 1e-9) << alpha << " " << sigma;
    // t = x w; the complement wc = 1 - w near the right end
    const double left = sigma * std::pow(x, -sigma * (alpha + eta)) / g * x *
                        ts.integrate(
                            [&](double w, double wc) {
                              const double t = x * w;
                              const double omw = wc > 0.0 ? wc : 1.0 - w;
                              if (!(omw > 0.0) || !(w > 0.0)) return 0.0;
                              const double gap = -xs * std::expm1(sigma * std::log1p(-omw));
                              return std::pow(t, sigma * eta + sigma - 1) * std::pow(gap, alpha - 1) * t * std::exp(-t);
                            },
                            0.0, 1.0);
    EXPECT_LT(rel(ek_fractional(EKSide::left, alpha, sigma, eta, f, x), left), 1e-9) << alpha << " " << sigma;
  }
}

TEST(ErdelyiKober, PowerClosedForm) {
  // I^alpha_{0+;sigma,eta} t^{sigma lambda} = Gamma(eta+lambda+1)/Gamma(alpha+eta+lambda+1) x^{sigma lambda}
  for (auto [alpha, sigma, eta, lambda] :
       {std::tuple{cplx(0.5), 1.0, cplx(0.0), 0.7}, {cplx(1.3, 0.6), 2.0, cplx(0.4), -0.3}, {cplx(0.1), 0.5, cplx(1.0, -1.0), 2.0}}) {
    for (double x : {0.2, 1.0, 6.0}) {
      const cplx want = std::exp(log_gamma(eta + lambda + 1.0) - log_gamma(alpha + eta + lambda + 1.0)) *
                        std::pow(x, sigma * lambda);
      const cplx got = ek_fractional(EKSide::left, alpha, sigma, eta, power(sigma * lambda), x);
      EXPECT_LT(rel(got, want), 1e-10) << alpha << " " << x;
    }
  }
}

TEST(ErdelyiKober, Semigroup) {
  // I^alpha_{sigma,eta+alpha'} I^{alpha'}_{sigma,eta} = I^{alpha+alpha'}_{sigma,eta}
  const double sigma = 1.5, lambda = 0.6;
  const cplx eta = 0.2, a1 = 0.7, a2 = cplx(0.45, 0.3);
  const auto inner = ek_operator(EKSide::left, a2, sigma, eta, power(sigma * lambda));
  for (double x : {0.3, 1.0, 2.5}) {
    const cplx got = ek_fractional(EKSide::left, a1, sigma, eta + a2, inner, x);
    const cplx want =
        std::exp(log_gamma(eta + lambda + 1.0) - log_gamma(a1 + a2 + eta + lambda + 1.0)) * std::pow(x, sigma * lambda);
    EXPECT_LT(rel(got, want), 1e-8) << x;
  }
}

TEST(ErdelyiKober, Errors) {
  const auto e = testfn::power_exp(0.0);
  EXPECT_EQ(code_of([&] { ek_fractional(EKSide::left, 0.0, 1.0, 0.0, e, 1.0); }), "alpha_not_positive");
  EXPECT_EQ(code_of([&] { ek_fractional(EKSide::left, cplx(-0.5, 1.0), 1.0, 0.0, e, 1.0); }), "alpha_not_positive");
  EXPECT_EQ(code_of([&] { ek_fractional(EKSide::right, 1.0, -1.0, 0.0, e, 1.0); }), "sigma_not_positive");
  // constants are not integrable at infinity against u^{eta-1}, eta = 0
  EXPECT_EQ(code_of([] { ek_fractional(EKSide::right, 1.0, 1.0, 0.0, power(0.0), 1.0); }), "divergent_integral");
  EXPECT_EQ(ek_fractional(EKSide::left, 1.0, 1.0, 0.0, testfn::zero(), 1.0), cplx(0.0));
}

TEST(ErdelyiKober, MellinIdentityLeft) {
  const auto f = testfn::power_exp(1.0);
  struct Case {
    cplx alpha;
    double sigma;
    cplx eta;
    std::vector<cplx> s;
  };
  for (const auto& c : {Case{0.7, 1.0, 0.5, {0.2, {0.5, 1.0}, {-0.3, -2.0}, {1.0, 0.5}, {0.0, 3.0}}},
                        Case{{1.3, 0.4}, 2.0, 0.2, {0.4, {1.5, -1.0}, {-0.5, 1.0}, {2.0, 2.0}, {1.0, 0.0}}}}) {
    const auto g = ek_operator(EKSide::left, c.alpha, c.sigma, c.eta, f);
    for (cplx s : c.s) {
      const cplx m = std::exp(log_gamma(1.0 + c.eta - s / c.sigma) - log_gamma(1.0 + c.eta + c.alpha - s / c.sigma));
      EXPECT_LT(rel(mellin_numeric(g, s), m * f.mellin(s)), 1e-7) << s;
    }
  }
}

TEST(ErdelyiKober, MellinIdentityRight) {
  const auto f = testfn::power_exp(1.0);
  struct Case {
    cplx alpha;
    double sigma;
    cplx eta;
    std::vector<cplx> s;
  };
  for (const auto& c : {Case{0.6, 1.0, 0.5, {0.0, {0.5, 1.0}, {1.2, -2.0}, {2.0, 0.5}, {0.3, 3.0}}},
                        Case{{0.9, -0.5}, 0.5, 1.0, {-0.2, {0.5, -1.0}, {1.5, 1.0}, {3.0, 0.0}, {1.0, 2.5}}}}) {
    const auto g = ek_operator(EKSide::right, c.alpha, c.sigma, c.eta, f);
    for (cplx s : c.s) {
      const cplx m = std::exp(log_gamma(c.eta + s / c.sigma) - log_gamma(c.eta + c.alpha + s / c.sigma));
      EXPECT_LT(rel(mellin_numeric(g, s), m * f.mellin(s)), 1e-7) << s;
    }
  }
}

TEST(ErdelyiKober, BoundednessSmoke) {
  // On L_{nu,2} the operator norm is the sup of |multiplier| on Re s = nu.
  const cplx alpha = 0.8, eta = 0.3;
  const double sigma = 1.0, nu = 0.5;
  double bound = 0;
  for (double t = -60.0; t <= 60.0; t += 0.01) {
    const cplx s(nu, t);
    bound = std::max(bound, std::abs(std::exp(log_gamma(1.0 + eta - s / sigma) - log_gamma(1.0 + eta + alpha - s / sigma))));
  }
  for (const auto& f : family()) {
    if (!f.in_witness(nu)) continue;
    const auto g = ek_operator(EKSide::left, alpha, sigma, eta, f);
    const double ratio = lnur_norm(g, nu, 2.0).value / lnur_norm(f, nu, 2.0).value;
    EXPECT_LE(ratio, 10.0 * bound) << f.label;
    EXPECT_LE(ratio, bound * (1.0 + 1e-8)) << f.label;
  }
}

// ---- Hankel ------------------------------------------------------------

TEST(Hankel, GaussianCosineTransform) {
  const auto g = testfn::gaussian(0.0, 0.5);
  EXPECT_NEAR(hankel_mod(1.0, -0.5, g, 1.0).real(), 0.6065306597, 1e-10);
  for (double x : {0.2, 2.0, 5.0}) EXPECT_NEAR(std::abs(hankel_mod(1.0, -0.5, g, x) - std::exp(-0.5 * x * x)), 0.0, 1e-11);
}

TEST(Hankel, GaussianSineTransform) {
  // sqrt(2/pi) int_0^inf sin(xt) e^{-t^2/2} dt, Ooura's double-exponential Fourier rule as oracle
  boost::math::quadrature::ooura_fourier_sin<double> sine;
  const auto g = testfn::gaussian(0.0, 0.5);
  for (double x : {0.5, 1.0, 3.0, 8.0}) {
    const double ref = std::sqrt(2.0 / kPi) * sine.integrate([](double t) { return std::exp(-0.5 * t * t); }, x).first;
    EXPECT_NEAR(std::abs(hankel_mod(1.0, 0.5, g, x) - ref), 0.0, 1e-10) << x;
  }
}

TEST(Hankel, SlowTailAndBreakpoints) {
  // int_0^inf J_0(xt) t/(1+t^2) dt = K_0(x): f = t^{1/2}/(1+t^2)
  Function slow;
  slow.label = "sqrt(t)/(1+t^2)";
  slow.f = [](double t) { return cplx(std::sqrt(t) / (1.0 + t * t)); };
  slow.nu_lo = -0.5;
  slow.nu_hi = 1.5;
  for (double x : {0.5, 1.0, 3.0}) {
    const auto r = hankel_mod_detail(1.0, 0.0, slow, x);
    EXPECT_LT(rel(r.value, std::sqrt(x) * boost::math::cyl_bessel_k(0, x)), 1e-9) << x;
  }
  // f = t^{-1/2} 1_(0,1): sqrt(x) int_0^1 J_0(xt) dt
  const auto trunc = testfn::truncated_power(-0.5);
  boost::math::quadrature::tanh_sinh<double> ts;
  for (double x : {0.7, 4.0, 25.0}) {
    const double ref = std::sqrt(x) * ts.integrate([x](double t) { return boost::math::cyl_bessel_j(0, x * t); }, 0.0, 1.0);
    EXPECT_NEAR(std::abs(hankel_mod(1.0, 0.0, trunc, x) - ref), 0.0, 1e-10) << x;
  }
}

TEST(Hankel, ZeroAndErrors) {
  EXPECT_EQ(hankel_mod(1.0, 0.5, testfn::zero(), 2.0), cplx(0.0));
  const auto g = testfn::gaussian(0.0);
  EXPECT_EQ(code_of([&] { hankel_mod(0.0, 0.5, g, 1.0); }), "kappa_zero");
  EXPECT_EQ(code_of([&] { hankel_mod(1.0, -1.5, g, 1.0); }), "eta_range");
}

TEST(Hankel, MellinIdentity) {
  struct Case {
    double kappa;
    cplx eta;
    Function f;
    double cutoff;  // the transform is below 1e-19 beyond
    std::vector<cplx> s;
  };
  // self-reciprocal pairs, so the transform decays fast:
  // kappa = 1: t^{eta+1/2} e^{-t^2/2};  kappa = 2: t^{eta/2} e^{-t} -> x^{eta/2} e^{-x}
  for (const auto& c :
       {Case{1.0, 0.5, testfn::gaussian(1.0, 0.5), 10.0, {0.3, {0.5, 1.0}, {1.5, -1.5}, {-0.5, 0.5}, {1.0, 2.5}}},
        Case{2.0, 0.5, testfn::power_exp(0.25), 48.0, {0.2, {0.5, 1.0}, {1.0, -1.5}, {-0.1, 0.5}, {0.7, 2.5}}}}) {
    const auto h = hankel_operator(c.kappa, c.eta, c.f);
    const double k = c.kappa;
    Function probe = h;
    probe.nu_lo = -kInf;
    probe.nu_hi = kInf;
    probe.support_hi = c.cutoff;
    for (cplx s : c.s) {
      const cplx m = std::exp(k * (s - 0.5) * std::log(2.0 / std::abs(k)) +
                              log_gamma((c.eta + k * (s - 0.5) + 1.0) / 2.0) -
                              log_gamma((c.eta - k * (s - 0.5) + 1.0) / 2.0));
      EXPECT_LT(rel(mellin_numeric(probe, s), m * c.f.mellin(1.0 - s)), 1e-7) << k << " " << s;
    }
  }
}

// ---- Laplace -----------------------------------------------------------

TEST(Laplace, Examples) {
  const auto e = testfn::power_exp(0.0);
  EXPECT_NEAR(laplace_mod(1.0, 0.0, e, 1.0).real(), 0.5, 1e-12);
  EXPECT_NEAR(laplace_mod(1.0, 0.0, e, 3.0).real(), 0.25, 1e-12);
  EXPECT_NEAR(laplace_mod(1.0, 0.0, testfn::power_exp(1.0), 1.0).real(), 0.25, 1e-12);
  EXPECT_EQ(code_of([&] { laplace_mod(1.0, 3.0, e, 1.0); }), "divergent_integral");
  EXPECT_EQ(code_of([&] { laplace_mod(0.0, 0.0, e, 1.0); }), "kappa_zero");
}

TEST(Laplace, MellinIdentity) {
  struct Case {
    double kappa;
    cplx alpha;
    Function f;
    std::vector<cplx> s;
  };
  for (const auto& c :
       {Case{1.0, 0.0, testfn::power_exp(0.0), {0.5, {0.3, 1.0}, {0.8, -2.0}, {0.2, 0.5}, {0.6, 3.0}}},
        Case{2.0, 0.3, testfn::power_exp(1.0), {0.8, {1.0, 1.0}, {1.5, -1.0}, {0.5, 2.0}, {1.8, 0.0}}},
        Case{-1.0, 0.2, testfn::power_exp(1.0), {-0.5, {-0.2, 1.0}, {0.0, -2.0}, {-0.8, 0.5}, {-0.4, 3.0}}}}) {
    const auto l = laplace_operator(c.kappa, c.alpha, c.f);
    const double k = c.kappa;
    for (cplx s : c.s) {
      const cplx m = std::exp(log_gamma(k * (s - c.alpha)) + (1.0 - k * (s - c.alpha)) * std::log(std::abs(k)));
      EXPECT_LT(rel(mellin_numeric(l, s), m * c.f.mellin(1.0 - s)), 1e-7) << k << " " << s;
    }
  }
}
