#include <gtest/gtest.h>

#include <random>

#include "foxh/factorization.hpp"
#include "foxh/htransform.hpp"

using namespace foxh;

namespace {

HParams make(int m, int n, std::vector<ParamPair> up, std::vector<ParamPair> lo) {
  HParams h;
  h.m = m, h.n = n;
  h.p = static_cast<int>(up.size()), h.q = static_cast<int>(lo.size());
  h.upper = std::move(up), h.lower = std::move(lo);
  return h;
}

ParamPair pp(cplx a, Rational w) { return ParamPair(a, w); }

// one parameter set per case, in case order
std::vector<HParams> canonical() {
  return {
      make(1, 0, {pp(0.0, Rational(1, 2)), pp(0.5, Rational(1, 2))}, {pp(0.0, Rational(1))}),
      make(1, 0, {pp(0.5, Rational(1))}, {pp(0.0, Rational(1))}),
      kernels::bessel(0.0),
      make(0, 1, {pp(0.0, Rational(1)), pp(0.0, Rational(1))}, {}),
      kernels::beta(2.0),
      kernels::exponential(),
      make(0, 1, {pp(0.0, Rational(1))}, {}),
      make(1, 0, {}, {pp(0.0, Rational(3)), pp(0.0, Rational(1))}),
      make(0, 1, {pp(-1.0, Rational(3)), pp(0.0, Rational(1))}, {}),
  };
}

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

}  // namespace

TEST(Factorization, CanonicalSetsMatchTheirSymbols) {
  const auto sets = canonical();
  for (std::size_t k = 0; k < sets.size(); ++k) {
    const auto plan = plan_factorization(sets[k], 0.5, 2.0);
    EXPECT_EQ(plan.case_label, static_cast<int>(k) + 1);
    const auto v = verify_plan_symbol(plan, sets[k]);
    EXPECT_EQ(v.points.size(), 10u);
    EXPECT_LE(v.max_residual, 1e-10) << "case " << plan.case_label;
    for (cplx s : v.points) EXPECT_DOUBLE_EQ(s.real(), 0.5);
  }
}

TEST(Factorization, ChainsEndOnReflectedArgument) {
  for (const auto& h : canonical()) {
    const auto c = chain_symbol(plan_factorization(h, 0.5, 2.0).chain);
    EXPECT_EQ(c.a, -1.0);
    EXPECT_NEAR(std::abs(c.b - 1.0), 0.0, 1e-12);
  }
}

TEST(Factorization, RandomizedSetsMatch) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-1, 1);
  std::uniform_int_distribution<int> I(0, 3), W(1, 3), D(1, 2);
  int tried = 0;
  double worst = 0;
  for (int it = 0; it < 4000; ++it) {
    HParams h;
    h.p = I(rng), h.q = I(rng);
    if (h.p + h.q == 0) continue;
    h.m = h.q ? std::uniform_int_distribution<int>(0, h.q)(rng) : 0;
    h.n = h.p ? std::uniform_int_distribution<int>(0, h.p)(rng) : 0;
    for (int i = 0; i < h.p; ++i) h.upper.push_back(pp(cplx(U(rng), 0.5 * U(rng)), Rational(W(rng), D(rng))));
    for (int i = 0; i < h.q; ++i) h.lower.push_back(pp(cplx(U(rng), 0.5 * U(rng)), Rational(W(rng), D(rng))));
    const double nu = 0.5 + 0.4 * U(rng);
    try {
      const auto plan = plan_factorization(h, nu, 2.0);
      worst = std::max(worst, verify_plan_symbol(plan, h).max_residual);
      ++tried;
    } catch (const Error& e) {
      EXPECT_TRUE(e.kind() == ErrorKind::hypothesis_failure || e.kind() == ErrorKind::pole) << e.what();
    }
  }
  EXPECT_GT(tried, 200);
  EXPECT_LT(worst, 1e-10);
}

TEST(Factorization, ExponentRanges) {
  const auto sets = canonical();
  const auto c1 = plan_factorization(sets[0], 0.5, 2.0).s_range;
  EXPECT_TRUE(c1.contains(2.0));
  EXPECT_FALSE(c1.contains(2.5));
  // case 2: Re mu = -1/2, so s runs up to 1/(1/2 - 1/2) = inf
  const auto c2 = plan_factorization(sets[1], 0.5, 2.0).s_range;
  EXPECT_EQ(c2.lo, 2.0);
  EXPECT_TRUE(std::isinf(c2.hi));
  const auto c6 = plan_factorization(kernels::exponential(), 0.5, 1.5).s_range;
  EXPECT_EQ(c6.lo, 1.5);
  EXPECT_TRUE(c6.contains(100.0));
}

TEST(Factorization, HypothesisFailuresAreNamed) {
  // exp kernel strip is (0, inf); 1 - nu = -0.5 is outside
  EXPECT_EQ(code_of([] { plan_factorization(kernels::exponential(), 1.5, 2.0); }), "outside_strip");
  EXPECT_EQ(code_of([] { plan_factorization(kernels::exponential(), 0.5, 0.5); }), "exponent_range");
  // Bessel J_0 at nu near 0: Delta(1-nu) + Re mu exceeds 1/2 - gamma(r)
  EXPECT_EQ(code_of([] { plan_factorization(kernels::bessel(0.0), 0.05, 2.0); }), "growth_bound");
}

TEST(Factorization, PlanJsonLayout) {
  const auto plan = plan_factorization(kernels::beta(2.0), 0.5, 2.0);
  const auto j = to_json(plan);
  EXPECT_EQ(j["case"], 5);
  EXPECT_EQ(j["order"], "innermost_first");
  EXPECT_EQ(j["chain"].size(), plan.chain.size());
  EXPECT_EQ(j["chain"][0]["op"], to_string(PrimKind::R));
  EXPECT_EQ(j["mapping"]["to"]["s"]["hi"], "inf");
  EXPECT_EQ(j["aux_symbol_name"], to_string(plan.aux_kind));
  EXPECT_EQ(j.dump(), to_json(plan_factorization(kernels::beta(2.0), 0.5, 2.0)).dump());
}

TEST(Factorization, StageSpacesFollowReflections) {
  const auto plan = plan_factorization(kernels::exponential(), 0.3, 2.0);
  const auto sp = chain_spaces(plan.chain, 0.3);
  ASSERT_EQ(sp.size(), plan.chain.size());
  EXPECT_NEAR(sp.back(), 0.7, 1e-15);
}

TEST(Factorization, InjectivityProbeSeparatesInputs) {
  const auto plan = plan_factorization(kernels::exponential(), 0.5, 2.0);
  const auto p = injectivity_probe(plan, testfn::power_exp(0.0), testfn::power_exp(1.0));
  EXPECT_TRUE(p.distinct);
  const auto same = injectivity_probe(plan, testfn::power_exp(0.0), testfn::power_exp(0.0));
  EXPECT_FALSE(same.distinct);
}
