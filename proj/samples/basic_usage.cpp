// Evaluate a kernel, classify it, and apply its transform three ways.

#include <cstdio>

#include "foxh/factorization.hpp"
#include "foxh/htransform.hpp"
#include "foxh/mellin_barnes.hpp"

int main() {
  using namespace foxh;
  const HParams k = kernels::beta(2.0);  // H^{1,1}_{1,1}: Gamma(2) (1+x)^{-2}

  const auto inv = derive_invariants(validate_params(k));
  std::printf("case %d, a* = %g, Delta = %g\n", classify_case(inv), inv.a_star, inv.delta_cap);

  const EvalResult h = eval_hfunction(k, 1.0);
  std::printf("H(1) = %.12f (trunc bound %.1e)\n", h.value.real(), h.truncation_bound);

  const Function f = testfn::power_exp(0.0);  // e^{-x}
  const std::vector<double> xs{0.5, 1.0, 2.0};
  const auto direct = htransform_direct(k, f, xs);
  const auto mellin = htransform_mellin(k, f, xs);
  const auto plan = plan_factorization(k, 0.5, 2.0);
  const auto chain = apply_plan(plan, f, xs);
  for (std::size_t i = 0; i < xs.size(); ++i)
    std::printf("x = %.1f  direct %.12f  mellin %.12f  plan %.12f\n", xs[i], direct.values[i].real(),
                mellin.values[i].real(), chain.values[i].real());
}
