#pragma once

// Large-|t| behaviour of the H-function symbol on vertical lines s = sigma + i t.

#include <cmath>
#include <complex>
#include <numbers>

#include "foxh/gamma_symbol.hpp"
#include "foxh/hparams.hpp"

namespace foxh {

struct AsymptoticEstimate {
  double log_constant = 0;     // c* log 2pi + sigma log delta + log weight constant
  double algebraic_exponent = 0;  // Delta sigma + Re mu
  double exponential_rate = 0;    // -pi a* / 2
  double sign_term = 0;           // -pi Im xi / 2, multiplied by sign(t)

  double log_value(double t) const {
    const double at = std::abs(t);
    return log_constant + algebraic_exponent * std::log(at) + exponential_rate * at +
           sign_term * (t > 0 ? 1.0 : -1.0);
  }
  double value(double t) const { return std::exp(log_value(t)); }
};

inline AsymptoticEstimate asymptotic_estimate(const Invariants& inv, double sigma) {
  constexpr double pi = std::numbers::pi;
  AsymptoticEstimate e;
  e.log_constant = inv.c_star * std::log(2.0 * pi) + sigma * inv.log_delta + inv.log_weight_constant;
  e.algebraic_exponent = inv.delta_cap * sigma + inv.mu.real();
  e.exponential_rate = -pi * inv.a_star / 2.0;
  e.sign_term = -pi * inv.xi.imag() / 2.0;
  return e;
}

inline double asymptotic_magnitude(const Invariants& inv, double sigma, double t) {
  if (t == 0.0) fail(ErrorKind::domain, "t_zero", "asymptotic estimate needs t != 0");
  return asymptotic_estimate(inv, sigma).value(t);
}

// log delta + a1* log(it) - a2* log(-it) + (mu + Delta sigma)/(it): the leading
// terms of H'(s)/H(s) at s = sigma + i t.
inline cplx asymptotic_log_derivative(const Invariants& inv, double sigma, double t) {
  if (t == 0.0) fail(ErrorKind::domain, "t_zero", "asymptotic log-derivative needs t != 0");
  const cplx it(0.0, t);
  return inv.log_delta + inv.a1_star * std::log(it) - inv.a2_star * std::log(-it) +
         (inv.mu + inv.delta_cap * sigma) / it;
}

// Empirical class-A check of a multiplier m on the line Re s = sigma: the
// derivative must decay like C/|t|. Returns sup |t m'(sigma+it)| over a
// logarithmic sample of t in [t_min, t_max] (both signs), together with the
// same quantity restricted to the upper decade; growth between them signals a
// violation.
struct ClassAReport {
  double sup_all = 0;           // sup |t m'(s)| over the whole sample
  double sup_upper_decade = 0;  // sup over |t| in [t_max/10, t_max]
  double sup_value = 0;         // sup |m(s)|
  bool bounded = false;
};

inline ClassAReport class_a_check(const GammaSymbol& m, double sigma, double t_min = 1.0,
                                  double t_max = 1000.0, int samples = 200) {
  ClassAReport rep;
  const double lr = std::log(t_max / t_min);
  for (int k = 0; k <= samples; ++k) {
    const double at = t_min * std::exp(lr * k / samples);
    for (double sign : {1.0, -1.0}) {
      const double t = sign * at;
      const cplx s(sigma, t);
      const cplx v = m.eval(s);
      const double d = std::abs(v * m.log_derivative(s)) * at;
      rep.sup_all = std::max(rep.sup_all, d);
      rep.sup_value = std::max(rep.sup_value, std::abs(v));
      if (at >= t_max / 10.0) rep.sup_upper_decade = std::max(rep.sup_upper_decade, d);
    }
  }
  rep.bounded = std::isfinite(rep.sup_all) && std::isfinite(rep.sup_value);
  return rep;
}

}  // namespace foxh
