#pragma once

// Pointwise H-function values from the Mellin–Barnes integral on a vertical
// line, truncated at |Im s| = T with the tail bounded by the large-|t| envelope.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "foxh/asymptotics.hpp"
#include "foxh/gamma_symbol.hpp"
#include "foxh/hparams.hpp"
#include "foxh/line_integral.hpp"

namespace foxh {

struct ContourSpec {
  double re_line = 0;       // gamma
  double half_height = 0;   // T
  int nodes_per_unit = 8;
  std::string rule = "composite-gauss-legendre";
};

struct EvalResult {
  cplx value;
  double truncation_bound = 0;
  double quadrature_error_estimate = 0;
  ContourSpec contour_used;
};

namespace detail {

// int_{|t|>T} envelope(t) dt, both half-lines.
inline double envelope_tail(const AsymptoticEstimate& e, double T) {
  const double c = -e.exponential_rate;
  const double a = e.algebraic_exponent;
  const double sides = std::exp(e.sign_term) + std::exp(-e.sign_term);
  const double head = e.log_constant + a * std::log(T);
  double one;
  if (c > 0.0) {
    const double rate = a <= 0.0 ? c : c - a / T;
    if (rate <= 0.0) return kInf;
    one = std::exp(head - c * T) / rate;
  } else {
    if (a >= -1.0) return kInf;
    one = std::exp(head) * T / (-a - 1.0);
  }
  return sides * one;
}

inline double tail_bound(const Invariants& inv, double gamma, double T, double x, double rho) {
  const auto e = asymptotic_estimate(inv, gamma);
  return rho * std::pow(x, -gamma) * envelope_tail(e, T) / (2.0 * std::numbers::pi);
}

inline double solve_half_height(const Invariants& inv, double gamma, double x, double target, double rho,
                                double T0 = 2.0) {
  double T = std::max(T0, 2.0);
  while (tail_bound(inv, gamma, T, x, rho) > target / 2.0) {
    T += std::max(0.5, 0.05 * T);
    if (T > 2e4)
      fail(ErrorKind::numerical_failure, "truncation_unreachable",
           "tail envelope needs |Im s| beyond 2e4 for the requested error");
  }
  return T;
}

// Ratio of the true symbol to its envelope near T, times a safety factor 2.
inline double calibrate(const GammaSymbol& sym, const Invariants& inv, double gamma, double T) {
  const auto e = asymptotic_estimate(inv, gamma);
  double worst = 0;
  for (double t : {T, T + 0.5, T + 1.0, 1.5 * T})
    for (double sg : {1.0, -1.0}) {
      const double env = e.value(sg * t);
      const double v = std::abs(sym.eval(cplx(gamma, sg * t)));
      if (env > 0 && std::isfinite(v)) worst = std::max(worst, v / env);
    }
  return std::max(1.0, 2.0 * worst);
}

inline void check_pole_free(const GammaSymbol& sym, double gamma, double T) {
  for (const auto& f : sym.numerator) {
    if (f.slope == 0.0) continue;
    const double re = f.offset.real() + f.slope * gamma;
    if (re > 0.5 || std::abs(re - std::round(re)) > 1e-12) continue;
    const double y = -f.offset.imag() / f.slope;
    if (std::abs(y) <= T)
      fail(ErrorKind::pole, "pole_on_contour", "a pole of the symbol lies on the integration contour");
  }
}

}  // namespace detail

inline ContourSpec choose_contour(const Invariants& inv, double x, double target_abs_err) {
  if (!(x > 0.0)) fail(ErrorKind::domain, "x_not_positive", "x must be positive");
  if (!(target_abs_err > 0.0)) fail(ErrorKind::domain, "bad_target", "error target must be positive");
  if (!inv.strip_nonempty())
    fail(ErrorKind::hypothesis_failure, "empty_strip", "the strip (alpha, beta) is empty");
  const double lo0 = inv.alpha_low, hi0 = inv.beta_high;
  double gamma = 0;
  if (inv.sign_a_star > 0) {
    if (std::isfinite(lo0) && std::isfinite(hi0)) gamma = 0.5 * (lo0 + hi0);
    else if (std::isfinite(lo0)) gamma = lo0 + 1.0;
    else if (std::isfinite(hi0)) gamma = hi0 - 1.0;
  } else if (inv.sign_a_star == 0 && inv.sign_delta_cap != 0) {
    // Delta gamma + Re mu < -1; aim for exponent -8 to keep T moderate.
    const double edge = (-1.0 - inv.mu.real()) / inv.delta_cap;
    const double aim = (-8.0 - inv.mu.real()) / inv.delta_cap;
    const double lo = inv.delta_cap > 0 ? lo0 : std::max(lo0, edge);
    const double hi = inv.delta_cap > 0 ? std::min(hi0, edge) : hi0;
    if (!(lo < hi))
      fail(ErrorKind::hypothesis_failure, "no_admissible_contour",
           "no admissible contour: a* = 0 and no gamma in the strip gives Delta gamma + Re mu < -1");
    if (std::isfinite(lo) && std::isfinite(hi)) {
      const double w = hi - lo;
      gamma = std::clamp(aim, lo + 0.1 * w, hi - 0.1 * w);
    } else if (std::isfinite(hi)) {
      gamma = std::min(aim, hi - 1.0);
    } else if (std::isfinite(lo)) {
      gamma = std::max(aim, lo + 1.0);
    } else {
      gamma = aim;
    }
  } else {
    fail(ErrorKind::hypothesis_failure, "no_admissible_contour",
         inv.sign_a_star < 0 ? "no admissible contour: a* < 0"
                             : "no admissible contour: a* = Delta = 0 gives no decay on vertical lines");
  }
  ContourSpec c;
  c.re_line = gamma;
  c.half_height = detail::solve_half_height(inv, gamma, x, target_abs_err, 1.0);
  return c;
}

namespace detail {

// Auto contour for a set of x values, calibrated against the actual symbol.
inline std::pair<ContourSpec, double> auto_contour(const GammaSymbol& sym, const Invariants& inv,
                                                   const std::vector<double>& xs, double target) {
  ContourSpec c = choose_contour(inv, xs.front(), target);
  for (double x : xs) c.half_height = std::max(c.half_height, choose_contour(inv, x, target).half_height);
  double rho = 1.0;
  for (int pass = 0; pass < 2; ++pass) {
    rho = std::max(rho, calibrate(sym, inv, c.re_line, c.half_height));
    for (double x : xs) c.half_height = solve_half_height(inv, c.re_line, x, target, rho, c.half_height);
  }
  return {c, rho};
}

inline void validate_contour(const Invariants& inv, const ContourSpec& c) {
  if (!(c.half_height > 0.0) || c.nodes_per_unit < 4)
    fail(ErrorKind::domain, "contour_inadmissible", "contour needs T > 0 and nodes_per_unit >= 4");
  if (!(inv.alpha_low < c.re_line && c.re_line < inv.beta_high))
    fail(ErrorKind::hypothesis_failure, "contour_inadmissible", "contour abscissa outside the open strip");
}

inline void check_nodes(int n) {
  if (n < 4 || n > kMaxNodesPerPanel)
    fail(ErrorKind::domain, "contour_inadmissible", "nodes_per_unit outside [4, 512]");
}

inline int pow2_at_least(int n) {
  int p = 4;
  while (p < n) p *= 2;
  return p;
}

}  // namespace detail

inline std::vector<EvalResult> eval_hfunction_batch(const HParams& params, const std::vector<double>& xs,
                                                    std::optional<ContourSpec> contour = std::nullopt,
                                                    double target_abs_err = 1e-10) {
  if (xs.empty()) return {};
  for (double x : xs)
    if (!(x > 0.0)) fail(ErrorKind::domain, "x_not_positive", "x must be positive");
  const HParams hp = validate_params(params);
  const Invariants inv = derive_invariants(hp);
  const GammaSymbol sym = symbol_from_params(hp);

  ContourSpec c;
  double rho = 1.0;
  if (contour) {
    c = *contour;
    detail::validate_contour(inv, c);
    detail::check_nodes(c.nodes_per_unit);
    rho = detail::calibrate(sym, inv, c.re_line, c.half_height);
  } else {
    std::tie(c, rho) = detail::auto_contour(sym, inv, xs, target_abs_err);
  }
  detail::check_pole_free(sym, c.re_line, c.half_height);

  LineSynthesis line([&sym](cplx s) { return sym.eval(s); }, c.re_line, c.half_height);
  std::vector<EvalResult> out;
  out.reserve(xs.size());
  for (double x : xs) {
    EvalResult r;
    const double lx = std::log(x);
    const double tb = detail::tail_bound(inv, c.re_line, c.half_height, x, rho);
    if (!std::isfinite(tb))
      fail(ErrorKind::hypothesis_failure, "contour_inadmissible", "symbol does not decay on the chosen contour");
    const auto q = line.eval_adaptive(lx, target_abs_err / 2.0, detail::pow2_at_least(c.nodes_per_unit));
    r.value = q.value;
    r.truncation_bound = tb;
    r.quadrature_error_estimate = q.error;
    r.contour_used = c;
    r.contour_used.nodes_per_unit = q.nodes;
    out.push_back(r);
  }
  return out;
}

inline EvalResult eval_hfunction(const HParams& params, double x, std::optional<ContourSpec> contour = std::nullopt,
                                 double target_abs_err = 1e-10) {
  if (!(x > 0.0)) fail(ErrorKind::domain, "x_not_positive", "x must be positive");
  return eval_hfunction_batch(params, {x}, std::move(contour), target_abs_err).front();
}

}  // namespace foxh
