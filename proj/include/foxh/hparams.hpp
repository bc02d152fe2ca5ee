#pragma once

// Parameter model of an H-function H^{m,n}_{p,q}[x | (a_i, alpha_i); (b_j, beta_j)],
// its derived invariants, the nine-case classification and admissibility checks.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "foxh/error.hpp"
#include "foxh/gamma.hpp"

namespace foxh {

using Rational = boost::rational<long long>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Tolerance for "= 0" tests on invariants when weights are not exact rationals.
inline constexpr double kZeroTol = 1e-12;

struct ParamPair {
  cplx value;     // a_i or b_j
  double weight;  // alpha_i or beta_j
  std::optional<Rational> exact_weight;

  ParamPair() = default;
  ParamPair(cplx v, double w) : value(v), weight(w) {}
  ParamPair(cplx v, Rational w)
      : value(v), weight(boost::rational_cast<double>(w)), exact_weight(w) {}
};

struct HParams {
  int m = 0, n = 0, p = 0, q = 0;
  std::vector<ParamPair> upper;  // p pairs (a_i, alpha_i)
  std::vector<ParamPair> lower;  // q pairs (b_j, beta_j)

  bool exact_weights() const {
    for (const auto& e : upper)
      if (!e.exact_weight) return false;
    for (const auto& e : lower)
      if (!e.exact_weight) return false;
    return true;
  }
};

inline HParams validate_params(HParams raw) {
  if (raw.m < 0 || raw.n < 0 || raw.p < 0 || raw.q < 0)
    fail(ErrorKind::invalid_params, "negative_order", "orders must be non-negative");
  if (raw.m > raw.q) fail(ErrorKind::invalid_params, "m_exceeds_q", "m exceeds q");
  if (raw.n > raw.p) fail(ErrorKind::invalid_params, "n_exceeds_p", "n exceeds p");
  if (static_cast<int>(raw.upper.size()) != raw.p)
    fail(ErrorKind::invalid_params, "upper_length_mismatch",
         "upper list has " + std::to_string(raw.upper.size()) + " pairs, p = " + std::to_string(raw.p));
  if (static_cast<int>(raw.lower.size()) != raw.q)
    fail(ErrorKind::invalid_params, "lower_length_mismatch",
         "lower list has " + std::to_string(raw.lower.size()) + " pairs, q = " + std::to_string(raw.q));
  auto check = [](const ParamPair& e) {
    if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag()) || !std::isfinite(e.weight))
      fail(ErrorKind::invalid_params, "non_finite_value", "parameter values must be finite");
    const bool positive = e.exact_weight ? *e.exact_weight > 0 : e.weight > 0.0;
    if (!positive) fail(ErrorKind::invalid_params, "non_positive_weight", "non-positive weight");
  };
  for (const auto& e : raw.upper) check(e);
  for (const auto& e : raw.lower) check(e);
  return raw;
}

struct Invariants {
  int m = 0, n = 0, p = 0, q = 0;
  double a_star = 0, delta_cap = 0, a1_star = 0, a2_star = 0;
  cplx mu, xi;
  double delta = 1, log_delta = 0;
  double c_star = 0;
  double alpha_low = -kInf, beta_high = kInf;
  // log of prod alpha_i^{1/2 - Re a_i} prod beta_j^{Re b_j - 1/2}
  double log_weight_constant = 0;

  // Present when every weight was supplied as an exact rational.
  std::optional<Rational> a_star_exact, delta_cap_exact, a1_star_exact, a2_star_exact;

  // Signs after the zero test (exact or kZeroTol).
  int sign_a_star = 0, sign_delta_cap = 0, sign_a1 = 0, sign_a2 = 0, sign_re_mu = 0;

  std::optional<int> case_label;  // empty: outside the nine cases

  bool strip_nonempty() const { return alpha_low < beta_high; }
};

namespace detail {

inline int tol_sign(double v) { return v > kZeroTol ? 1 : (v < -kZeroTol ? -1 : 0); }
inline int exact_sign(const Rational& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Sum weights over [lo, hi) of a pair list, exactly.
inline Rational exact_sum(const std::vector<ParamPair>& v, int lo, int hi) {
  Rational s(0);
  for (int i = lo; i < hi; ++i) s += *v[i].exact_weight;
  return s;
}
inline double float_sum(const std::vector<ParamPair>& v, int lo, int hi) {
  double s = 0;
  for (int i = lo; i < hi; ++i) s += v[i].weight;
  return s;
}

}  // namespace detail

// The nine case predicates, evaluated on the signs of the invariants.
inline std::array<bool, 9> case_predicates(const Invariants& inv) {
  const int sa = inv.sign_a_star, sd = inv.sign_delta_cap, s1 = inv.sign_a1, s2 = inv.sign_a2,
            smu = inv.sign_re_mu;
  return {
      sa == 0 && sd == 0 && smu == 0,      // 1
      sa == 0 && sd == 0 && smu < 0,       // 2
      sa == 0 && sd > 0,                   // 3
      sa == 0 && sd < 0,                   // 4
      s1 > 0 && s2 > 0,                    // 5
      s1 > 0 && s2 == 0,                   // 6
      s1 == 0 && s2 > 0,                   // 7
      sa > 0 && s1 > 0 && s2 < 0,          // 8
      sa > 0 && s1 < 0 && s2 > 0,          // 9
  };
}

inline int classify_case(const Invariants& inv) {
  const auto pred = case_predicates(inv);
  for (int k = 0; k < 9; ++k)
    if (pred[k]) return k + 1;
  std::string why = inv.sign_a_star < 0 ? "a* < 0" : "a* = 0, Delta = 0 and Re(mu) > 0";
  fail(ErrorKind::hypothesis_failure, "out_of_theory", "parameters outside the nine cases (" + why + ")");
}

inline Invariants derive_invariants(const HParams& hp) {
  Invariants inv;
  inv.m = hp.m;
  inv.n = hp.n;
  inv.p = hp.p;
  inv.q = hp.q;
  const auto& A = hp.upper;
  const auto& B = hp.lower;

  if (hp.exact_weights()) {
    const Rational an = detail::exact_sum(A, 0, hp.n), ap = detail::exact_sum(A, hp.n, hp.p);
    const Rational bm = detail::exact_sum(B, 0, hp.m), bq = detail::exact_sum(B, hp.m, hp.q);
    inv.a_star_exact = an - ap + bm - bq;
    inv.delta_cap_exact = (bm + bq) - (an + ap);
    inv.a1_star_exact = bm - ap;
    inv.a2_star_exact = an - bq;
    inv.a_star = boost::rational_cast<double>(*inv.a_star_exact);
    inv.delta_cap = boost::rational_cast<double>(*inv.delta_cap_exact);
    inv.a1_star = boost::rational_cast<double>(*inv.a1_star_exact);
    inv.a2_star = boost::rational_cast<double>(*inv.a2_star_exact);
    inv.sign_a_star = detail::exact_sign(*inv.a_star_exact);
    inv.sign_delta_cap = detail::exact_sign(*inv.delta_cap_exact);
    inv.sign_a1 = detail::exact_sign(*inv.a1_star_exact);
    inv.sign_a2 = detail::exact_sign(*inv.a2_star_exact);
  } else {
    const double an = detail::float_sum(A, 0, hp.n), ap = detail::float_sum(A, hp.n, hp.p);
    const double bm = detail::float_sum(B, 0, hp.m), bq = detail::float_sum(B, hp.m, hp.q);
    inv.a_star = an - ap + bm - bq;
    inv.delta_cap = (bm + bq) - (an + ap);
    inv.a1_star = bm - ap;
    inv.a2_star = an - bq;
    inv.sign_a_star = detail::tol_sign(inv.a_star);
    inv.sign_delta_cap = detail::tol_sign(inv.delta_cap);
    inv.sign_a1 = detail::tol_sign(inv.a1_star);
    inv.sign_a2 = detail::tol_sign(inv.a2_star);
  }

  cplx sum_a = 0, sum_b = 0, xi = 0;
  double log_delta = 0, log_w = 0;
  for (int i = 0; i < hp.p; ++i) {
    sum_a += A[i].value;
    xi += (i < hp.n ? 1.0 : -1.0) * A[i].value;
    const double la = std::log(A[i].weight);
    log_delta -= A[i].weight * la;
    log_w += (0.5 - A[i].value.real()) * la;
  }
  for (int j = 0; j < hp.q; ++j) {
    sum_b += B[j].value;
    xi += (j < hp.m ? 1.0 : -1.0) * B[j].value;
    const double lb = std::log(B[j].weight);
    log_delta += B[j].weight * lb;
    log_w += (B[j].value.real() - 0.5) * lb;
  }
  inv.mu = sum_b - sum_a + 0.5 * (hp.p - hp.q);
  inv.xi = xi;
  inv.log_delta = log_delta;
  inv.delta = std::exp(log_delta);
  inv.log_weight_constant = log_w;
  inv.c_star = hp.m + hp.n - 0.5 * (hp.p + hp.q);
  inv.sign_re_mu = detail::tol_sign(inv.mu.real());

  for (int j = 0; j < hp.m; ++j)
    inv.alpha_low = std::max(inv.alpha_low, -B[j].value.real() / B[j].weight);
  for (int i = 0; i < hp.n; ++i)
    inv.beta_high = std::min(inv.beta_high, (1.0 - A[i].value.real()) / A[i].weight);

  const auto pred = case_predicates(inv);
  for (int k = 0; k < 9; ++k)
    if (pred[k]) {
      inv.case_label = k + 1;
      break;
    }
  return inv;
}

struct SpaceSpec {
  double nu = 0.5;
  double r = 2.0;  // in [1, inf]; inf allowed for norms only

  // max(1/r, 1/r') with 1/r + 1/r' = 1
  double gamma_r() const {
    const double ir = std::isinf(r) ? 0.0 : 1.0 / r;
    return std::max(ir, 1.0 - ir);
  }
};

enum class AdmissibilityMode { definition, direct_integral };

struct Admissibility {
  bool ok = false;
  std::string code;    // stable identifier of the failed condition, empty when ok
  std::string reason;  // human-readable statement of the condition
  explicit operator bool() const { return ok; }
};

namespace detail {
inline Admissibility pass(std::string reason) { return {true, "", std::move(reason)}; }
inline Admissibility deny(std::string code, std::string reason) {
  return {false, std::move(code), std::move(reason)};
}
// Open-strip membership of the line Re s = c.
inline Admissibility strip_check(const Invariants& inv, double c) {
  const double scale = 1e-12 * std::max(1.0, std::abs(c));
  if ((std::isfinite(inv.alpha_low) && std::abs(c - inv.alpha_low) <= scale) ||
      (std::isfinite(inv.beta_high) && std::abs(c - inv.beta_high) <= scale))
    return deny("strip_boundary", "strip boundary: 1-nu lies on the edge of (alpha, beta)");
  if (!(inv.alpha_low < c && c < inv.beta_high))
    return deny("outside_strip", "1-nu outside the strip (alpha, beta)");
  return pass("alpha < 1-nu < beta");
}
}  // namespace detail

inline Admissibility admissible_range(const Invariants& inv, const SpaceSpec& space,
                                      AdmissibilityMode mode) {
  const double c = 1.0 - space.nu;
  if (auto s = detail::strip_check(inv, c); !s) return s;
  if (inv.sign_a_star > 0) return detail::pass("a* > 0 and alpha < 1-nu < beta");
  if (inv.sign_a_star < 0) return detail::deny("out_of_theory", "a* < 0");

  const double growth = inv.delta_cap * c + inv.mu.real();
  if (mode == AdmissibilityMode::direct_integral) {
    if (growth < -1.0) return detail::pass("a* = 0 and Delta(1-nu) + Re(mu) < -1");
    return detail::deny("direct_decay", "a* = 0 requires Delta(1-nu) + Re(mu) < -1 for the direct integral");
  }
  if (space.r < 1.0 || std::isinf(space.r))
    return detail::deny("exponent_range", "a* = 0 requires 1 <= r < inf");
  if (inv.sign_delta_cap == 0) {
    if (inv.sign_re_mu <= 0) return detail::pass("a* = Delta = 0 and Re(mu) <= 0");
    return detail::deny("mu_positive", "a* = Delta = 0 with Re(mu) > 0");
  }
  const double bound = 0.5 - space.gamma_r();
  if (growth <= bound + kZeroTol) return detail::pass("a* = 0 and Delta(1-nu) + Re(mu) <= 1/2 - gamma(r)");
  return detail::deny("growth_bound", "a* = 0 requires Delta(1-nu) + Re(mu) <= 1/2 - gamma(r)");
}

// Frequently used kernels.
namespace kernels {

// H^{1,0}_{0,1}[x | (0,1)] = e^{-x}
inline HParams exponential() {
  HParams h;
  h.m = 1, h.q = 1;
  h.lower = {ParamPair(0.0, Rational(1))};
  return h;
}

// H^{1,1}_{1,1}[x | (1-a,1); (0,1)] = Gamma(a) (1+x)^{-a}
inline HParams beta(cplx a) {
  HParams h;
  h.m = 1, h.n = 1, h.p = 1, h.q = 1;
  h.upper = {ParamPair(1.0 - a, Rational(1))};
  h.lower = {ParamPair(0.0, Rational(1))};
  return h;
}

// H^{1,0}_{0,2}[x | (eta/2,1), (-eta/2,1)] = J_eta(2 sqrt x)
inline HParams bessel(cplx eta) {
  HParams h;
  h.m = 1, h.q = 2;
  h.lower = {ParamPair(eta / 2.0, Rational(1)), ParamPair(-eta / 2.0, Rational(1))};
  return h;
}

}  // namespace kernels

}  // namespace foxh
