#pragma once

// Building blocks of the factorization chains: inverse Mellin transform on a
// line, the elementary operators M_zeta, W_d, R, Erdélyi–Kober fractional
// integrals, the modified Hankel and Laplace transforms, and L_{nu,r} norms.

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "foxh/bessel.hpp"
#include "foxh/error.hpp"
#include "foxh/functions.hpp"
#include "foxh/gamma_symbol.hpp"
#include "foxh/line_integral.hpp"
#include "foxh/quadrature.hpp"

namespace foxh {

// ---- inverse Mellin ----------------------------------------------------

struct InverseResult {
  cplx value;
  double error = 0;
  double half_height = 0;
};

inline InverseResult mellin_inverse_detail(const std::function<cplx(cplx)>& F, double gamma, double x) {
  if (!(x > 0.0)) fail(ErrorKind::domain, "x_not_positive", "x must be positive");
  const auto tail = scan_line_decay(F, gamma);
  if (tail.peak == 0.0) return {0.0, 0.0, 0.0};
  LineSynthesis line(F, gamma, tail.half_height + 1.0);
  const auto r = line.eval_adaptive(std::log(x), 0.0);
  return {r.value, r.error + tail.tail_magnitude * std::pow(x, -gamma), line.half_height()};
}

inline cplx mellin_inverse_numeric(const std::function<cplx(cplx)>& F, double gamma, double x) {
  return mellin_inverse_detail(F, gamma, x).value;
}

inline cplx mellin_inverse_numeric(const GammaSymbol& F, double gamma, double x) {
  return mellin_inverse_detail([&F](cplx s) { return F.eval(s); }, gamma, x).value;
}

// ---- elementary operators ----------------------------------------------

enum class ElementaryKind { M, W, R };

inline Function op_elementary(ElementaryKind kind, cplx param, const Function& f) {
  auto in = std::make_shared<const Function>(f);
  Function g;
  g.is_zero = f.is_zero;
  switch (kind) {
    case ElementaryKind::M: {
      // x^zeta f(x)
      g.label = "M[" + std::to_string(param.real()) + "](" + f.label + ")";
      g.f = [in, param](double x) { return std::exp(param * std::log(x)) * (*in)(x); };
      g.nu_lo = f.nu_lo - param.real();
      g.nu_hi = f.nu_hi - param.real();
      g.breakpoints = f.breakpoints;
      g.support_lo = f.support_lo;
      g.support_hi = f.support_hi;
      if (f.mellin) g.mellin = [in, param](cplx s) { return in->mellin(s + param); };
      break;
    }
    case ElementaryKind::W: {
      // f(x / d)
      const double d = param.real();
      if (!(d > 0.0) || param.imag() != 0.0)
        fail(ErrorKind::domain, "bad_dilation", "W_d needs a real d > 0");
      g.label = "W[" + std::to_string(d) + "](" + f.label + ")";
      g.f = [in, d](double x) { return (*in)(x / d); };
      g.nu_lo = f.nu_lo;
      g.nu_hi = f.nu_hi;
      for (double b : f.breakpoints) g.breakpoints.push_back(b * d);
      g.support_lo = f.support_lo * d;
      g.support_hi = f.support_hi * d;
      if (f.mellin) g.mellin = [in, d](cplx s) { return std::exp(s * std::log(d)) * in->mellin(s); };
      break;
    }
    case ElementaryKind::R: {
      // (1/x) f(1/x)
      g.label = "R(" + f.label + ")";
      g.f = [in](double x) { return (*in)(1.0 / x) / x; };
      g.nu_lo = 1.0 - f.nu_hi;
      g.nu_hi = 1.0 - f.nu_lo;
      for (double b : f.breakpoints) g.breakpoints.push_back(1.0 / b);
      g.support_lo = std::isfinite(f.support_hi) ? 1.0 / f.support_hi : 0.0;
      g.support_hi = f.support_lo > 0.0 ? 1.0 / f.support_lo : kInf;
      if (f.mellin) g.mellin = [in](cplx s) { return in->mellin(1.0 - s); };
      break;
    }
  }
  return g;
}

// ---- Erdélyi–Kober -----------------------------------------------------

enum class EKSide { left, right };

namespace detail {

// int_{1/2}^1 (1-u)^{alpha-1} g(u) du, g given through (u, log u).
struct EKIntegrand {
  cplx alpha;
  std::function<cplx(double u, double log_u)> g;
  std::vector<double> u_cuts;
};

// Gauss–Jacobi in y = 4u - 3 with weight (1-y)^{Re alpha - 1}.
inline QuadResult ek_gauss_jacobi(const EKIntegrand& in, int n) {
  const auto& rule = gauss_jacobi_cached(n, in.alpha.real() - 1.0, 0.0);
  const cplx scale = std::exp(-in.alpha * std::log(4.0));
  QuadResult r;
  for (int k = 0; k < n; ++k) {
    const double u = 0.75 + 0.25 * rule.x[k];
    const cplx osc = std::exp(cplx(0.0, in.alpha.imag()) * std::log1p(-rule.x[k]));
    const cplx v = scale * rule.w[k] * osc * in.g(u, std::log(u));
    r.value += v;
    r.l1 += std::abs(v);
  }
  return r;
}

// Substitution 1 - u = v^{1/Re alpha} removes the weight; tanh-sinh on the
// pieces between mapped cuts.
inline QuadResult ek_tanh_sinh(const EKIntegrand& in, double tol) {
  const double a1 = in.alpha.real();
  const double ia = in.alpha.imag();
  auto value_at = [&](double v) -> cplx {
    if (!(v > 0.0)) return 0.0;
    const double log_omu = std::log(v) / a1;
    const double u = -std::expm1(log_omu);
    if (!(u > 0.0)) return 0.0;
    const cplx val = std::exp(cplx(0.0, ia) * log_omu) * in.g(u, std::log(u)) / a1;
    return std::isfinite(val.real()) && std::isfinite(val.imag()) ? val : 0.0;
  };
  const double v_hi = std::pow(0.5, a1);
  std::vector<double> cuts;
  for (double u : in.u_cuts)
    if (u > 0.5 && u < 1.0) cuts.push_back(std::pow(1.0 - u, a1));
  return integrate_de_split(value_at, 0.0, v_hi, cuts, tol);
}

}  // namespace detail

struct EKResult {
  cplx value;
  double error = 0;
  std::string method;
};

// (1/2, 1) carries the (1-u)^{alpha-1} endpoint and goes to Gauss–Jacobi
// (tanh-sinh when f has a kink there); (0, 1/2) is integrated in log u, where
// features of f at t ~ 1 sit near log u = -sigma log x (left) whatever the size of x.
inline EKResult ek_fractional_detail(EKSide side, cplx alpha, double sigma, cplx eta, const Function& f, double x) {
  if (!(alpha.real() > 0.0)) fail(ErrorKind::domain, "alpha_not_positive", "Erdelyi-Kober operators need Re alpha > 0");
  if (!(sigma > 0.0)) fail(ErrorKind::domain, "sigma_not_positive", "Erdelyi-Kober operators need sigma > 0");
  if (!(x > 0.0)) fail(ErrorKind::domain, "x_not_positive", "x must be positive");
  if (f.is_zero) return {0.0, 0.0, "zero"};
  // near u = 0 the integrand behaves like t^{sigma(1+eta)} f(t) dt/t (left) or t^{-sigma eta} f(t) dt/t (right)
  if (side == EKSide::left ? !(sigma * (1.0 + eta.real()) > f.nu_lo) : !(-sigma * eta.real() < f.nu_hi))
    fail(ErrorKind::hypothesis_failure, "divergent_integral",
         "Erdelyi-Kober integral diverges at u = 0 for " + f.label);
  const double lx = std::log(x);
  const double dir = side == EKSide::left ? 1.0 : -1.0;  // log t = log x + dir * log u / sigma
  const cplx lead = side == EKSide::left ? eta : eta - 1.0;
  detail::EKIntegrand in;
  in.alpha = alpha;
  in.g = [&f, lead, lx, sigma, dir](double, double lu) { return std::exp(lead * lu) * f(std::exp(lx + dir * lu / sigma)); };
  std::vector<double> log_u_cuts;
  auto add_cut = [&](double t) {
    if (t > 0.0 && std::isfinite(t)) log_u_cuts.push_back(dir * sigma * (std::log(t) - lx));
  };
  for (double bp : f.breakpoints) add_cut(bp);
  add_cut(f.support_hi);
  add_cut(f.support_lo);
  for (double lu : log_u_cuts) in.u_cuts.push_back(std::exp(lu));

  // (1/2, 1)
  bool kinks = false;
  for (double u : in.u_cuts) kinks = kinks || (u > 0.5 && u < 1.0);
  QuadResult upper;
  std::string method = "gauss-jacobi";
  bool accepted = false;
  if (!kinks) {
    const auto q32 = detail::ek_gauss_jacobi(in, 32);
    const auto q64 = detail::ek_gauss_jacobi(in, 64);
    const double diff = std::abs(q64.value - q32.value);
    if (std::isfinite(diff) && diff <= std::max(1e-13 * q64.l1, 1e-300)) {
      upper = q64;
      upper.error = diff;
      accepted = true;
    }
  }
  if (!accepted) {
    upper = detail::ek_tanh_sinh(in, 1e-13);
    method = "tanh-sinh";
  }

  // (0, 1/2) in w = log u
  const double w_hi = -std::numbers::ln2;
  auto lower_g = [&](double w) -> cplx {
    const double omu = -std::expm1(w);
    return std::exp((alpha - 1.0) * std::log(omu) + w) * in.g(std::exp(w), w);
  };
  const auto lower = integrate_tau_between(lower_g, -dir * sigma * lx, w_hi, -kInf, w_hi, log_u_cuts, 1e-13);

  const cplx total = upper.value + lower.value;
  const double err = upper.error + lower.error;
  if (!std::isfinite(std::abs(total)) || !std::isfinite(err))
    fail(ErrorKind::numerical_failure, "divergent_integral", "Erdelyi-Kober integral diverges");
  const cplx inv_gamma = rgamma(alpha);
  return {total * inv_gamma, err * std::abs(inv_gamma), method};
}

inline cplx ek_fractional(EKSide side, cplx alpha, double sigma, cplx eta, const Function& f, double x) {
  return ek_fractional_detail(side, alpha, sigma, eta, f, x).value;
}

inline Function ek_operator(EKSide side, cplx alpha, double sigma, cplx eta, const Function& f) {
  if (!(alpha.real() > 0.0)) fail(ErrorKind::domain, "alpha_not_positive", "Erdelyi-Kober operators need Re alpha > 0");
  if (!(sigma > 0.0)) fail(ErrorKind::domain, "sigma_not_positive", "Erdelyi-Kober operators need sigma > 0");
  auto in = std::make_shared<const Function>(f);
  Function g;
  g.label = std::string(side == EKSide::left ? "I0+" : "I-") + "(" + f.label + ")";
  g.f = [in, side, alpha, sigma, eta](double x) { return ek_fractional(side, alpha, sigma, eta, *in, x); };
  g.is_zero = f.is_zero;
  g.breakpoints = f.breakpoints;
  if (side == EKSide::left) {
    g.nu_lo = f.nu_lo;
    g.nu_hi = std::min(f.nu_hi, sigma * (1.0 + eta.real()));
    g.support_lo = f.support_lo;
  } else {
    g.nu_lo = std::max(f.nu_lo, -sigma * eta.real());
    g.nu_hi = f.nu_hi;
    g.support_hi = f.support_hi;
  }
  return g;
}

// ---- modified Hankel ---------------------------------------------------

namespace detail {

// Wynn's epsilon algorithm on partial sums; returns the last even-column entry.
inline cplx wynn_epsilon(const std::vector<cplx>& s) {
  const std::size_t n = s.size();
  if (n < 3) return s.empty() ? cplx(0.0) : s.back();
  std::vector<cplx> prev(n + 1, 0.0), cur(s);
  cplx best = s.back();
  for (std::size_t k = 1; cur.size() > 1; ++k) {
    std::vector<cplx> next(cur.size() - 1);
    for (std::size_t j = 0; j + 1 < cur.size(); ++j) {
      const cplx d = cur[j + 1] - cur[j];
      if (std::abs(d) <= 1e-300) return (k % 2 == 1) ? cur[j + 1] : best;
      next[j] = prev[j + 1] + 1.0 / d;
    }
    if (k % 2 == 0) best = next.back();
    prev = std::move(cur);
    cur = std::move(next);
  }
  return best;
}

}  // namespace detail

struct HankelResult {
  cplx value;
  double error = 0;
  int intervals = 0;
  bool accelerated = false;
};

inline HankelResult hankel_mod_detail(double kappa, cplx eta, const Function& f, double x) {
  if (kappa == 0.0 || !std::isfinite(kappa)) fail(ErrorKind::domain, "kappa_zero", "Hankel transform needs kappa != 0");
  if (!(eta.real() > -1.0)) fail(ErrorKind::domain, "eta_range", "Hankel transform needs Re eta > -1");
  if (!(x > 0.0)) fail(ErrorKind::domain, "x_not_positive", "x must be positive");
  if (f.is_zero) return {};
  const double ak = std::abs(kappa);
  // u = |kappa| (x t)^{1/kappa}:  Hf(x) = (1/x) int_0^inf (u/|kappa|)^{kappa/2} J_eta(u) f((u/|kappa|)^kappa / x) du
  auto t_of_u = [=](double u) { return std::exp(kappa * std::log(u / ak)) / x; };
  auto u_of_t = [=](double t) { return ak * std::exp(std::log(x * t) / kappa); };
  auto g = [&, kappa, ak](double u) -> cplx {
    if (!(u > 0.0)) return 0.0;
    return std::exp(0.5 * kappa * std::log(u / ak)) * bessel_j(eta, u) * f(t_of_u(u)) / x;
  };
  double u_lo = 0.0, u_hi = kInf;
  if (kappa > 0) {
    if (f.support_lo > 0.0) u_lo = u_of_t(f.support_lo);
    if (std::isfinite(f.support_hi)) u_hi = u_of_t(f.support_hi);
  } else {
    if (f.support_lo > 0.0) u_hi = u_of_t(f.support_lo);
    if (std::isfinite(f.support_hi)) u_lo = u_of_t(f.support_hi);
  }
  std::vector<double> cuts;
  for (double b : f.breakpoints) cuts.push_back(u_of_t(b));
  std::sort(cuts.begin(), cuts.end());

  constexpr int kMaxIntervals = 20000;
  const auto zeros = bessel_zeros(eta, 64);
  auto zero_at = [&](int k) {  // k-th positive zero, k >= 0
    if (k < static_cast<int>(zeros.size())) return zeros[k];
    return zeros.back() + (k - static_cast<int>(zeros.size()) + 1) * std::numbers::pi;
  };
  auto piece = [&](double a, double b) -> QuadResult {
    std::vector<double> inner;
    for (double c : cuts)
      if (c > a && c < b) inner.push_back(c);
    if (a == 0.0) {
      // in log u: f's own scale t ~ 1 may sit many decades below the first zero
      std::vector<double> log_cuts;
      for (double c : inner) log_cuts.push_back(std::log(c));
      auto gw = [&](double w) { return g(std::exp(w)) * std::exp(w); };
      return integrate_tau_between(gw, std::log(u_of_t(1.0)), std::log(b), -kInf, std::log(b), log_cuts, 1e-14);
    }
    if (!inner.empty()) return integrate_de_split(g, a, b, inner, 1e-14);
    QuadResult q;
    q.value = integrate_gl(g, a, b, 1, 32);
    const cplx coarse = integrate_gl(g, a, b, 1, 16);
    q.error = std::abs(q.value - coarse);
    return q;
  };

  HankelResult out;
  int k = 0;
  while (zero_at(k) <= u_lo) ++k;
  double a = u_lo;
  std::vector<cplx> sums;
  cplx total = 0;
  double qerr = 0, scale = 0;
  int quiet = 0;
  cplx last_est = 0, prev_est = 0;
  for (int it = 0; it < kMaxIntervals; ++it, ++k) {
    const double b = std::min(zero_at(k), u_hi);
    const auto q = piece(a, b);
    total += q.value;
    qerr += q.error;
    scale = std::max(scale, std::abs(total));
    sums.push_back(total);
    out.intervals = it + 1;
    if (b >= u_hi) {
      out.value = total;
      out.error = qerr;
      return out;
    }
    a = b;
    quiet = std::abs(q.value) <= 1e-16 * std::max(scale, 1e-300) ? quiet + 1 : 0;
    if (quiet >= 3 && it >= 4) {
      out.value = total;
      out.error = qerr + 3.0 * std::abs(q.value);
      return out;
    }
    if (it >= 8 && it % 2 == 0) {
      const std::size_t w = std::min<std::size_t>(sums.size(), 41);
      const std::vector<cplx> tail(sums.end() - w, sums.end());
      const cplx est = detail::wynn_epsilon(tail);
      const double d1 = std::abs(est - last_est), d2 = std::abs(last_est - prev_est);
      if (it >= 14 && d1 <= 1e-13 * scale && d2 <= 1e-13 * scale) {
        out.value = est;
        out.error = qerr + d1 + d2;
        out.accelerated = true;
        return out;
      }
      prev_est = last_est;
      last_est = est;
    }
  }
  fail(ErrorKind::numerical_failure, "hankel_not_converged", "Hankel tail did not converge");
}

inline cplx hankel_mod(double kappa, cplx eta, const Function& f, double x) {
  return hankel_mod_detail(kappa, eta, f, x).value;
}

inline Function hankel_operator(double kappa, cplx eta, const Function& f) {
  if (kappa == 0.0) fail(ErrorKind::domain, "kappa_zero", "Hankel transform needs kappa != 0");
  auto in = std::make_shared<const Function>(f);
  Function g;
  g.label = "H[" + std::to_string(kappa) + "](" + f.label + ")";
  g.f = [in, kappa, eta](double x) { return hankel_mod(kappa, eta, *in, x); };
  g.is_zero = f.is_zero;
  // L_{nu,2} -> L_{1-nu,2} for 0 <= kappa(nu - 1/2) < Re eta + 1
  double lo = f.nu_lo, hi = f.nu_hi;
  const double edge = 0.5 + (eta.real() + 1.0) / kappa;
  if (kappa > 0) lo = std::max(lo, 0.5), hi = std::min(hi, edge);
  else lo = std::max(lo, edge), hi = std::min(hi, 0.5);
  g.nu_lo = 1.0 - hi;
  g.nu_hi = 1.0 - lo;
  return g;
}

// ---- modified Laplace --------------------------------------------------

inline QuadResult laplace_mod_detail(double kappa, cplx alpha, const Function& f, double x) {
  if (kappa == 0.0 || !std::isfinite(kappa)) fail(ErrorKind::domain, "kappa_zero", "Laplace transform needs kappa != 0");
  if (!(x > 0.0)) fail(ErrorKind::domain, "x_not_positive", "x must be positive");
  if (f.is_zero) return {};
  // the exponential damps only one end: t -> inf for kappa > 0, t -> 0 for kappa < 0
  if (kappa > 0 ? !(1.0 - alpha.real() > f.nu_lo) : !(1.0 - alpha.real() < f.nu_hi))
    fail(ErrorKind::hypothesis_failure, "divergent_integral", "Laplace integral diverges for " + f.label);
  const double lx = std::log(x), ak = std::abs(kappa);
  // t = e^tau: (xt)^{-alpha} exp(-|kappa| (xt)^{1/kappa}) f(t) t
  auto g = [&, lx, ak, kappa, alpha](double tau) -> cplx {
    const double lxt = lx + tau;
    const double decay = ak * std::exp(lxt / kappa);
    if (decay > 745.0) return 0.0;
    return std::exp(-alpha * lxt - decay + tau) * f(std::exp(tau));
  };
  return integrate_tau_between(g, -lx, 0.0, log_support_lo(f), log_support_hi(f), log_breakpoints(f), 1e-13);
}

inline cplx laplace_mod(double kappa, cplx alpha, const Function& f, double x) {
  return laplace_mod_detail(kappa, alpha, f, x).value;
}

inline Function laplace_operator(double kappa, cplx alpha, const Function& f) {
  if (kappa == 0.0) fail(ErrorKind::domain, "kappa_zero", "Laplace transform needs kappa != 0");
  auto in = std::make_shared<const Function>(f);
  Function g;
  g.label = "L[" + std::to_string(kappa) + "," + std::to_string(alpha.real()) + "](" + f.label + ")";
  g.f = [in, kappa, alpha](double x) { return laplace_mod(kappa, alpha, *in, x); };
  g.is_zero = f.is_zero;
  double lo = f.nu_lo, hi = f.nu_hi;
  const double edge = 1.0 - alpha.real();
  if (kappa > 0) hi = std::min(hi, edge);
  else lo = std::max(lo, edge);
  g.nu_lo = 1.0 - hi;
  g.nu_hi = 1.0 - lo;
  return g;
}

// ---- norms -------------------------------------------------------------

struct NormResult {
  double value = 0;
  bool infinite = false;
};

// (int |t^nu f(t)|^r dt/t)^{1/r}; r = inf gives the (sampled) sup of |t^nu f|.
inline NormResult lnur_norm(const Function& f, double nu, double r) {
  if (!(r >= 1.0)) fail(ErrorKind::domain, "bad_exponent", "norm exponent must satisfy r >= 1");
  if (f.is_zero) return {};
  const double lo = log_support_lo(f), hi = log_support_hi(f);
  if (std::isinf(r)) {
    if (nu < f.nu_lo || nu > f.nu_hi) return {kInf, true};
    const double a = std::max(lo, -60.0), b = std::min(hi, 60.0);
    double best = 0;
    const int n = 24000;
    for (int k = 0; k <= n; ++k) {
      const double tau = a + (b - a) * k / n;
      best = std::max(best, std::abs(std::exp(nu * tau) * f(std::exp(tau))));
    }
    return {best, false};
  }
  if (!f.in_witness(nu)) return {kInf, true};
  auto g = [&](double tau) { return cplx(std::pow(std::abs(std::exp(nu * tau) * f(std::exp(tau))), r)); };
  const double center = (hi - lo < 2.0) ? 0.5 * (lo + hi) : std::clamp(0.0, lo + 1.0, hi - 1.0);
  const auto q = integrate_tau(g, center, lo, hi, log_breakpoints(f), 1e-14);
  return {std::pow(q.value.real(), 1.0 / r), false};
}

}  // namespace foxh
