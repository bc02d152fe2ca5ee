#pragma once

// Quadrature building blocks: Gauss–Jacobi rules by Golub–Welsch, cached
// Gauss–Legendre rules, and double-exponential integration over finite,
// half-infinite and doubly infinite intervals.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "foxh/error.hpp"
#include "foxh/gamma.hpp"

namespace foxh {

struct QuadRule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

// Nodes and weights for  int_{-1}^{1} (1-x)^a (1+x)^b g(x) dx,  a, b > -1.
inline QuadRule gauss_jacobi(int n, double a, double b) {
  if (n < 1) fail(ErrorKind::domain, "rule_size", "quadrature rule needs n >= 1");
  if (!(a > -1.0 && b > -1.0)) fail(ErrorKind::domain, "jacobi_exponent", "Jacobi exponents must exceed -1");
  const double ab = a + b;
  Eigen::VectorXd diag(n), off(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) {
    const double d = 2.0 * k + ab;
    diag(k) = (k == 0) ? (b - a) / (ab + 2.0) : (b * b - a * a) / (d * (d + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double d = 2.0 * k + ab;
    double beta;
    if (k == 1) {
      beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      beta = 4.0 * k * (k + a) * (k + b) * (k + ab) / (d * d * (d + 1.0) * (d - 1.0));
    }
    off(k - 1) = std::sqrt(beta);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  const double log_mu0 = (ab + 1.0) * std::log(2.0) + boost::math::lgamma(a + 1.0) +
                         boost::math::lgamma(b + 1.0) - boost::math::lgamma(ab + 2.0);
  const double mu0 = std::exp(log_mu0);
  QuadRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int k = 0; k < n; ++k) {
    r.x[k] = es.eigenvalues()(k);
    const double v = es.eigenvectors()(0, k);
    r.w[k] = mu0 * v * v;
  }
  return r;
}

// Cached Gauss–Legendre rules for n = 2^k, 2 <= n <= 1024.
inline const QuadRule& gauss_legendre(int n) {
  static std::array<QuadRule, 11> rules;
  static std::array<std::once_flag, 11> flags;
  int k = 0;
  while ((1 << k) < n) ++k;
  if ((1 << k) != n || k < 1 || k > 10)
    fail(ErrorKind::domain, "rule_size", "Gauss-Legendre cache holds powers of two up to 1024");
  std::call_once(flags[k], [&] { rules[k] = gauss_jacobi(n, 0.0, 0.0); });
  return rules[k];
}

// Per-thread memo of Gauss–Jacobi rules; kernels reuse a handful of (n, a, b).
inline const QuadRule& gauss_jacobi_cached(int n, double a, double b) {
  thread_local std::map<std::tuple<int, double, double>, QuadRule> memo;
  auto key = std::make_tuple(n, a, b);
  auto it = memo.find(key);
  if (it == memo.end()) {
    if (memo.size() > 256) memo.clear();
    it = memo.emplace(key, gauss_jacobi(n, a, b)).first;
  }
  return it->second;
}

struct QuadResult {
  cplx value;
  double error = 0;  // estimated absolute error
  double l1 = 0;     // estimate of the integral of |f|
};

namespace detail {

template <class F>
auto finite_or_zero(F&& f) {
  return [f](double t) -> cplx {
    const cplx v = f(t);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return 0.0;
    return v;
  };
}

inline boost::math::quadrature::tanh_sinh<double>& tanh_sinh_rule() {
  static thread_local boost::math::quadrature::tanh_sinh<double> r(15);
  return r;
}
inline boost::math::quadrature::sinh_sinh<double>& sinh_sinh_rule() {
  static thread_local boost::math::quadrature::sinh_sinh<double> r(10);
  return r;
}
inline boost::math::quadrature::exp_sinh<double>& exp_sinh_rule() {
  static thread_local boost::math::quadrature::exp_sinh<double> r(10);
  return r;
}

}  // namespace detail

// Double-exponential quadrature of a complex integrand on (a, b); either end
// may be infinite. Non-finite integrand values (overflow far out in the tails)
// are treated as zero. `tol` is relative to the L1 norm of the integrand.
inline QuadResult integrate_de(const std::function<cplx(double)>& f, double a, double b, double tol = 1e-12) {
  QuadResult r;
  if (a == b) return r;
  if (a > b) {
    r = integrate_de(f, b, a, tol);
    r.value = -r.value;
    return r;
  }
  auto g = detail::finite_or_zero(f);
  double err = 0, l1 = 0;
  try {
    if (std::isinf(a) && std::isinf(b)) {
      r.value = detail::sinh_sinh_rule().integrate(g, tol, &err, &l1);
    } else if (std::isinf(b)) {
      r.value = detail::exp_sinh_rule().integrate([&](double u) { return g(a + u); }, 0.0,
                                                  std::numeric_limits<double>::infinity(), tol, &err, &l1);
    } else if (std::isinf(a)) {
      r.value = detail::exp_sinh_rule().integrate([&](double u) { return g(b - u); }, 0.0,
                                                  std::numeric_limits<double>::infinity(), tol, &err, &l1);
    } else {
      r.value = detail::tanh_sinh_rule().integrate(g, a, b, tol, &err, &l1);
    }
  } catch (const std::exception& e) {
    fail(ErrorKind::numerical_failure, "quadrature", std::string("double-exponential quadrature failed: ") + e.what());
  }
  r.error = err;
  r.l1 = l1;
  return r;
}

// Same, splitting (a, b) at the given interior points first.
inline QuadResult integrate_de_split(const std::function<cplx(double)>& f, double a, double b,
                                     std::vector<double> cuts, double tol = 1e-12) {
  std::vector<double> pts{a};
  std::sort(cuts.begin(), cuts.end());
  for (double c : cuts)
    if (c > a && c < b && c > pts.back()) pts.push_back(c);
  pts.push_back(b);
  QuadResult total;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const auto piece = integrate_de(f, pts[k], pts[k + 1], tol);
    total.value += piece.value;
    total.error += piece.error;
    total.l1 += piece.l1;
  }
  return total;
}

// Composite Gauss–Legendre on [a, b] with `panels` equal panels of n nodes.
inline cplx integrate_gl(const std::function<cplx(double)>& f, double a, double b, int panels, int n) {
  const auto& rule = gauss_legendre(n);
  const double h = (b - a) / panels;
  cplx acc = 0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int k = 0; k < n; ++k) acc += rule.w[k] * f(mid + 0.5 * h * rule.x[k]);
  }
  return acc * (0.5 * h);
}

}  // namespace foxh
