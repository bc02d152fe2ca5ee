#pragma once

// J_eta(z) for complex order and real z > 0: ascending series up to z = 12
// (and wherever |eta| is comparable to z), Hankel's asymptotic expansion beyond.

#include <cmath>
#include <complex>
#include <limits>
#include <algorithm>
#include <numbers>
#include <vector>

#include "foxh/error.hpp"
#include "foxh/gamma.hpp"
#include "foxh/gamma_symbol.hpp"

namespace foxh {

inline constexpr double kBesselSeam = 12.0;

// 1/Gamma(z), zero at the poles.
inline cplx rgamma(cplx z) {
  if (GammaSymbol::near_pole(z)) return 0.0;
  return std::exp(-log_gamma(z));
}

inline cplx bessel_j_series(cplx eta, double z) {
  // J_{-n} = (-1)^n J_n
  const double rn = std::round(eta.real());
  if (rn < 0 && std::abs(eta - cplx(rn, 0.0)) < 1e-14) {
    const int n = static_cast<int>(-rn);
    return (n % 2 ? -1.0 : 1.0) * bessel_j_series(static_cast<double>(n), z);
  }
  const double q = -0.25 * z * z;
  cplx term = 1.0, sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * (eta + static_cast<double>(k)));
    sum += term;
    if (k > 4 && std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return std::exp(eta * std::log(0.5 * z)) * rgamma(eta + 1.0) * sum;
}

namespace detail {

inline cplx hankel_expansion(cplx eta, double z) {
  const cplx mu = 4.0 * eta * eta;
  cplx p = 1.0, q = 0.0, a = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 80; ++k) {
    const double odd = 2.0 * k - 1.0;
    a *= (mu - odd * odd) / (k * 8.0 * z);
    const double mag = std::abs(a);
    if (mag > last) break;  // the series is asymptotic: stop at the smallest term
    last = mag;
    // terms alternate in pairs: P gets even k with signs +,-,..., Q gets odd k
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) p += sign * a;
    else q += sign * a;
    if (mag < 1e-17) break;
  }
  const cplx w = z - 0.5 * std::numbers::pi * eta - 0.25 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * z)) * (p * std::cos(w) - q * std::sin(w));
}

}  // namespace detail

// Hankel's expansion at a reduced order |Re eta0| <= 1/2, then three-term
// recurrence in the order (stable while |eta| < z).
inline cplx bessel_j_asymptotic(cplx eta, double z) {
  const double n = std::round(eta.real());
  if (n == 0.0) return detail::hankel_expansion(eta, z);
  const cplx eta0 = eta - n;
  cplx a = detail::hankel_expansion(eta0, z);
  const int steps = static_cast<int>(std::abs(n));
  const double dir = n > 0 ? 1.0 : -1.0;
  cplx b = detail::hankel_expansion(eta0 + dir, z);
  cplx order = eta0 + dir;
  for (int k = 1; k < steps; ++k) {
    // J_{v+1} = (2v/z) J_v - J_{v-1};  J_{v-1} = (2v/z) J_v - J_{v+1}
    const cplx c = 2.0 * order / z * b - a;
    a = b;
    b = c;
    order += dir;
  }
  return b;
}

inline cplx bessel_j(cplx eta, double z) {
  if (!(z >= 0.0) || !std::isfinite(z)) fail(ErrorKind::domain, "bessel_argument", "J needs a finite z >= 0");
  if (z == 0.0) {
    if (eta == 0.0) return 1.0;
    if (eta.real() > 0.0) return 0.0;
    fail(ErrorKind::domain, "bessel_argument", "J_eta(0) is singular for Re eta <= 0, eta != 0");
  }
  if (z <= kBesselSeam || std::abs(eta) + 1.0 >= z) return bessel_j_series(eta, z);
  return bessel_j_asymptotic(eta, z);
}

// Positive zeros of J_eta for Re eta > -1, McMahon's expansion in Re eta
// refined by Newton's method when eta is real. Used only to partition
// oscillatory integrals, so exactness is not required.
inline std::vector<double> bessel_zeros(cplx eta, int count) {
  std::vector<double> zs;
  zs.reserve(count);
  const double e = eta.real();
  const double mu = 4.0 * e * e;
  const bool real_order = std::abs(eta.imag()) < 1e-14;
  for (int k = 1; k <= count; ++k) {
    const double b = (k + 0.5 * e - 0.25) * std::numbers::pi;
    double z = b - (mu - 1.0) / (8.0 * b) - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * std::pow(8.0 * b, 3));
    if (real_order && z > 0.5) {
      for (int it = 0; it < 30; ++it) {
        const double j = bessel_j(e, z).real();
        const double dj = 0.5 * (bessel_j(e - 1.0, z) - bessel_j(e + 1.0, z)).real();
        if (dj == 0.0) break;
        const double step = j / dj;
        z -= std::clamp(step, -0.5, 0.5);
        if (std::abs(step) < 1e-14 * z) break;
      }
    }
    if (!(z > 0.0) || (!zs.empty() && z <= zs.back() + 0.5)) z = zs.empty() ? b : zs.back() + std::numbers::pi;
    zs.push_back(z);
  }
  return zs;
}

}  // namespace foxh
