#pragma once

// Complex log-gamma and digamma.
//
// log_gamma returns the principal branch: the unique analytic continuation of
// the real log Gamma from (0, inf) to the plane cut along the non-positive real
// axis. Stirling's series is used once |z| >= 10, with upward recurrence for
// smaller arguments and the reflection formula for Re z < 1/2.

#include <cmath>
#include <complex>
#include <numbers>

#include "foxh/error.hpp"

namespace foxh {

using cplx = std::complex<double>;

namespace detail {

inline constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640562;
inline constexpr double kStirlingCut = 10.0;

inline bool is_nonpositive_integer(cplx z) {
  if (z.imag() != 0.0 || z.real() > 0.0) return false;
  return z.real() == std::floor(z.real());
}

// log(1 + w) without losing the small-|w| part.
inline cplx log1p_c(cplx w) {
  if (std::abs(w) < 1e-4) {
    // Four terms are enough: |w|^5/5 < 1e-20.
    return w * (1.0 - w * (0.5 - w * (1.0 / 3.0 - w * 0.25)));
  }
  return std::log(1.0 + w);
}

// Stirling series, valid for Re z > 0 and |z| >= kStirlingCut.
inline cplx stirling_log_gamma(cplx z) {
  // B_{2k} / (2k (2k-1)), k = 1..10
  static constexpr double c[] = {1.0 / 12.0,          -1.0 / 360.0,      1.0 / 1260.0,
                                 -1.0 / 1680.0,       1.0 / 1188.0,      -691.0 / 360360.0,
                                 1.0 / 156.0,         -3617.0 / 122400.0, 43867.0 / 244188.0,
                                 -174611.0 / 125400.0};
  const cplx zi = 1.0 / z;
  const cplx z2 = zi * zi;
  cplx sum = c[9];
  for (int k = 8; k >= 0; --k) sum = sum * z2 + c[k];
  sum *= zi;
  return (z - 0.5) * std::log(z) - z + kLogSqrt2Pi + sum;
}

// Re z >= 1/2.
inline cplx log_gamma_right(cplx z) {
  cplx shift = 0.0;
  while (std::abs(z) < kStirlingCut) {
    shift += std::log(z);  // every z + k has Re > 0, so principal logs add continuously
    z += 1.0;
  }
  return stirling_log_gamma(z) - shift;
}

// Re z >= 1/2, via psi(z) = psi(z+N) - sum 1/(z+k).
inline cplx digamma_right(cplx z) {
  cplx shift = 0.0;
  while (std::abs(z) < kStirlingCut) {
    shift += 1.0 / z;
    z += 1.0;
  }
  // B_{2k} / (2k), k = 1..7
  static constexpr double c[] = {1.0 / 12.0,  -1.0 / 120.0,     1.0 / 252.0, -1.0 / 240.0,
                                 1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0};
  const cplx zi = 1.0 / z;
  const cplx z2 = zi * zi;
  cplx sum = c[6];
  for (int k = 5; k >= 0; --k) sum = sum * z2 + c[k];
  sum *= z2;
  return std::log(z) - 0.5 * zi - sum - shift;
}

}  // namespace detail

inline cplx log_gamma(cplx z) {
  if (detail::is_nonpositive_integer(z)) {
    fail(ErrorKind::pole, "gamma_pole", "log_gamma: pole at non-positive integer");
  }
  if (z.real() >= 0.5) return detail::log_gamma_right(z);
  if (z.imag() < 0.0) return std::conj(log_gamma(std::conj(z)));
  // Im z >= 0, Re z < 1/2:
  //   log sin(pi z) = -log 2 + i pi/2 - i pi z + log(1 - e^{2 pi i z})
  // and e^{2 pi i z} has modulus <= 1 here, so the log1p term stays principal.
  constexpr double pi = std::numbers::pi;
  const cplx i(0.0, 1.0);
  const cplx q = std::exp(2.0 * pi * i * z);
  const cplx log_sin = -std::numbers::ln2 + i * (pi / 2.0) - i * pi * z + detail::log1p_c(-q);
  return std::log(pi) - log_sin - detail::log_gamma_right(1.0 - z);
}

inline cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

inline cplx digamma(cplx z) {
  if (detail::is_nonpositive_integer(z)) {
    fail(ErrorKind::pole, "digamma_pole", "digamma: pole at non-positive integer");
  }
  if (z.real() >= 0.5) return detail::digamma_right(z);
  if (z.imag() < 0.0) return std::conj(digamma(std::conj(z)));
  // psi(z) = psi(1-z) - pi cot(pi z); for Im z >= 0 write cot via q = e^{2 pi i z}.
  constexpr double pi = std::numbers::pi;
  const cplx i(0.0, 1.0);
  const cplx q = std::exp(2.0 * pi * i * z);
  const cplx cot = i * (q + 1.0) / (q - 1.0);
  return detail::digamma_right(1.0 - z) - pi * cot;
}

}  // namespace foxh
