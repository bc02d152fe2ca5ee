#pragma once

// Zeros of a GammaSymbol near the line Re s = 1 - nu. Height-1 rectangles tile
// the window; the winding number of the value around each rectangle counts
// zeros minus poles inside, from wrapped phase increments between boundary
// samples (refined until every step turns by less than pi/4). Zeros are then
// polished by Muller's method.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include <json.hpp>

#include "foxh/error.hpp"
#include "foxh/gamma_symbol.hpp"
#include "foxh/hparams.hpp"

namespace foxh {

inline constexpr double kDeflationTol = 1e-10;
inline constexpr double kOnLineTol = 1e-9;

struct SymbolZero {
  cplx location;
  int multiplicity = 1;
};

struct ZeroReport {
  double line = 0;    // Re s = 1 - nu
  double window = 0;  // |Im s| <= T
  double half_width = 0;
  std::vector<SymbolZero> zeros;  // inside the rectangles, on or near the line
  int winding_total = 0;
  bool in_exceptional_set = false;  // some zero lies on the line
};

namespace detail {

// Gamma poles of `factors` (arguments at non-positive integers) inside the
// box [lo, hi].
inline int poles_in_box(const std::vector<GammaFactor>& factors, cplx lo, cplx hi) {
  int count = 0;
  for (const auto& f : factors) {
    if (f.slope == 0.0) continue;
    // s_k = (-k - offset) / slope
    const double a = -f.offset.real() - f.slope * lo.real(), b = -f.offset.real() - f.slope * hi.real();
    const double kmin = std::max(0.0, std::ceil(std::min(a, b))), kmax = std::floor(std::max(a, b));
    for (double k = kmin; k <= kmax && k - kmin < 1e6; k += 1.0) {
      const cplx sk = (-k - f.offset) / f.slope;
      if (sk.real() >= lo.real() && sk.real() <= hi.real() && sk.imag() >= lo.imag() && sk.imag() <= hi.imag())
        ++count;
    }
  }
  return count;
}

// Distance from the segment [a, b] to the nearest point where a factor's
// argument is a non-positive integer.
inline double singular_clearance(const std::vector<GammaFactor>& factors, cplx a, cplx b) {
  double best = kInf;
  for (const auto& f : factors) {
    if (f.slope == 0.0) continue;
    const cplx za = f.arg(a), zb = f.arg(b), d = zb - za;
    const double len2 = std::norm(d);
    const double kmin = std::ceil(std::min(za.real(), zb.real()) - 1.0);
    const double kmax = std::floor(std::max(za.real(), zb.real()) + 1.0);
    for (double k = std::min(kmax, 0.0); k >= kmin && k >= kmax - 1e6 && k <= 0.0; k -= 1.0) {
      const double t = len2 > 0 ? std::clamp(std::real((cplx(k) - za) * std::conj(d)) / len2, 0.0, 1.0) : 0.0;
      best = std::min(best, std::abs(za + t * d - k) / std::abs(f.slope));
    }
  }
  return best;
}

inline double singular_clearance(const GammaSymbol& g, cplx a, cplx b) {
  return std::min(singular_clearance(g.numerator, a, b), singular_clearance(g.denominator, a, b));
}

// Winding of g along the closed polygon through `corners`.
inline double winding(const GammaSymbol& g, const std::vector<cplx>& corners) {
  double total = 0;
  for (std::size_t e = 0; e < corners.size(); ++e) {
    const cplx a = corners[e], b = corners[(e + 1) % corners.size()];
    int n = 32;
    while (true) {
      double acc = 0;
      bool fine = true;
      cplx prev = g.eval_log(a);
      for (int k = 1; k <= n; ++k) {
        const cplx cur = g.eval_log(a + (b - a) * (static_cast<double>(k) / n));
        double step = std::remainder(cur.imag() - prev.imag(), 2.0 * std::numbers::pi);
        if (std::abs(step) > std::numbers::pi / 4 || !std::isfinite(cur.real())) fine = false;
        acc += step;
        prev = cur;
      }
      if (fine) {
        total += acc;
        break;
      }
      if (n >= (1 << 16)) fail(ErrorKind::numerical_failure, "winding_unresolved", "argument increment not resolved");
      n *= 2;
    }
  }
  return total / (2.0 * std::numbers::pi);
}

// Muller iteration on the value; returns nullopt when it leaves the box.
inline std::optional<cplx> muller(const GammaSymbol& g, cplx x0, cplx x1, cplx x2, cplx lo, cplx hi) {
  auto f = [&](cplx s) { return g.eval(s); };
  cplx f0 = f(x0), f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 100; ++it) {
    const cplx h1 = x1 - x0, h2 = x2 - x1;
    const cplx d1 = (f1 - f0) / h1, d2 = (f2 - f1) / h2;
    const cplx a = (d2 - d1) / (h2 + h1);
    const cplx b = a * h2 + d2;
    const cplx disc = std::sqrt(b * b - 4.0 * f2 * a);
    const cplx den = std::abs(b + disc) > std::abs(b - disc) ? b + disc : b - disc;
    const cplx dx = den == 0.0 ? cplx(1e-3) : -2.0 * f2 / den;
    const cplx x3 = x2 + dx;
    if (!std::isfinite(x3.real()) || !std::isfinite(x3.imag())) return std::nullopt;
    x0 = x1, f0 = f1, x1 = x2, f1 = f2, x2 = x3, f2 = f(x3);
    if (std::abs(dx) <= 1e-14 * std::max(1.0, std::abs(x3)) || f2 == 0.0) break;
  }
  if (x2.real() < lo.real() || x2.real() > hi.real() || x2.imag() < lo.imag() || x2.imag() > hi.imag())
    return std::nullopt;
  return x2;
}

}  // namespace detail

// `half_width` is the horizontal half-extent of the search rectangles about
// the line; zeros off the line are reported but do not make nu exceptional.
inline ZeroReport find_zeros_on_line(const GammaSymbol& sym, double nu, double T, double half_width = 0.25,
                                     std::optional<std::pair<double, double>> strip = std::nullopt) {
  ZeroReport rep;
  rep.line = 1.0 - nu;
  rep.window = T;
  rep.half_width = half_width;
  const double c = rep.line;
  if (!(T > 0.0)) fail(ErrorKind::domain, "window", "window height must be positive");
  if (strip && !(strip->first < c && c < strip->second))
    fail(ErrorKind::hypothesis_failure, "outside_strip", "line Re s = 1-nu is not inside the strip (alpha, beta)");

  // a numerator pole on the line makes the value infinite there
  for (const auto& f : sym.numerator) {
    if (f.slope == 0.0) continue;
    // poles at c + i t: offset + slope (c + i t) = -k, needs Im = 0
    const cplx z0 = f.arg(c);
    if (std::abs(z0.imag()) > 1e-12) {
      const double t = -z0.imag() / f.slope;
      if (std::abs(t) > T) continue;
      const cplx z = f.arg(cplx(c, t));
      const double k = std::round(z.real());
      if (k <= 0.5 && std::abs(z.real() - k) <= 1e-9)
        fail(ErrorKind::pole, "pole_on_line", "a numerator factor has a pole on Re s = 1-nu");
    } else {
      const double k = std::round(z0.real());
      if (k <= 0.5 && std::abs(z0.real() - k) <= 1e-9)
        fail(ErrorKind::pole, "pole_on_line", "a numerator factor has a pole on Re s = 1-nu");
    }
  }

  // horizontal cuts at unit spacing, nudged off poles and zeros
  std::vector<double> cuts;
  const int n_rect = std::max(1, static_cast<int>(std::ceil(2.0 * T)));
  for (int k = 0; k <= n_rect; ++k) cuts.push_back(-T + 2.0 * T * k / n_rect);
  auto clear = [&](double y) {
    return detail::singular_clearance(sym, cplx(c - half_width, y), cplx(c + half_width, y)) > 1e-3;
  };
  for (int k = 1; k < n_rect; ++k)
    for (double nudge : {0.0, 0.013, -0.017, 0.029, -0.031})
      if (clear(cuts[k] + nudge)) {
        cuts[k] += nudge;
        break;
      }
  const double xl = c - half_width, xr = c + half_width;
  for (double x : {xl, xr})
    if (detail::singular_clearance(sym, cplx(x, -T), cplx(x, T)) <= 1e-3)
      fail(ErrorKind::numerical_failure, "singularity_on_contour", "rectangle side passes through a pole or zero");

  std::vector<cplx> found;
  for (int k = 0; k < n_rect; ++k) {
    const double y0 = cuts[k], y1 = cuts[k + 1];
    const std::vector<cplx> box{{xl, y0}, {xr, y0}, {xr, y1}, {xl, y1}};
    const double w = detail::winding(sym, box);
    const int net = static_cast<int>(std::lround(w));
    if (std::abs(w - net) > 0.1)
      fail(ErrorKind::numerical_failure, "winding_not_integer", "argument-principle count is not near an integer");
    // winding = zeros - poles; the poles are known from the numerator factors
    const int count = net + detail::poles_in_box(sym.numerator, box[0], box[2]);
    rep.winding_total += count;
    if (count <= 0) continue;
    // seed Muller from a grid; collect distinct roots until the count is met
    std::vector<cplx> roots;
    for (int a = 0; a < 5 && static_cast<int>(roots.size()) < count; ++a)
      for (int b = 0; b < 5 && static_cast<int>(roots.size()) < count; ++b) {
        const cplx x0(xl + (a + 0.5) * (xr - xl) / 5.0, y0 + (b + 0.5) * (y1 - y0) / 5.0);
        const auto z = detail::muller(sym, x0, x0 + cplx(0.01, 0.0), x0 + cplx(0.0, 0.01), box[0], box[2]);
        if (!z || std::abs(sym.eval(*z)) > kDeflationTol) continue;
        bool dup = false;
        for (const auto& r : roots) dup |= std::abs(r - *z) < 1e-7;
        if (!dup) roots.push_back(*z);
      }
    for (const auto& r : roots) found.push_back(r);
    if (static_cast<int>(roots.size()) != count) {
      // leftover count: multiple root at one of the located points
      if (roots.size() == 1) {
        rep.zeros.push_back({roots[0], count});
        continue;
      }
      fail(ErrorKind::numerical_failure, "zero_count_mismatch", "refinement found fewer zeros than the winding count");
    }
    for (const auto& r : roots) rep.zeros.push_back({r, 1});
  }
  std::sort(rep.zeros.begin(), rep.zeros.end(),
            [](const SymbolZero& a, const SymbolZero& b) { return a.location.imag() < b.location.imag(); });
  for (const auto& z : rep.zeros)
    if (std::abs(z.location.real() - c) <= kOnLineTol) rep.in_exceptional_set = true;
  return rep;
}

inline ZeroReport find_zeros_on_line(const HParams& params, double nu, double T) {
  const HParams hp = validate_params(params);
  const Invariants inv = derive_invariants(hp);
  return find_zeros_on_line(symbol_from_params(hp), nu, T, 0.25, std::make_pair(inv.alpha_low, inv.beta_high));
}

inline nlohmann::json to_json(const ZeroReport& z) {
  nlohmann::json j;
  j["line"] = z.line;
  j["window"] = z.window;
  j["zeros"] = nlohmann::json::array();
  for (const auto& r : z.zeros)
    j["zeros"].push_back({{"re", r.location.real() + 0.0}, {"im", r.location.imag() + 0.0}, {"mult", r.multiplicity}});
  j["winding_total"] = z.winding_total;
  j["in_exceptional_set"] = z.in_exceptional_set;
  return j;
}

}  // namespace foxh
