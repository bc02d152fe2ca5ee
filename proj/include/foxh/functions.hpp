#pragma once

// Functions on (0, inf) with the metadata the operators need: a membership
// witness (nu_lo, nu_hi) for L_{nu,r}, discontinuities, support, and a
// closed-form Mellin transform when one is known.

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "foxh/error.hpp"
#include "foxh/gamma.hpp"
#include "foxh/hparams.hpp"
#include "foxh/quadrature.hpp"

namespace foxh {

struct Function {
  std::string label;
  std::function<cplx(double)> f;
  // |t^nu f| is r-integrable against dt/t for nu_lo < nu < nu_hi, every finite r;
  // the Mellin integral converges absolutely for nu_lo < Re s < nu_hi.
  double nu_lo = -kInf, nu_hi = kInf;
  std::vector<double> breakpoints;
  double support_lo = 0.0, support_hi = kInf;
  std::function<cplx(cplx)> mellin;  // empty when no closed form is known
  bool is_zero = false;

  cplx operator()(double t) const {
    if (!(t > 0.0) || !std::isfinite(t) || is_zero) return 0.0;
    if (t >= support_hi || t <= support_lo) return 0.0;
    return f(t);
  }
  bool in_witness(double nu) const { return nu_lo < nu && nu < nu_hi; }
};

// ---- integration in tau = log t -----------------------------------------

struct TauWindow {
  double lo = 0, hi = 0;
  double peak = 0;
};

// Walk outward from `center` until |g| stays below rel * peak; steps grow
// geometrically past |tau - center| = 40. Limits clip the walk (support).
inline TauWindow tau_window(const std::function<double(double)>& mag, double center, double lo_limit = -kInf,
                            double hi_limit = kInf, double rel = 1e-17, double max_extent = 800.0) {
  TauWindow w;
  center = std::clamp(center, std::max(lo_limit, -700.0), std::min(hi_limit, 700.0));
  auto safe = [&](double t) {
    const double v = mag(t);
    return std::isfinite(v) ? v : 0.0;
  };
  w.peak = safe(center);
  auto walk = [&](double dir, double limit) {
    double t = center, step = 0.5;
    int quiet = 0;
    while (true) {
      const double next = t + dir * step;
      if ((dir > 0 && next >= limit) || (dir < 0 && next <= limit)) return limit;
      t = next;
      const double v = safe(t);
      w.peak = std::max(w.peak, v);
      quiet = (v <= rel * w.peak) ? quiet + 1 : 0;
      if (quiet >= 4) return t;
      if (std::abs(t - center) > 40.0) step *= 1.1;
      if (std::abs(t - center) > max_extent)
        fail(ErrorKind::numerical_failure, "divergent_integral", "integrand does not decay in log variable");
    }
  };
  w.hi = walk(1.0, hi_limit);
  w.lo = walk(-1.0, lo_limit);
  return w;
}

// int g(tau) dtau over the decay window, split at cuts and every 16 units.
inline QuadResult integrate_tau(const std::function<cplx(double)>& g, double center, double lo_limit,
                                double hi_limit, std::vector<double> cuts, double tol = 1e-13) {
  const auto w = tau_window([&](double t) { return std::abs(g(t)); }, center, lo_limit, hi_limit);
  if (w.peak == 0.0) return {};
  for (double k = std::ceil(w.lo / 16.0) * 16.0; k < w.hi; k += 16.0) cuts.push_back(k);
  cuts.push_back(center);
  return integrate_de_split(g, w.lo, w.hi, cuts, tol);
}

// Same, with the window grown from the largest |g| sampled on [c1, c2]: for
// kernels whose scale (c1) and the function's scale (c2) can be far apart.
inline QuadResult integrate_tau_between(const std::function<cplx(double)>& g, double c1, double c2, double lo_limit,
                                        double hi_limit, std::vector<double> cuts, double tol = 1e-13) {
  double a = std::clamp(std::min(c1, c2), std::max(lo_limit, -700.0), std::min(hi_limit, 700.0));
  double b = std::clamp(std::max(c1, c2), std::max(lo_limit, -700.0), std::min(hi_limit, 700.0));
  double best = a, peak = -1.0;
  const int n = std::max(1, static_cast<int>(std::ceil((b - a) / 0.5)));
  for (int k = 0; k <= n; ++k) {
    const double t = a + (b - a) * k / n;
    const double v = std::abs(g(t));
    if (std::isfinite(v) && v > peak) peak = v, best = t;
  }
  return integrate_tau(g, best, lo_limit, hi_limit, std::move(cuts), tol);
}

inline std::vector<double> log_breakpoints(const Function& fn) {
  std::vector<double> cuts;
  for (double b : fn.breakpoints)
    if (b > 0.0 && std::isfinite(b)) cuts.push_back(std::log(b));
  return cuts;
}

inline double log_support_hi(const Function& fn) {
  return std::isfinite(fn.support_hi) ? std::log(fn.support_hi) : kInf;
}
inline double log_support_lo(const Function& fn) {
  return fn.support_lo > 0.0 ? std::log(fn.support_lo) : -kInf;
}

// ---- Mellin transform --------------------------------------------------

inline QuadResult mellin_numeric_detail(const Function& fn, cplx s, double tol = 1e-13) {
  if (fn.is_zero) return {};
  if (!fn.in_witness(s.real()))
    fail(ErrorKind::hypothesis_failure, "divergent_integral",
         "Mellin integral diverges: Re s outside the membership witness of " + fn.label);
  auto g = [&](double tau) { return fn(std::exp(tau)) * std::exp(s * tau); };
  const double lo = log_support_lo(fn), hi = log_support_hi(fn);
  const double center = (hi - lo < 2.0) ? 0.5 * (lo + hi) : std::clamp(0.0, lo + 1.0, hi - 1.0);
  return integrate_tau(g, center, lo, hi, log_breakpoints(fn), tol);
}

inline cplx mellin_numeric(const Function& fn, cplx s) { return mellin_numeric_detail(fn, s).value; }

// Max relative error of the declared Mellin transform against quadrature at
// five deterministic points with nu_lo + 0.5 <= Re s <= nu_lo + 3.
inline double mellin_self_check(const Function& fn, std::uint64_t seed = 17) {
  if (!fn.mellin) return 0.0;
  std::mt19937_64 rng(seed);
  const double lo = std::isfinite(fn.nu_lo) ? fn.nu_lo + 0.5 : -1.0;
  const double hi = std::min(lo + 2.5, std::isfinite(fn.nu_hi) ? 0.5 * (lo + fn.nu_hi) : lo + 2.5);
  std::uniform_real_distribution<double> re(lo, std::max(lo, hi)), im(-5.0, 5.0);
  double worst = 0;
  for (int k = 0; k < 5; ++k) {
    const cplx s(re(rng), im(rng));
    const cplx ref = fn.mellin(s);
    worst = std::max(worst, std::abs(mellin_numeric(fn, s) - ref) / std::max(1e-300, std::abs(ref)));
  }
  return worst;
}

inline Function checked(Function fn) {
  if (const double e = mellin_self_check(fn); !(e <= 1e-8))
    fail(ErrorKind::numerical_failure, "mellin_self_check",
         "declared Mellin transform of " + fn.label + " disagrees with quadrature");
  return fn;
}

// ---- test families -----------------------------------------------------

namespace testfn {

// t^c e^{-p t}
inline Function power_exp(cplx c, double p = 1.0) {
  if (!(p > 0.0)) fail(ErrorKind::domain, "bad_family_parameter", "power-exponential needs p > 0");
  Function fn;
  std::ostringstream os;
  os << "t^(" << c.real() << (c.imag() != 0.0 ? "+" + std::to_string(c.imag()) + "i" : "") << ")exp(-" << p << "t)";
  fn.label = os.str();
  fn.f = [c, p](double t) { return std::exp(c * std::log(t) - p * t); };
  fn.nu_lo = -c.real();
  fn.mellin = [c, p](cplx s) { return std::exp(log_gamma(c + s) - (c + s) * std::log(p)); };
  return checked(fn);
}

// t^c on (0, 1)
inline Function truncated_power(cplx c) {
  Function fn;
  fn.label = "t^(" + std::to_string(c.real()) + ")1_(0,1)";
  fn.f = [c](double t) { return std::exp(c * std::log(t)); };
  fn.nu_lo = -c.real();
  fn.support_hi = 1.0;
  fn.breakpoints = {1.0};
  fn.mellin = [c](cplx s) { return 1.0 / (c + s); };
  return checked(fn);
}

// t^c e^{-p t^2}
inline Function gaussian(cplx c, double p = 0.5) {
  if (!(p > 0.0)) fail(ErrorKind::domain, "bad_family_parameter", "Gaussian needs p > 0");
  Function fn;
  fn.label = "t^(" + std::to_string(c.real()) + ")exp(-" + std::to_string(p) + "t^2)";
  fn.f = [c, p](double t) { return std::exp(c * std::log(t) - p * t * t); };
  fn.nu_lo = -c.real();
  fn.mellin = [c, p](cplx s) {
    const cplx h = 0.5 * (c + s);
    return 0.5 * std::exp(log_gamma(h) - h * std::log(p));
  };
  return checked(fn);
}

inline Function zero() {
  Function fn;
  fn.label = "0";
  fn.f = [](double) { return cplx(0.0); };
  fn.is_zero = true;
  fn.mellin = [](cplx) { return cplx(0.0); };
  return fn;
}

}  // namespace testfn

// ---- sampled functions -------------------------------------------------

// Samples on a log-uniform grid; degree-7 Lagrange interpolation in log t,
// zero outside [x_min, x_max].
class GridFunction {
 public:
  GridFunction(std::vector<double> t, std::vector<cplx> v) : t_(std::move(t)), v_(std::move(v)) {
    if (t_.size() != v_.size()) fail(ErrorKind::invalid_params, "grid_mismatch", "grid and sample counts differ");
    if (t_.size() < 16) fail(ErrorKind::invalid_params, "grid_too_small", "grid needs at least 16 nodes");
    for (std::size_t k = 0; k < t_.size(); ++k) {
      if (!(t_[k] > 0.0)) fail(ErrorKind::invalid_params, "grid_not_positive", "grid nodes must be positive");
      if (k > 0 && !(t_[k] > t_[k - 1]))
        fail(ErrorKind::invalid_params, "grid_not_increasing", "grid must be strictly increasing");
    }
    lo_ = std::log(t_.front());
    h_ = (std::log(t_.back()) - lo_) / (t_.size() - 1);
    for (std::size_t k = 0; k < t_.size(); ++k)
      if (std::abs(std::log(t_[k]) - (lo_ + k * h_)) > 1e-6 * std::max(1.0, h_ * t_.size()))
        fail(ErrorKind::invalid_params, "grid_not_log_uniform", "grid must be log-uniform");
  }

  static GridFunction from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::invalid_params, "grid_file", "cannot open grid file " + path);
    std::vector<double> t;
    std::vector<cplx> v;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0]))) continue;
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream row(line);
      double a, b, c = 0;
      if (!(row >> a >> b)) fail(ErrorKind::invalid_params, "grid_row", "bad grid row: " + line);
      row >> c;
      t.push_back(a);
      v.emplace_back(b, c);
    }
    return GridFunction(std::move(t), std::move(v));
  }

  std::size_t size() const { return t_.size(); }
  double x_min() const { return t_.front(); }
  double x_max() const { return t_.back(); }

  cplx operator()(double t) const {
    if (!(t >= t_.front() && t <= t_.back())) return 0.0;
    const double u = (std::log(t) - lo_) / h_;
    const int n = static_cast<int>(t_.size());
    int k0 = std::clamp(static_cast<int>(std::floor(u)) - 3, 0, n - 8);
    cplx acc = 0;
    for (int i = k0; i < k0 + 8; ++i) {
      double w = 1.0;
      for (int j = k0; j < k0 + 8; ++j)
        if (j != i) w *= (u - j) / static_cast<double>(i - j);
      acc += w * v_[i];
    }
    return acc;
  }

  // Trapezoid rule in log t over the samples (the ends carry half weight).
  cplx mellin_trapezoid(cplx s) const {
    cplx acc = 0;
    for (std::size_t k = 0; k < t_.size(); ++k) {
      const double w = (k == 0 || k + 1 == t_.size()) ? 0.5 : 1.0;
      acc += w * v_[k] * std::exp(s * std::log(t_[k]));
    }
    return acc * h_;
  }

  Function as_function(std::string label = "grid") const {
    auto self = std::make_shared<GridFunction>(*this);
    Function fn;
    fn.label = std::move(label);
    fn.f = [self](double t) { return (*self)(t); };
    fn.breakpoints = {t_.front(), t_.back()};
    fn.support_hi = t_.back() * (1.0 + 1e-15);
    fn.mellin = [self](cplx s) { return self->mellin_trapezoid(s); };
    return fn;
  }

 private:
  std::vector<double> t_;
  std::vector<cplx> v_;
  double lo_ = 0, h_ = 1;
};

}  // namespace foxh
