#pragma once

// The H-transform of a test function by four routes: the direct integral
// against the kernel, inverse Mellin of H(s)(Mf)(1-s), the differentiated
// representation with an augmented kernel, and a factorization chain.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "foxh/classical_ops.hpp"
#include "foxh/error.hpp"
#include "foxh/factorization.hpp"
#include "foxh/functions.hpp"
#include "foxh/gamma_symbol.hpp"
#include "foxh/hparams.hpp"
#include "foxh/line_integral.hpp"
#include "foxh/mellin_barnes.hpp"

namespace foxh {

struct TransformResult {
  std::vector<double> xs;
  std::vector<cplx> values;
  std::vector<double> errors;  // NaN where the route gives no estimate
  std::string route;           // direct, mellin, repr, plan
  Admissibility admissibility;
};

namespace detail {

inline void check_xs(const std::vector<double>& xs) {
  for (double x : xs)
    if (!(x > 0.0) || !std::isfinite(x)) fail(ErrorKind::domain, "x_not_positive", "x must be positive and finite");
}

inline void require_member(const Function& f, double nu) {
  if (!f.in_witness(nu))
    fail(ErrorKind::hypothesis_failure, "f_not_in_space",
         f.label + " is not known to lie in L_{nu,r} for nu = " + std::to_string(nu));
}

// Mellin data of g on Re s = c: the closed form when declared, otherwise a
// trapezoid sum over log-uniform samples (accurate for g smooth in log t).
inline std::function<cplx(cplx)> mellin_on_line(const Function& g, double c) {
  if (g.mellin) return g.mellin;
  if (g.is_zero) return [](cplx) { return cplx(0.0); };
  auto mag = [&g, c](double tau) { return std::abs(g(std::exp(tau))) * std::exp(c * tau); };
  double center = 0, best = -1;
  for (double t = -20.0; t <= 20.0; t += 0.5)
    if (const double v = mag(t); std::isfinite(v) && v > best) best = v, center = t;
  const auto w = tau_window(mag, center, std::max(-60.0, log_support_lo(g)), std::min(60.0, log_support_hi(g)));
  const double h = 1.0 / 32.0;
  auto taus = std::make_shared<std::vector<double>>();
  auto vals = std::make_shared<std::vector<cplx>>();
  for (double t = w.lo; t <= w.hi; t += h) {
    taus->push_back(t);
    vals->push_back(h * g(std::exp(t)) * std::exp(c * t));
  }
  return [taus, vals, c](cplx s) {
    cplx acc = 0.0;
    const cplx d = s - c;
    for (std::size_t k = 0; k < taus->size(); ++k) acc += (*vals)[k] * std::exp(d * (*taus)[k]);
    return acc;
  };
}

// Inverse Mellin of one density on Re s = c, sampled once for many x.
class LineInverse {
 public:
  LineInverse(std::function<cplx(cplx)> F, double c) : c_(c) {
    tail_ = scan_line_decay(F, c);
    zero_ = tail_.peak == 0.0;
    if (!zero_) line_ = std::make_unique<LineSynthesis>(std::move(F), c, tail_.half_height + 1.0);
  }
  std::pair<cplx, double> operator()(double x) const {
    if (zero_) return {0.0, 0.0};
    const auto r = line_->eval_adaptive(std::log(x), 0.0);
    return {r.value, r.error + tail_.tail_magnitude * std::pow(x, -c_)};
  }

 private:
  double c_;
  LineTail tail_;
  bool zero_ = false;
  std::unique_ptr<LineSynthesis> line_;
};

// Kernel values from Mellin–Barnes lines at a few abscissas across the
// admissible interval; each argument y uses the line with the smallest error
// bound, since the roundoff floor scales like y^{-gamma}.
class KernelLine {
 public:
  explicit KernelLine(const HParams& params, double target = 1e-13) {
    const HParams hp = validate_params(params);
    inv_ = derive_invariants(hp);
    auto sym = std::make_shared<GammaSymbol>(symbol_from_params(hp));
    const ContourSpec base = auto_contour(*sym, inv_, {1.0}, target).first;
    // admissible abscissas: the strip, cut at the algebraic-decay edge when a* = 0
    double lo = inv_.alpha_low, hi = inv_.beta_high;
    if (inv_.sign_a_star == 0) {
      const double edge = (-1.0 - inv_.mu.real()) / inv_.delta_cap;
      if (inv_.delta_cap > 0) hi = std::min(hi, edge);
      else lo = std::max(lo, edge);
    }
    if (!std::isfinite(lo)) lo = std::min(base.re_line, hi) - 4.0;
    if (!std::isfinite(hi)) hi = std::max(base.re_line, lo) + 4.0;
    std::vector<double> gammas{base.re_line};
    for (double frac : {0.05, 0.95}) gammas.push_back(lo + frac * (hi - lo));
    for (double g : gammas) {
      Line L;
      L.contour.re_line = g;
      try {
        L.rho = calibrate(*sym, inv_, g, base.half_height);
        L.contour.half_height = solve_half_height(inv_, g, 1.0, target, L.rho, base.half_height);
        check_pole_free(*sym, g, L.contour.half_height);
      } catch (const Error&) {
        if (g != base.re_line) continue;
        throw;
      }
      L.line = std::make_shared<LineSynthesis>([sym](cplx s) { return sym->eval(s); }, g, L.contour.half_height);
      lines_.push_back(std::move(L));
    }
  }
  cplx operator()(double y) const { return best(y).line->eval_adaptive(std::log(y), 0.0).value; }
  // truncation bound plus roundoff floor at y
  double error(double y) const { return error(best(y), y); }

 private:
  struct Line {
    ContourSpec contour;
    double rho = 1;
    std::shared_ptr<LineSynthesis> line;
  };
  double error(const Line& L, double y) const {
    return tail_bound(inv_, L.contour.re_line, L.contour.half_height, y, L.rho) +
           64.0 * std::numeric_limits<double>::epsilon() * L.line->l1(std::log(y), 64);
  }
  const Line& best(double y) const {
    const Line* b = &lines_.front();
    double eb = error(*b, y);
    for (const auto& L : lines_)
      if (const double e = error(L, y); e < eb) b = &L, eb = e;
    return *b;
  }

  Invariants inv_;
  std::vector<Line> lines_;
};

// int_0^inf K(x t) f(t) dt with its error estimate
inline std::pair<cplx, double> direct_integral(const KernelLine& K, const Function& f, double x) {
  if (f.is_zero) return {0.0, 0.0};
  const double lx = std::log(x);
  auto g = [&](double tau) -> cplx {
    const double t = std::exp(tau);
    const cplx ft = f(t);
    if (ft == 0.0) return 0.0;
    return K(x * t) * ft * t;
  };
  const auto q = integrate_tau_between(g, -lx, 0.0, log_support_lo(f), log_support_hi(f), log_breakpoints(f), 1e-12);
  auto e = [&](double tau) -> cplx {
    const double t = std::exp(tau);
    return K.error(x * t) * std::abs(f(t)) * t;
  };
  const auto qe = integrate_tau_between(e, -lx, 0.0, log_support_lo(f), log_support_hi(f), log_breakpoints(f), 1e-4);
  return {q.value, q.error + std::abs(qe.value)};
}

}  // namespace detail

// ---- direct ------------------------------------------------------------

inline TransformResult htransform_direct(const HParams& params, const Function& f, const std::vector<double>& xs,
                                         const SpaceSpec& space = {}) {
  detail::check_xs(xs);
  const HParams hp = validate_params(params);
  const Invariants inv = derive_invariants(hp);
  TransformResult out;
  out.route = "direct";
  out.admissibility = admissible_range(inv, space, AdmissibilityMode::direct_integral);
  if (!out.admissibility)
    fail(ErrorKind::hypothesis_failure, "direct_route_inadmissible",
         "direct route inadmissible: " + out.admissibility.reason);
  detail::require_member(f, space.nu);
  out.xs = xs;
  if (f.is_zero) {
    out.values.assign(xs.size(), 0.0);
    out.errors.assign(xs.size(), 0.0);
    return out;
  }
  const detail::KernelLine K(hp);
  for (double x : xs) {
    const auto [v, e] = detail::direct_integral(K, f, x);
    out.values.push_back(v);
    out.errors.push_back(e);
  }
  return out;
}

// ---- Mellin multiplier ---------------------------------------------------

inline TransformResult htransform_mellin(const HParams& params, const Function& f, const std::vector<double>& xs,
                                         const SpaceSpec& space = {}) {
  detail::check_xs(xs);
  const HParams hp = validate_params(params);
  const Invariants inv = derive_invariants(hp);
  TransformResult out;
  out.route = "mellin";
  out.admissibility = admissible_range(inv, space, AdmissibilityMode::definition);
  if (!out.admissibility)
    fail(ErrorKind::hypothesis_failure, out.admissibility.code, "mellin route: " + out.admissibility.reason);
  detail::require_member(f, space.nu);
  out.xs = xs;
  if (f.is_zero) {
    out.values.assign(xs.size(), 0.0);
    out.errors.assign(xs.size(), 0.0);
    return out;
  }
  const double c = 1.0 - space.nu;
  auto H = std::make_shared<GammaSymbol>(symbol_from_params(hp));
  auto Mf = detail::mellin_on_line(f, space.nu);
  const detail::LineInverse line([H, Mf](cplx s) { return H->eval(s) * Mf(1.0 - s); }, c);
  for (double x : xs) {
    const auto [v, e] = line(x);
    out.values.push_back(v);
    out.errors.push_back(e);
  }
  return out;
}

// ---- differentiated representation -----------------------------------------

// Kernel of the representation: orders (m, n+1) with (-lambda, h) first among
// the upper pairs and (-lambda-1, h) last among the lower ones when `upper`
// is true, orders (m+1, n) with the pairs placed the other way otherwise.
inline HParams augmented_kernel(const HParams& params, cplx lambda, double h, bool upper) {
  HParams a = validate_params(params);
  if (upper) {
    a.upper.insert(a.upper.begin(), ParamPair(-lambda, h));
    a.lower.push_back(ParamPair(-lambda - 1.0, h));
    a.n += 1;
  } else {
    a.upper.push_back(ParamPair(-lambda, h));
    a.lower.insert(a.lower.begin(), ParamPair(-lambda - 1.0, h));
    a.m += 1;
  }
  a.p += 1, a.q += 1;
  return a;
}

inline TransformResult htransform_repr(const HParams& params, const Function& f, cplx lambda, double h,
                                       const std::vector<double>& xs, const SpaceSpec& space = {}) {
  detail::check_xs(xs);
  if (!(h > 0.0)) fail(ErrorKind::domain, "h_not_positive", "representation needs h > 0");
  const HParams hp = validate_params(params);
  const Invariants inv = derive_invariants(hp);
  TransformResult out;
  out.route = "repr";
  out.admissibility = admissible_range(inv, space, AdmissibilityMode::definition);
  if (!out.admissibility)
    fail(ErrorKind::hypothesis_failure, out.admissibility.code, "repr route: " + out.admissibility.reason);
  detail::require_member(f, space.nu);
  const double edge = (1.0 - space.nu) * h - 1.0;
  const double gap = lambda.real() - edge;
  if (std::abs(gap) <= 1e-12 * std::max(1.0, std::abs(edge)))
    fail(ErrorKind::hypothesis_failure, "repr_boundary", "Re(lambda) = (1-nu) h - 1 selects neither representation");
  const bool upper = gap > 0;
  const HParams aug = augmented_kernel(hp, lambda, h, upper);
  const Invariants ainv = derive_invariants(aug);
  const auto adm = admissible_range(ainv, space, AdmissibilityMode::direct_integral);
  if (!adm)
    fail(ErrorKind::hypothesis_failure, "augmented_kernel_inadmissible",
         "augmented kernel not admissible for direct evaluation: " + adm.reason);
  out.xs = xs;
  if (f.is_zero) {
    out.values.assign(xs.size(), 0.0);
    out.errors.assign(xs.size(), 0.0);
    return out;
  }
  const detail::KernelLine K(aug);
  const cplx c = (lambda + 1.0) / h;
  const double sign = upper ? 1.0 : -1.0;
  auto u = [&](double y) {
    const auto [v, e] = detail::direct_integral(K, f, y);
    return std::make_pair(std::exp(c * std::log(y)) * v, std::abs(std::exp(c * std::log(y))) * e);
  };
  for (double x : xs) {
    // central differences at steps d, d/2, d/4 with two Richardson levels
    const double d = x * 1e-3;
    double eu = 0;
    auto D = [&](double step) {
      const auto p = u(x + step), m = u(x - step);
      eu = std::max({eu, p.second, m.second});
      return (p.first - m.first) / (2.0 * step);
    };
    const cplx d1 = D(d), d2 = D(d / 2), d3 = D(d / 4);
    const cplx r1 = (4.0 * d2 - d1) / 3.0, r2 = (4.0 * d3 - d2) / 3.0;
    const cplx du = (16.0 * r2 - r1) / 15.0;
    const cplx scale = sign * h * std::exp((1.0 - c) * std::log(x));
    out.values.push_back(scale * du);
    out.errors.push_back(std::abs(scale) * (std::abs(du - r2) + 3.0 * eu / (d / 4)));
  }
  return out;
}

// ---- factorization chains ------------------------------------------------

namespace detail {

// Strip where the numerator factors of `g` are analytic.
inline std::pair<double, double> analytic_strip(const GammaSymbol& g) {
  double lo = -kInf, hi = kInf;
  for (const auto& f : g.numerator) {
    if (f.slope > 0) lo = std::max(lo, -f.offset.real() / f.slope);
    else if (f.slope < 0) hi = std::min(hi, -f.offset.real() / f.slope);
  }
  return {lo, hi};
}

// Values on log-uniform grids with 8-point Lagrange read-back: a fine step on
// |log x| <= 64, step 1/8 out to |log x| = 704. Nodes are computed on first
// use unless filled up front; arguments beyond the far grids go to the
// evaluator directly.
class LogGrid {
 public:
  static constexpr double kFineStep = 1.0 / 64.0, kFineEdge = 64.0;
  static constexpr double kCoarseStep = 1.0 / 8.0, kCoarseEdge = 704.0;

  explicit LogGrid(std::function<cplx(double)> at_tau, double fine_step = kFineStep) : at_tau_(std::move(at_tau)) {
    fine_ = Axis(-kFineEdge, fine_step, count(2.0 * kFineEdge, fine_step));
    // the far grids overlap the fine one so stencils never straddle
    const int nc = count(kCoarseEdge - kFineEdge + 4.0, kCoarseStep);
    left_ = Axis(-kCoarseEdge, kCoarseStep, nc);
    right_ = Axis(kFineEdge - 4.0, kCoarseStep, nc);
  }
  static double fine_node(int j) { return -kFineEdge + j * kFineStep; }
  static int fine_count() { return count(2.0 * kFineEdge, kFineStep); }
  void fill_fine(std::vector<cplx> values) {
    fine_.values = std::move(values);
    fine_.known.assign(fine_.values.size(), true);
  }

  cplx operator()(double tau) const {
    if (std::abs(tau) < kFineEdge - 0.1) return read(fine_, tau);
    if (tau < 0 && tau > -kCoarseEdge + 1.0) return read(left_, tau);
    if (tau > 0 && tau < kCoarseEdge - 1.0) return read(right_, tau);
    return at_tau_(tau);
  }

 private:
  struct Axis {
    double lo = 0, step = 1;
    int n = 0;
    mutable std::vector<cplx> values;
    mutable std::vector<bool> known;
    Axis() = default;
    Axis(double l, double h, int m) : lo(l), step(h), n(m), values(m), known(m, false) {}
  };
  static int count(double span, double h) { return static_cast<int>(std::lround(span / h)) + 1; }
  cplx read(const Axis& ax, double tau) const {
    const double u = (tau - ax.lo) / ax.step;
    const int j0 = std::clamp(static_cast<int>(std::floor(u)) - 3, 0, ax.n - 8);
    cplx out = 0.0;
    for (int i = 0; i < 8; ++i) {
      double l = 1.0;
      for (int m = 0; m < 8; ++m)
        if (m != i) l *= (u - (j0 + m)) / static_cast<double>(i - m);
      const int j = j0 + i;
      if (!ax.known[j]) {
        ax.values[j] = at_tau_(ax.lo + j * ax.step);
        ax.known[j] = true;
      }
      out += l * ax.values[j];
    }
    return out;
  }

  std::function<cplx(double)> at_tau_;
  Axis fine_, left_, right_;
};

// Inverse Mellin of F on Re s = c on a LogGrid. The fine grid is filled at
// once by a phase recurrence over the line nodes; far nodes use the line sum.
class TabulatedInverse {
 public:
  TabulatedInverse(std::function<cplx(cplx)> F, double c) {
    const LineTail tail = scan_line_decay(F, c);
    if (tail.peak == 0.0) {
      grid_ = std::make_unique<LogGrid>([](double) { return cplx(0.0); });
      return;
    }
    auto line = std::make_shared<LineSynthesis>(F, c, tail.half_height + 1.0);
    grid_ = std::make_unique<LogGrid>([line](double tau) { return line->eval(tau, kMaxNodesPerPanel); });
    const double T = line->half_height();
    const int panels = line->panels();
    const int n = panel_nodes_for(LogGrid::kFineEdge);
    const auto& rule = gauss_legendre(n);
    const double w = 2.0 * T / panels;
    std::vector<double> ys;
    std::vector<cplx> wf;
    for (int p = 0; p < panels; ++p)
      for (int k = 0; k < n; ++k) {
        const double y = -T + (p + 0.5) * w + 0.5 * w * rule.x[k];
        ys.push_back(y);
        wf.push_back(0.5 * w * rule.w[k] * F(cplx(c, y)));
      }
    const int N = LogGrid::fine_count();
    std::vector<cplx> acc(N, 0.0);
    for (std::size_t k = 0; k < ys.size(); ++k) {
      const cplx step = std::exp(cplx(0.0, -ys[k] * LogGrid::kFineStep));
      cplx ph;
      for (int j = 0; j < N; ++j) {
        // reseed the recurrence to keep the phase error at roundoff
        ph = (j % 256 == 0) ? std::exp(cplx(0.0, -ys[k] * LogGrid::fine_node(j))) : ph * step;
        acc[j] += wf[k] * ph;
      }
    }
    for (int j = 0; j < N; ++j) acc[j] *= std::exp(-c * LogGrid::fine_node(j)) / (2.0 * std::numbers::pi);
    grid_->fill_fine(std::move(acc));
  }
  cplx operator()(double x) const { return (*grid_)(std::log(x)); }

 private:
  std::unique_ptr<LogGrid> grid_;
};

// Mellin multiplier realized as multiply-then-invert on Re s = nu.
inline Function multiplier_stage(const GammaSymbol& sym, const Function& g, double nu) {
  Function out;
  out.label = "T(" + g.label + ")";
  out.is_zero = g.is_zero;
  const auto [lo, hi] = analytic_strip(sym);
  out.nu_lo = std::max(g.nu_lo, lo);
  out.nu_hi = std::min(g.nu_hi, hi);
  if (g.is_zero) return out;
  auto S = std::make_shared<GammaSymbol>(sym);
  auto Mg = mellin_on_line(g, nu);
  auto table = std::make_shared<TabulatedInverse>([S, Mg](cplx s) { return S->eval(s) * Mg(s); }, nu);
  out.f = [table](double x) { return (*table)(x); };
  out.mellin = [S, Mg](cplx s) { return S->eval(s) * Mg(s); };
  return out;
}

inline Function apply_primitive(const Primitive& p, const Function& g, double nu_in) {
  Function out;
  switch (p.kind) {
    case PrimKind::W: return op_elementary(ElementaryKind::W, p.real, g);
    case PrimKind::M: return op_elementary(ElementaryKind::M, p.order, g);
    case PrimKind::R: return op_elementary(ElementaryKind::R, 0.0, g);
    case PrimKind::T: return multiplier_stage(p.symbol, g, nu_in);
    case PrimKind::EKLeft: out = ek_operator(EKSide::left, p.order, p.real, p.shift, g); break;
    case PrimKind::EKRight: out = ek_operator(EKSide::right, p.order, p.real, p.shift, g); break;
    case PrimKind::Hankel: out = hankel_operator(p.real, p.order, g); break;
    case PrimKind::Laplace: out = laplace_operator(p.real, p.order, g); break;
  }
  // carry the Mellin data through the integral operators
  if (g.mellin) {
    const ChainSymbol c = mellin_action(p, ChainSymbol{});
    auto factor = std::make_shared<GammaSymbol>(c.factor);
    auto in = g.mellin;
    const double a = c.a;
    const cplx b = c.b;
    out.mellin = [factor, in, a, b](cplx s) { return factor->eval(s) * in(a * s + b); };
  }
  return out;
}

}  // namespace detail

// Builds the chain as nested function objects, innermost first.
inline Function plan_operator(const FactorizationPlan& plan, const Function& f) {
  Function g = f;
  double nu = plan.space.nu;
  const auto spaces = chain_spaces(plan.chain, nu);
  auto integral = [](PrimKind k) { return k != PrimKind::W && k != PrimKind::M && k != PrimKind::R; };
  for (std::size_t k = 0; k < plan.chain.size(); ++k) {
    try {
      g = detail::apply_primitive(plan.chain[k], g, nu);
      const bool read_later = std::any_of(plan.chain.begin() + k + 1, plan.chain.end(),
                                          [&](const Primitive& p) { return integral(p.kind); });
      if (plan.chain[k].kind != PrimKind::T && integral(plan.chain[k].kind) && read_later && !g.is_zero) {
        auto memo = std::make_shared<detail::LogGrid>([inner = g.f](double tau) { return inner(std::exp(tau)); },
                                                      1.0 / 16.0);
        g.f = [memo](double x) { return (*memo)(std::log(x)); };
      }
    } catch (const Error& e) {
      fail(e.kind(), e.code(), "chain position " + std::to_string(k) + " (" + plan.chain[k].describe() + "): " + e.what());
    }
    nu = spaces[k];
  }
  return g;
}

inline TransformResult apply_plan(const FactorizationPlan& plan, const Function& f, const std::vector<double>& xs) {
  detail::check_xs(xs);
  detail::require_member(f, plan.space.nu);
  TransformResult out;
  out.route = "plan";
  out.admissibility = detail::pass("case " + std::to_string(plan.case_label) + " chain: " + plan.host);
  out.xs = xs;
  const Function g = plan_operator(plan, f);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    try {
      out.values.push_back(g(xs[k]));
    } catch (const Error& e) {
      fail(e.kind(), e.code(), std::string("plan evaluation: ") + e.what());
    }
    out.errors.push_back(std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

// ---- relations -----------------------------------------------------------

struct BilinearReport {
  cplx lhs, rhs;  // int f (H g), int g (H f)
  double residual = 0;
};

// Both sides by the trapezoid rule in log x on one grid, the transforms by
// the Mellin route.
inline BilinearReport bilinear_check(const HParams& params, const Function& f, const Function& g,
                                     const SpaceSpec& space = {}) {
  const double h = 1.0 / 8.0;
  auto env = [&](double tau) {
    const double t = std::exp(tau);
    return std::max(std::abs(f(t)), std::abs(g(t))) * t;
  };
  double center = 0, best = -1;
  for (double t = -20.0; t <= 20.0; t += 0.5)
    if (const double v = env(t); std::isfinite(v) && v > best) best = v, center = t;
  const double lo_lim = std::max(-60.0, std::min(log_support_lo(f), log_support_lo(g)));
  const double hi_lim = std::min(60.0, std::max(log_support_hi(f), log_support_hi(g)));
  const auto w = tau_window(env, center, lo_lim, hi_lim, 1e-16);
  const double lo = std::max(lo_lim, w.lo - 10.0), hi = std::min(hi_lim, w.hi + 10.0);
  std::vector<double> xs;
  for (double t = lo; t <= hi; t += h) xs.push_back(std::exp(t));
  const auto Hf = htransform_mellin(params, f, xs, space);
  const auto Hg = htransform_mellin(params, g, xs, space);
  BilinearReport rep;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    rep.lhs += h * f(xs[k]) * Hg.values[k] * xs[k];
    rep.rhs += h * g(xs[k]) * Hf.values[k] * xs[k];
  }
  rep.residual = std::abs(rep.lhs - rep.rhs);
  return rep;
}

// Max relative difference of the Mellin-route transforms at two nu values.
inline double nu_independence(const HParams& params, const Function& f, const std::vector<double>& xs, double nu1,
                              double nu2, double r = 2.0) {
  const auto a = htransform_mellin(params, f, xs, {nu1, r});
  const auto b = htransform_mellin(params, f, xs, {nu2, r});
  double worst = 0;
  for (std::size_t k = 0; k < xs.size(); ++k)
    worst = std::max(worst, std::abs(a.values[k] - b.values[k]) / std::max(std::abs(b.values[k]), 1e-300));
  return worst;
}

struct InjectivityProbe {
  cplx s;
  double difference = 0;  // |M(P f1)(s) - M(P f2)(s)|
  double budget = 0;
  bool distinct = false;
};

// Mellin data of the chain outputs at one point of Re s = 1 - nu, through the
// composed chain symbol and the inputs' Mellin transforms.
inline InjectivityProbe injectivity_probe(const FactorizationPlan& plan, const Function& f1, const Function& f2,
                                          double im_s = 0.5) {
  const ChainSymbol c = chain_symbol(plan.chain);
  const cplx s(plan.out_nu, im_s);
  auto m1 = detail::mellin_on_line(f1, plan.space.nu), m2 = detail::mellin_on_line(f2, plan.space.nu);
  const cplx arg = c.a * s + c.b;
  const cplx k = c.factor.eval(s);
  const cplx a = k * m1(arg), b = k * m2(arg);
  InjectivityProbe p;
  p.s = s;
  p.difference = std::abs(a - b);
  p.budget = 1e-8 * std::max(std::abs(a), std::abs(b)) + 1e-14;
  p.distinct = p.difference > p.budget;
  return p;
}

}  // namespace foxh
