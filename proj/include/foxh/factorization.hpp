#pragma once

// Factorization plans: each of the nine parameter cases decomposes H into a
// chain of primitive operators around one auxiliary multiplier. Chains are
// stored innermost first: chain[0] acts on f, chain.back() produces H f.

#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "foxh/aux_symbols.hpp"
#include "foxh/error.hpp"
#include "foxh/gamma_symbol.hpp"
#include "foxh/hparams.hpp"

namespace foxh {

enum class PrimKind {
  W,        // f(x / d)
  M,        // x^zeta f(x)
  R,        // (1/x) f(1/x)
  T,        // Mellin multiplier with a GammaSymbol
  EKLeft,   // I^alpha_{0+; sigma, eta}
  EKRight,  // I^alpha_{-; sigma, eta}
  Hankel,   // H_{kappa, eta}
  Laplace   // L_{kappa, alpha}
};

inline const char* to_string(PrimKind k) {
  switch (k) {
    case PrimKind::W: return "W";
    case PrimKind::M: return "M";
    case PrimKind::R: return "R";
    case PrimKind::T: return "T";
    case PrimKind::EKLeft: return "I0+";
    case PrimKind::EKRight: return "I-";
    case PrimKind::Hankel: return "H";
    case PrimKind::Laplace: return "L";
  }
  return "?";
}

struct Primitive {
  PrimKind kind = PrimKind::R;
  double real = 0;    // W: d, EK: sigma, Hankel/Laplace: kappa
  cplx order = 0.0;   // M: zeta, EK: alpha, Hankel: eta, Laplace: alpha
  cplx shift = 0.0;   // EK: eta
  GammaSymbol symbol; // T only
  std::string symbol_name;

  static Primitive dilation(double d) { return {PrimKind::W, d, 0.0, 0.0, {}, ""}; }
  static Primitive power(cplx zeta) { return {PrimKind::M, 0.0, zeta, 0.0, {}, ""}; }
  static Primitive reflection() { return {PrimKind::R, 0.0, 0.0, 0.0, {}, ""}; }
  static Primitive multiplier(GammaSymbol g, std::string name) {
    return {PrimKind::T, 0.0, 0.0, 0.0, std::move(g), std::move(name)};
  }
  static Primitive ek_left(cplx alpha, double sigma, cplx eta) { return {PrimKind::EKLeft, sigma, alpha, eta, {}, ""}; }
  static Primitive ek_right(cplx alpha, double sigma, cplx eta) {
    return {PrimKind::EKRight, sigma, alpha, eta, {}, ""};
  }
  static Primitive hankel(double kappa, cplx eta) { return {PrimKind::Hankel, kappa, eta, 0.0, {}, ""}; }
  static Primitive laplace(double kappa, cplx alpha) { return {PrimKind::Laplace, kappa, alpha, 0.0, {}, ""}; }

  std::string describe() const;
};

// Admissible target exponents s for H: L_{nu,r} -> L_{1-nu,s}.
struct ExponentRange {
  double lo = 1, hi = kInf;
  bool lo_closed = false, hi_closed = false;
  bool contains(double s) const {
    return (lo_closed ? s >= lo : s > lo) && (hi_closed ? s <= hi : s < hi);
  }
};

struct FactorizationPlan {
  int case_label = 0;
  std::string host;  // which range theorem the chain comes from
  std::vector<Primitive> chain;
  AuxKind aux_kind = AuxKind::h0;
  GammaSymbol aux_symbol;
  ChainParams chain_params;
  SpaceSpec space;
  double out_nu = 0.5;  // 1 - nu
  ExponentRange s_range;
};

namespace detail {

inline std::string fmt_c(cplx z) {
  std::ostringstream o;
  o.precision(12);
  o << z.real() + 0.0;
  if (z.imag() != 0.0) o << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return o.str();
}

}  // namespace detail

inline std::string Primitive::describe() const {
  using detail::fmt_c;
  switch (kind) {
    case PrimKind::W: return "W_" + fmt_c(real);
    case PrimKind::M: return "M_" + fmt_c(order);
    case PrimKind::R: return "R";
    case PrimKind::T: return "T_" + symbol_name;
    case PrimKind::EKLeft: return "I^" + fmt_c(order) + "_{0+;" + fmt_c(real) + "," + fmt_c(shift) + "}";
    case PrimKind::EKRight: return "I^" + fmt_c(order) + "_{-;" + fmt_c(real) + "," + fmt_c(shift) + "}";
    case PrimKind::Hankel: return "H_{" + fmt_c(real) + "," + fmt_c(order) + "}";
    case PrimKind::Laplace: return "L_{" + fmt_c(real) + "," + fmt_c(order) + "}";
  }
  return "?";
}

// ---- symbolic Mellin composition ------------------------------------------

// M(P...f)(s) = factor(s) * (M f)(a s + b)
struct ChainSymbol {
  GammaSymbol factor;
  double a = 1;
  cplx b = 0.0;
};

// Mellin action of one primitive applied on top of `in`.
inline ChainSymbol mellin_action(const Primitive& p, ChainSymbol in) {
  switch (p.kind) {
    case PrimKind::W:
      in.factor = GammaSymbol::power(p.real, 0.0, 1.0) * in.factor;
      return in;
    case PrimKind::M:
      in.factor = in.factor.shift(p.order);
      in.b += in.a * p.order;
      return in;
    case PrimKind::R:
      in.factor = in.factor.reflect();
      in.b += in.a;
      in.a = -in.a;
      return in;
    case PrimKind::T:
      in.factor = p.symbol * in.factor;
      return in;
    case PrimKind::EKLeft: {
      // Gamma(1 + eta - s/sigma) / Gamma(1 + eta + alpha - s/sigma)
      const double w = -1.0 / p.real;
      in.factor = GammaSymbol::gamma(1.0 + p.shift, w) * GammaSymbol::inverse_gamma(1.0 + p.shift + p.order, w) *
                  in.factor;
      return in;
    }
    case PrimKind::EKRight: {
      // Gamma(eta + s/sigma) / Gamma(eta + alpha + s/sigma)
      const double w = 1.0 / p.real;
      in.factor = GammaSymbol::gamma(p.shift, w) * GammaSymbol::inverse_gamma(p.shift + p.order, w) * in.factor;
      return in;
    }
    case PrimKind::Hankel: {
      // (2/|k|)^{k(s-1/2)} Gamma([eta + 1 + k(s-1/2)]/2) / Gamma([eta + 1 - k(s-1/2)]/2) * (Mg)(1-s)
      const double k = p.real;
      const cplx e1 = (p.order + 1.0) / 2.0;
      in.factor = GammaSymbol::power(2.0 / std::abs(k), -k / 2.0, k) * GammaSymbol::gamma(e1 - k / 4.0, k / 2.0) *
                  GammaSymbol::inverse_gamma(e1 + k / 4.0, -k / 2.0) * in.factor.reflect();
      in.b += in.a;
      in.a = -in.a;
      return in;
    }
    case PrimKind::Laplace: {
      // Gamma(k[s - alpha]) |k|^{1 - k(s - alpha)} * (Mg)(1-s)
      const double k = p.real;
      in.factor = GammaSymbol::gamma(-k * p.order, k) * GammaSymbol::power(std::abs(k), 1.0 + k * p.order, -k) *
                  in.factor.reflect();
      in.b += in.a;
      in.a = -in.a;
      return in;
    }
  }
  return in;
}

inline ChainSymbol chain_symbol(const std::vector<Primitive>& chain) {
  ChainSymbol c;
  for (const auto& p : chain) c = mellin_action(p, std::move(c));
  return c;
}

// Exponent nu of the space each stage output lives in, starting from nu.
inline std::vector<double> chain_spaces(const std::vector<Primitive>& chain, double nu) {
  std::vector<double> out;
  for (const auto& p : chain) {
    switch (p.kind) {
      case PrimKind::R:
      case PrimKind::Hankel:
      case PrimKind::Laplace: nu = 1.0 - nu; break;
      case PrimKind::M: nu -= p.order.real(); break;
      default: break;
    }
    out.push_back(nu);
  }
  return out;
}

// ---- verification ------------------------------------------------------

struct SymbolVerification {
  std::vector<cplx> points;
  std::vector<double> residuals;  // |chain / H - 1|
  double max_residual = 0;
};

// `count` points on Re s = 1 - nu spread over |Im s| <= height, skipping Im s = 0.
inline std::vector<cplx> verification_points(const FactorizationPlan& plan, int count = 10, double height = 5.0) {
  std::vector<cplx> pts;
  for (int k = 0; k < count; ++k) {
    const double t = count == 1 ? 0.5 : -height + 2.0 * height * k / (count - 1);
    pts.emplace_back(plan.out_nu, t);
  }
  return pts;
}

inline SymbolVerification verify_plan_symbol(const FactorizationPlan& plan, const HParams& params,
                                           const std::vector<cplx>& points) {
  const ChainSymbol c = chain_symbol(plan.chain);
  if (std::abs(c.a + 1.0) > 0.0 || std::abs(c.b - 1.0) > 1e-12)
    fail(ErrorKind::numerical_failure, "chain_orientation", "chain does not act on (Mf)(1-s)");
  const GammaSymbol H = symbol_from_params(validate_params(params));
  SymbolVerification out;
  for (cplx s : points) {
    cplx lc, lh;
    try {
      lc = c.factor.eval_log(s);
      lh = H.eval_log(s);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::pole) throw;
      fail(ErrorKind::pole, "pole_collision", "sample point " + detail::fmt_c(s) + " hits a pole");
    }
    if (!std::isfinite(lc.real()) || !std::isfinite(lh.real()))
      fail(ErrorKind::pole, "pole_collision", "sample point " + detail::fmt_c(s) + " hits a zero");
    const double r = std::abs(std::exp(lc - lh) - 1.0);
    out.points.push_back(s);
    out.residuals.push_back(r);
    out.max_residual = std::max(out.max_residual, r);
  }
  return out;
}

inline SymbolVerification verify_plan_symbol(const FactorizationPlan& plan, const HParams& params) {
  return verify_plan_symbol(plan, params, verification_points(plan));
}

// ---- plan construction ---------------------------------------------------

namespace detail {

[[noreturn]] inline void hypothesis(const std::string& host, const std::string& code, const std::string& what) {
  fail(ErrorKind::hypothesis_failure, code, what + " [" + host + "]");
}

inline void require_strip(const std::string& host, const Invariants& inv, double nu) {
  const double c = 1.0 - nu;
  if (!(inv.alpha_low < c && c < inv.beta_high)) hypothesis(host, "outside_strip", "needs alpha < 1-nu < beta");
}

inline void require_exponent(const std::string& host, double r) {
  if (!(r > 1.0 && std::isfinite(r))) hypothesis(host, "exponent_range", "needs 1 < r < inf");
}

// r <= s with s' >= [1/2 - Delta(1-nu) - Re mu]^{-1}
inline ExponentRange growth_range(const Invariants& inv, double nu, double r) {
  const double X = 0.5 - inv.delta_cap * (1.0 - nu) - inv.mu.real();
  ExponentRange out{r, kInf};
  if (X < 1.0) out.hi = 1.0 / (1.0 - X);
  return out;
}

}  // namespace detail

// Builds the case's chain; `overrides` may supply k (case 2) or eta/zeta
// (cases 8, 9). Hypothesis failures name the inequality and the host.
inline FactorizationPlan plan_factorization(const HParams& params, double nu, double r,
                                            const ChainParams& overrides = {}) {
  const HParams hp = validate_params(params);
  const Invariants inv = derive_invariants(hp);
  const GammaSymbol H = symbol_from_params(hp);
  if (!inv.case_label) fail(ErrorKind::hypothesis_failure, "out_of_cases", "parameters fall outside the nine cases");

  FactorizationPlan plan;
  plan.case_label = *inv.case_label;
  plan.space = {nu, r};
  plan.out_nu = 1.0 - nu;
  ChainParams cp = overrides;
  const double d = inv.delta;
  auto& ch = plan.chain;
  using P = Primitive;
  using detail::hypothesis;

  auto finish = [&](AuxKind kind) -> FactorizationPlan& {
    plan.aux_kind = kind;
    plan.aux_symbol = build_aux_symbol(kind, H, inv, cp, plan.space);
    plan.chain_params = cp;
    return plan;
  };

  switch (plan.case_label) {
    case 1: {
      plan.host = "a* = Delta = 0, Re mu = 0";
      detail::require_strip(plan.host, inv, nu);
      detail::require_exponent(plan.host, r);
      plan.s_range = {r, r, true, true};
      finish(AuxKind::h0);
      ch = {P::reflection(), P::multiplier(plan.aux_symbol, "H0"), P::dilation(d)};
      return plan;
    }
    case 2: {
      plan.host = "a* = Delta = 0, Re mu < 0";
      detail::require_strip(plan.host, inv, nu);
      detail::require_exponent(plan.host, r);
      // r <= s with 1/s > 1/r + Re mu
      const double bound = 1.0 / r + inv.mu.real();
      plan.s_range = {r, bound > 0.0 ? 1.0 / bound : kInf};
      // the multiplier is delta^{-s} H1 (or H2): the case-1 chain applied to H1
      const bool use_m = inv.m > 0 && (overrides.branch != "n" || inv.n == 0);
      if (!cp.has_k) cp.k = 1.0;
      cp.has_k = true;
      if (use_m) {
        cp.branch = "m";
        finish(AuxKind::h1);
        ch = {P::reflection(), P::multiplier(aux::delta_power(inv) * plan.aux_symbol, "H1_delta"), P::dilation(d),
              P::ek_right(-inv.mu, cp.k, -inv.alpha_low / cp.k)};
      } else {
        cp.branch = "n";
        finish(AuxKind::h2);
        ch = {P::reflection(), P::multiplier(aux::delta_power(inv) * plan.aux_symbol, "H2_delta"), P::dilation(d),
              P::ek_left(-inv.mu, cp.k, inv.beta_high / cp.k - 1.0)};
      }
      return plan;
    }
    case 3:
    case 4: {
      const bool mirror = plan.case_label == 4;
      plan.host = mirror ? "a* = 0, Delta < 0" : "a* = 0, Delta > 0";
      detail::require_strip(plan.host, inv, nu);
      detail::require_exponent(plan.host, r);
      const double growth = inv.delta_cap * (1.0 - nu) + inv.mu.real();
      if (growth > 0.5 - plan.space.gamma_r() + kZeroTol)
        hypothesis(plan.host, "growth_bound", "needs Delta(1-nu) + Re mu <= 1/2 - gamma(r)");
      if (!mirror && !std::isfinite(inv.alpha_low)) hypothesis(plan.host, "alpha_infinite", "needs alpha > -inf");
      if (mirror && !std::isfinite(inv.beta_high)) hypothesis(plan.host, "beta_infinite", "needs beta < inf");
      plan.s_range = detail::growth_range(inv, nu, r);
      const cplx zeta = inv.mu / inv.delta_cap + 0.5;
      const cplx eta = -inv.delta_cap * (mirror ? inv.beta_high : inv.alpha_low) - inv.mu - 1.0;
      cp.zeta = zeta, cp.eta = eta, cp.has_zeta = cp.has_eta = true;
      finish(mirror ? AuxKind::h3_mirror : AuxKind::h3);
      ch = {P::multiplier(plan.aux_symbol, mirror ? "H3_mirror" : "H3"), P::power(zeta),
            P::hankel(inv.delta_cap, eta), P::power(zeta), P::dilation(d)};
      return plan;
    }
    default: break;
  }

  // a* > 0: L_{nu,r} -> L_{1-nu,s} for every s >= r
  detail::require_strip("a* > 0", inv, nu);
  detail::require_exponent("a* > 0", r);
  plan.s_range = {r, kInf};
  const double a1 = inv.a1_star, a2 = inv.a2_star, al = inv.alpha_low, be = inv.beta_high;

  switch (plan.case_label) {
    case 5: {
      plan.host = "a1* > 0, a2* > 0";
      const cplx w = aux::omega_case5(inv);
      cp.omega = w, cp.has_omega = true;
      if (w.real() >= 0.0) {
        cp.branch = "omega>=0";
        finish(AuxKind::h4);
        ch = {P::reflection(), P::multiplier(plan.aux_symbol, "H4"), P::laplace(a2, 1.0 - be - w / a2),
              P::laplace(a1, al), P::dilation(d)};
      } else {
        cp.branch = "omega<0";
        finish(AuxKind::h5);
        ch = {P::reflection(), P::multiplier(plan.aux_symbol, "H5"), P::laplace(a2, 1.0 - be), P::laplace(a1, al),
              P::ek_right(-w, 1.0 / a1, -a1 * al), P::dilation(d)};
      }
      return plan;
    }
    case 6: {
      plan.host = "a1* > 0, a2* = 0";
      const cplx w = aux::omega_case6(inv);
      cp.omega = w, cp.has_omega = true;
      if (w.real() >= 0.0) {
        cp.branch = "omega>=0";
        finish(AuxKind::h6);
        ch = {P::reflection(), P::multiplier(plan.aux_symbol, "H6"), P::reflection(), P::laplace(a1, al - w / a1),
              P::dilation(d)};
      } else {
        cp.branch = "omega<0";
        finish(AuxKind::h7);
        ch = {P::reflection(), P::multiplier(plan.aux_symbol, "H7"), P::reflection(), P::laplace(a1, al),
              P::ek_right(-w, 1.0 / a1, -a1 * al), P::dilation(d)};
      }
      return plan;
    }
    case 7: {
      plan.host = "a1* = 0, a2* > 0";
      const cplx w = aux::omega_case7(inv);
      cp.omega = w, cp.has_omega = true;
      if (w.real() >= 0.0) {
        cp.branch = "omega>=0";
        finish(AuxKind::h6_mirror);
        ch = {P::reflection(), P::multiplier(plan.aux_symbol, "H6_mirror"), P::reflection(),
              P::laplace(-a2, be + w / a2), P::dilation(d)};
      } else {
        cp.branch = "omega<0";
        finish(AuxKind::h7_mirror);
        ch = {P::reflection(), P::multiplier(plan.aux_symbol, "H7_mirror"), P::reflection(), P::laplace(-a2, be),
              P::ek_left(-w, 1.0 / a2, a2 * be - 1.0), P::dilation(d)};
      }
      return plan;
    }
    case 8: {
      plan.host = "a* > 0, a1* > 0, a2* < 0";
      const double as = inv.a_star, g = plan.space.gamma_r();
      // eta at the equality case of its lower bound unless that misses Re eta > nu - 1
      if (!cp.has_eta) {
        const double e = (g + 2.0 * a2 * (nu - 1.0) + inv.mu.real()) / as;
        cp.eta = e > nu - 1.0 ? e : nu - 0.5;
      }
      if (!cp.has_zeta) cp.zeta = 0.5 - nu;
      cp.has_eta = cp.has_zeta = true;
      const cplx w = as * cp.eta - inv.mu - 0.5;
      cp.omega = w, cp.has_omega = true;
      finish(AuxKind::h8);
      const cplx c = 0.5 + w / (2.0 * a2);
      ch = {P::reflection(),
            P::multiplier(plan.aux_symbol, "H8"),
            P::power(-c),
            P::laplace(-as, 0.5 + cp.eta - w / (2.0 * a2)),
            P::hankel(-2.0 * a2, 2.0 * a2 * cp.zeta + w - 1.0),
            P::power(c),
            P::dilation(d)};
      return plan;
    }
    case 9: {
      plan.host = "a* > 0, a1* < 0, a2* > 0";
      const double as = inv.a_star, g = plan.space.gamma_r();
      if (!cp.has_eta) {
        const double e = (g - 2.0 * a1 * nu + inv.delta_cap + inv.mu.real()) / as;
        cp.eta = e > -nu ? e : 0.5 - nu;
      }
      if (!cp.has_zeta) cp.zeta = nu - 0.5;
      cp.has_eta = cp.has_zeta = true;
      const cplx w = as * cp.eta - inv.delta_cap - inv.mu - 0.5;
      cp.omega = w, cp.has_omega = true;
      finish(AuxKind::h9);
      const cplx c = -0.5 - w / (2.0 * a1);
      ch = {P::reflection(),
            P::multiplier(plan.aux_symbol, "H9"),
            P::power(-c),
            P::laplace(as, 0.5 - cp.eta + w / (2.0 * a1)),
            P::hankel(2.0 * a1, 2.0 * a1 * cp.zeta + w - 1.0),
            P::power(c),
            P::dilation(d)};
      return plan;
    }
    default: break;
  }
  fail(ErrorKind::hypothesis_failure, "out_of_cases", "no factorization for this case");
}

// ---- JSON --------------------------------------------------------------

inline nlohmann::json to_json(const Primitive& p) {
  using detail::cjson;
  nlohmann::json j{{"op", to_string(p.kind)}, {"label", p.describe()}};
  switch (p.kind) {
    case PrimKind::W: j["d"] = p.real; break;
    case PrimKind::M: j["zeta"] = cjson(p.order); break;
    case PrimKind::R: break;
    case PrimKind::T:
      j["symbol_name"] = p.symbol_name;
      j["symbol"] = to_json(p.symbol);
      break;
    case PrimKind::EKLeft:
    case PrimKind::EKRight:
      j["alpha"] = cjson(p.order);
      j["sigma"] = p.real;
      j["eta"] = cjson(p.shift);
      break;
    case PrimKind::Hankel:
      j["kappa"] = p.real;
      j["eta"] = cjson(p.order);
      break;
    case PrimKind::Laplace:
      j["kappa"] = p.real;
      j["alpha"] = cjson(p.order);
      break;
  }
  return j;
}

inline nlohmann::json to_json(const ExponentRange& s) {
  auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json("inf"); };
  return {{"lo", num(s.lo)}, {"hi", num(s.hi)}, {"lo_closed", s.lo_closed}, {"hi_closed", s.hi_closed}};
}

inline nlohmann::json to_json(const FactorizationPlan& plan) {
  using detail::cjson;
  nlohmann::json j;
  j["case"] = plan.case_label;
  j["host"] = plan.host;
  j["order"] = "innermost_first";
  j["chain"] = nlohmann::json::array();
  for (const auto& p : plan.chain) j["chain"].push_back(to_json(p));
  j["aux_symbol_name"] = to_string(plan.aux_kind);
  j["aux_symbol"] = to_json(plan.aux_symbol);
  nlohmann::json cp;
  const auto& c = plan.chain_params;
  if (c.has_k) cp["k"] = c.k;
  if (c.has_eta) cp["eta"] = cjson(c.eta);
  if (c.has_zeta) cp["zeta"] = cjson(c.zeta);
  if (c.has_omega) cp["omega"] = cjson(c.omega);
  if (!c.branch.empty()) cp["branch"] = c.branch;
  j["chain_params"] = cp.is_null() ? nlohmann::json::object() : cp;
  j["mapping"] = {{"from", {{"nu", plan.space.nu}, {"r", plan.space.r}}},
                  {"to", {{"nu", plan.out_nu}, {"s", to_json(plan.s_range)}}}};
  return j;
}

inline nlohmann::json to_json(const SymbolVerification& v) {
  nlohmann::json j;
  j["max_residual"] = v.max_residual;
  j["points"] = nlohmann::json::array();
  for (std::size_t k = 0; k < v.points.size(); ++k)
    j["points"].push_back({{"s", detail::cjson(v.points[k])}, {"residual", v.residuals[k]}});
  return j;
}

}  // namespace foxh
