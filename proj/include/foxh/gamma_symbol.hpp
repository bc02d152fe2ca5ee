#pragma once

// GammaSymbol: s -> prod Gamma(c_k + w_k s) / prod Gamma(c_l + w_l s) * exp(sum (u + v s) log b).
//
// The log value is the sum of per-factor principal logs. Along a vertical line
// each factor argument moves monotonically, so the imaginary part is continuous
// in Im s without any unwinding.

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <json.hpp>

#include "foxh/gamma.hpp"
#include "foxh/hparams.hpp"

namespace foxh {

struct GammaFactor {
  cplx offset;   // c
  double slope;  // w, any sign
  cplx arg(cplx s) const { return offset + slope * s; }
};

// exp((u + v s) * log_base)
struct PowerFactor {
  cplx log_base;
  cplx u;
  cplx v;
  cplx log_value(cplx s) const { return (u + v * s) * log_base; }
};

class GammaSymbol {
 public:
  std::vector<GammaFactor> numerator;
  std::vector<GammaFactor> denominator;
  std::vector<PowerFactor> powers;

  GammaSymbol() = default;

  static GammaSymbol gamma(cplx offset, double slope) {
    GammaSymbol g;
    g.numerator.push_back({offset, slope});
    return g;
  }
  static GammaSymbol inverse_gamma(cplx offset, double slope) {
    GammaSymbol g;
    g.denominator.push_back({offset, slope});
    return g;
  }
  // base^{u + v s} for a positive real base.
  static GammaSymbol power(double base, cplx u, cplx v) {
    if (!(base > 0.0))
      fail(ErrorKind::domain, "power_base", "power prefactor base must be positive");
    GammaSymbol g;
    g.powers.push_back({std::log(base), u, v});
    return g;
  }
  // exp(u + v s)
  static GammaSymbol exponential(cplx u, cplx v) {
    GammaSymbol g;
    g.powers.push_back({1.0, u, v});
    return g;
  }
  static GammaSymbol constant(cplx value) {
    if (value == 0.0) fail(ErrorKind::domain, "zero_constant", "constant factor must be non-zero");
    return exponential(std::log(value), 0.0);
  }

  // Log of the value. A denominator pole yields -inf real part (value 0).
  cplx eval_log(cplx s) const {
    cplx acc = 0.0;
    for (const auto& f : numerator) {
      const cplx z = f.arg(s);
      if (near_pole(z))
        fail(ErrorKind::pole, "numerator_pole", "symbol evaluated at a pole of a numerator factor");
      acc += log_gamma(z);
    }
    bool zero = false;
    for (const auto& f : denominator) {
      const cplx z = f.arg(s);
      if (near_pole(z)) {
        zero = true;
        continue;
      }
      acc -= log_gamma(z);
    }
    for (const auto& p : powers) acc += p.log_value(s);
    if (zero) return {-std::numeric_limits<double>::infinity(), 0.0};
    return acc;
  }

  cplx eval(cplx s) const {
    const cplx l = eval_log(s);
    if (std::isinf(l.real()) && l.real() < 0) return 0.0;
    return std::exp(l);
  }

  // d/ds log of the symbol.
  cplx log_derivative(cplx s) const {
    cplx acc = 0.0;
    for (const auto& f : numerator) acc += f.slope * digamma(f.arg(s));
    for (const auto& f : denominator) acc -= f.slope * digamma(f.arg(s));
    for (const auto& p : powers) acc += p.v * p.log_base;
    return acc;
  }

  // s -> a s + b
  GammaSymbol substitute(double a, cplx b) const {
    GammaSymbol g;
    for (const auto& f : numerator) g.numerator.push_back({f.offset + f.slope * b, f.slope * a});
    for (const auto& f : denominator) g.denominator.push_back({f.offset + f.slope * b, f.slope * a});
    for (const auto& p : powers) g.powers.push_back({p.log_base, p.u + p.v * b, p.v * a});
    return g;
  }

  GammaSymbol reflect() const { return substitute(-1.0, 1.0); }
  GammaSymbol shift(cplx b) const { return substitute(1.0, b); }

  GammaSymbol inverse() const {
    GammaSymbol g;
    g.numerator = denominator;
    g.denominator = numerator;
    for (const auto& p : powers) g.powers.push_back({p.log_base, -p.u, -p.v});
    return g;
  }

  GammaSymbol& operator*=(const GammaSymbol& o) {
    numerator.insert(numerator.end(), o.numerator.begin(), o.numerator.end());
    denominator.insert(denominator.end(), o.denominator.begin(), o.denominator.end());
    powers.insert(powers.end(), o.powers.begin(), o.powers.end());
    return *this;
  }
  friend GammaSymbol operator*(GammaSymbol a, const GammaSymbol& b) { return a *= b; }
  friend GammaSymbol operator/(GammaSymbol a, const GammaSymbol& b) { return a *= b.inverse(); }

  bool empty() const { return numerator.empty() && denominator.empty() && powers.empty(); }

  static bool near_pole(cplx z) {
    const double k = std::round(z.real());
    if (k > 0.5) return false;
    const double tol = 1e-12 * std::max(1.0, std::abs(k));
    return std::abs(z.real() - k) <= tol && std::abs(z.imag()) <= tol;
  }
};

// Mellin symbol of an H-function:
//   prod_{j<=m} Gamma(b_j + beta_j s) prod_{i<=n} Gamma(1 - a_i - alpha_i s)
//   / prod_{i>n} Gamma(a_i + alpha_i s) prod_{j>m} Gamma(1 - b_j - beta_j s)
inline GammaSymbol symbol_from_params(const HParams& h) {
  GammaSymbol g;
  for (int j = 0; j < h.m; ++j) g.numerator.push_back({h.lower[j].value, h.lower[j].weight});
  for (int i = 0; i < h.n; ++i) g.numerator.push_back({1.0 - h.upper[i].value, -h.upper[i].weight});
  for (int i = h.n; i < h.p; ++i) g.denominator.push_back({h.upper[i].value, h.upper[i].weight});
  for (int j = h.m; j < h.q; ++j) g.denominator.push_back({1.0 - h.lower[j].value, -h.lower[j].weight});
  return g;
}

enum class ComposeKind { multiply, reflect, scale_argument, power_prefactor };

// multiply: a * b.  reflect: a(1-s).  scale_argument: a(k s + b) with k = scale, b = shift.
// power_prefactor: base^{u + v s} * a.
struct ComposeArgs {
  double scale = 1.0;
  cplx shift = 0.0;
  double base = 1.0;
  cplx u = 0.0, v = 0.0;
};

inline GammaSymbol symbol_compose(ComposeKind kind, const GammaSymbol& a, const GammaSymbol& b = {},
                                  const ComposeArgs& args = {}) {
  switch (kind) {
    case ComposeKind::multiply: return a * b;
    case ComposeKind::reflect: return a.reflect();
    case ComposeKind::scale_argument: return a.substitute(args.scale, args.shift);
    case ComposeKind::power_prefactor: return GammaSymbol::power(args.base, args.u, args.v) * a;
  }
  return a;
}

// JSON: {"numerator":[{"offset":[re,im],"slope":w}], "denominator":[...],
//        "powers":[{"log_base":[re,im],"u":[re,im],"v":[re,im]}]}
namespace detail {
inline nlohmann::json cjson(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }
inline cplx from_cjson(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}
}  // namespace detail

inline nlohmann::json to_json(const GammaSymbol& g) {
  nlohmann::json j;
  auto factors = [](const std::vector<GammaFactor>& v) {
    auto a = nlohmann::json::array();
    for (const auto& f : v) a.push_back({{"offset", detail::cjson(f.offset)}, {"slope", f.slope}});
    return a;
  };
  j["numerator"] = factors(g.numerator);
  j["denominator"] = factors(g.denominator);
  j["powers"] = nlohmann::json::array();
  for (const auto& p : g.powers)
    j["powers"].push_back(
        {{"log_base", detail::cjson(p.log_base)}, {"u", detail::cjson(p.u)}, {"v", detail::cjson(p.v)}});
  return j;
}

inline GammaSymbol symbol_from_json(const nlohmann::json& j) {
  GammaSymbol g;
  for (const auto& f : j.at("numerator"))
    g.numerator.push_back({detail::from_cjson(f.at("offset")), f.at("slope").get<double>()});
  for (const auto& f : j.at("denominator"))
    g.denominator.push_back({detail::from_cjson(f.at("offset")), f.at("slope").get<double>()});
  for (const auto& p : j.at("powers"))
    g.powers.push_back(
        {detail::from_cjson(p.at("log_base")), detail::from_cjson(p.at("u")), detail::from_cjson(p.at("v"))});
  return g;
}

}  // namespace foxh
