#pragma once

// Command-line front end. Exit codes: 0 success, 1 numerical failure,
// 2 hypothesis failure, 64 usage or unparseable configuration.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "foxh/error.hpp"
#include "foxh/factorization.hpp"
#include "foxh/functions.hpp"
#include "foxh/hparams.hpp"
#include "foxh/hparams_json.hpp"
#include "foxh/htransform.hpp"
#include "foxh/mellin_barnes.hpp"
#include "foxh/report.hpp"
#include "foxh/zeros.hpp"

namespace foxh {

inline constexpr int kExitOk = 0, kExitNumerical = 1, kExitHypothesis = 2, kExitUsage = 64;

struct RunConfig {
  std::string subcommand;
  std::string params;  // inline JSON or a file path
  double nu = 0.5, r = 2.0;
  std::string x_list, x_grid;
  double err = 1e-10;
  std::string format;
  std::string out;
  std::string fn = "exp";
  std::string route = "auto";
  double lambda = 1.0, h = 1.0;
  double window = 50.0;
};

namespace cli_detail {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_params: return kExitUsage;
    case ErrorKind::hypothesis_failure: return kExitHypothesis;
    default: return kExitNumerical;
  }
}

inline HParams load_params(const std::string& src) {
  if (src.empty()) throw Usage("--params is required");
  const auto first = src.find_first_not_of(" \t\n");
  if (first != std::string::npos && src[first] == '{') return hparams_from_json_text(src);
  std::ifstream in(src);
  if (!in) throw Usage("cannot read params file " + src);
  return hparams_from_json_text(std::string(std::istreambuf_iterator<char>(in), {}));
}

inline double parse_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw Usage("cannot parse " + what + " \"" + s + "\"");
  }
}

// --x a,b,c or --x-grid min:max:count (log-spaced); default x = 1
inline std::vector<double> x_values(const RunConfig& c) {
  std::vector<double> xs;
  if (!c.x_list.empty() && !c.x_grid.empty()) throw Usage("give either --x or --x-grid");
  if (!c.x_list.empty()) {
    std::stringstream ss(c.x_list);
    for (std::string item; std::getline(ss, item, ',');) xs.push_back(parse_number(item, "x"));
  } else if (!c.x_grid.empty()) {
    std::vector<std::string> parts;
    std::stringstream ss(c.x_grid);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw Usage("--x-grid wants min:max:count");
    const double lo = parse_number(parts[0], "grid min"), hi = parse_number(parts[1], "grid max");
    const double n = parse_number(parts[2], "grid count");
    if (!(lo > 0 && hi >= lo) || n < 1 || n != std::floor(n)) throw Usage("--x-grid needs 0 < min <= max and count >= 1");
    const int count = static_cast<int>(n);
    for (int k = 0; k < count; ++k)
      xs.push_back(count == 1 ? lo : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * k / (count - 1)));
  } else {
    xs.push_back(1.0);
  }
  for (double x : xs)
    if (!(x > 0.0) || !std::isfinite(x)) throw Usage("x values must be positive");
  return xs;
}

inline Function named_function(const std::string& name) {
  if (name == "exp") return testfn::power_exp(0.0);
  if (name == "texp") return testfn::power_exp(1.0);
  if (name == "gauss") return testfn::gaussian(0.0);
  if (name.rfind("tpow:", 0) == 0) return testfn::truncated_power(parse_number(name.substr(5), "tpow exponent"));
  throw Usage("unknown test function \"" + name + "\" (exp, texp, gauss, tpow:c)");
}

inline std::string fmt_or(const RunConfig& c, const char* fallback) { return c.format.empty() ? fallback : c.format; }

// ---- subcommands -------------------------------------------------------

inline void classify(const RunConfig& c, std::ostream& os) {
  const HParams hp = load_params(c.params);
  const Invariants inv = derive_invariants(hp);
  const SpaceSpec space{c.nu, c.r};
  const auto def = admissible_range(inv, space, AdmissibilityMode::definition);
  const auto direct = admissible_range(inv, space, AdmissibilityMode::direct_integral);
  if (fmt_or(c, "json") == "csv") {
    os << "field,value\n";
    auto num = [&](const char* k, double v) { os << k << "," << report::fmt(v) << "\n"; };
    num("a_star", inv.a_star);
    num("Delta", inv.delta_cap);
    num("a1_star", inv.a1_star);
    num("a2_star", inv.a2_star);
    num("re_mu", inv.mu.real());
    num("im_mu", inv.mu.imag());
    num("delta", inv.delta);
    num("alpha", inv.alpha_low);
    num("beta", inv.beta_high);
    os << "case," << (inv.case_label ? std::to_string(*inv.case_label) : "none") << "\n";
    os << "definition," << (def ? "ok" : def.code) << "\n";
    os << "direct_integral," << (direct ? "ok" : direct.code) << "\n";
    return;
  }
  nlohmann::json j;
  j["params"] = to_json(hp);
  j["invariants"] = report::invariants_json(inv);
  j["space"] = {{"nu", c.nu}, {"r", c.r}};
  j["admissibility"] = {{"definition", report::admissibility_json(def)},
                        {"direct_integral", report::admissibility_json(direct)}};
  os << report::dump(j);
}

inline void eval(const RunConfig& c, std::ostream& os) {
  const HParams hp = load_params(c.params);
  const auto xs = x_values(c);
  const auto res = eval_hfunction_batch(hp, xs, std::nullopt, c.err);
  if (fmt_or(c, "csv") == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (std::size_t k = 0; k < xs.size(); ++k)
      j.push_back({{"x", xs[k]},
                   {"value", report::complex_json(res[k].value)},
                   {"trunc_bound", res[k].truncation_bound},
                   {"quad_err", res[k].quadrature_error_estimate}});
    os << report::dump(j);
    return;
  }
  report::Csv csv({"x", "re(H)", "im(H)", "trunc_bound", "quad_err"});
  for (std::size_t k = 0; k < xs.size(); ++k)
    csv.row({xs[k], res[k].value.real(), res[k].value.imag(), res[k].truncation_bound,
             res[k].quadrature_error_estimate});
  csv.write(os);
}

inline TransformResult run_route(const std::string& route, const HParams& hp, const Function& f,
                                 const std::vector<double>& xs, const RunConfig& c) {
  const SpaceSpec space{c.nu, c.r};
  if (route == "direct") return htransform_direct(hp, f, xs, space);
  if (route == "mellin") return htransform_mellin(hp, f, xs, space);
  if (route == "repr") return htransform_repr(hp, f, c.lambda, c.h, xs, space);
  if (route == "plan") return apply_plan(plan_factorization(hp, c.nu, c.r), f, xs);
  throw Usage("unknown route \"" + route + "\" (auto, direct, mellin, repr, plan)");
}

inline void transform(const RunConfig& c, std::ostream& os) {
  const HParams hp = load_params(c.params);
  const Function f = named_function(c.fn);
  const auto xs = x_values(c);
  std::string route = c.route;
  if (route == "auto") {
    const auto direct = admissible_range(derive_invariants(hp), {c.nu, c.r}, AdmissibilityMode::direct_integral);
    route = direct ? "direct" : "mellin";
  }
  const auto res = run_route(route, hp, f, xs, c);
  if (fmt_or(c, "csv") == "json") {
    nlohmann::json j;
    j["route"] = res.route;
    j["function"] = c.fn;
    j["admissibility"] = report::admissibility_json(res.admissibility);
    j["values"] = nlohmann::json::array();
    for (std::size_t k = 0; k < xs.size(); ++k)
      j["values"].push_back({{"x", xs[k]}, {"value", report::complex_json(res.values[k])}, {"err", res.errors[k]}});
    os << report::dump(j);
    return;
  }
  report::Csv csv({"x", "re(Hf)", "im(Hf)", "err"});
  for (std::size_t k = 0; k < xs.size(); ++k) csv.row({xs[k], res.values[k].real(), res.values[k].imag(), res.errors[k]});
  csv.write(os);
}

inline void zeros(const RunConfig& c, std::ostream& os) {
  const HParams hp = load_params(c.params);
  if (!(c.window > 0.0)) throw Usage("--window must be positive");
  const auto rep = find_zeros_on_line(hp, c.nu, c.window);
  if (fmt_or(c, "json") == "csv") {
    report::Csv csv({"re", "im", "mult"});
    for (const auto& z : rep.zeros)
      csv.row({z.location.real(), z.location.imag(), static_cast<double>(z.multiplicity)});
    csv.write(os);
    return;
  }
  auto j = to_json(rep);
  j["nu"] = c.nu;
  os << report::dump(j);
}

inline void factorize(const RunConfig& c, std::ostream& os) {
  const HParams hp = load_params(c.params);
  const auto plan = plan_factorization(hp, c.nu, c.r);
  if (fmt_or(c, "json") == "csv") {
    os << "position,op,label\n";
    for (std::size_t k = 0; k < plan.chain.size(); ++k)
      os << k << "," << to_string(plan.chain[k].kind) << "," << plan.chain[k].describe() << "\n";
    return;
  }
  os << report::dump(to_json(plan));
}

// Symbol residuals against the --err threshold, then the available routes
// at the x values against each other.
inline int verify(const RunConfig& c, std::ostream& os) {
  constexpr double kRouteTol = 1e-5;
  const HParams hp = load_params(c.params);
  const auto plan = plan_factorization(hp, c.nu, c.r);
  const auto sv = verify_plan_symbol(plan, hp);
  const bool symbol_ok = sv.max_residual <= c.err;

  const Function f = named_function(c.fn);
  const auto xs = x_values(c);
  nlohmann::json routes = nlohmann::json::object();
  std::vector<std::vector<cplx>> values;
  for (const char* route : {"direct", "mellin", "plan"}) {
    try {
      const auto r = run_route(route, hp, f, xs, c);
      nlohmann::json v = nlohmann::json::array();
      for (auto z : r.values) v.push_back(report::complex_json(z));
      routes[route] = {{"values", v}};
      values.push_back(r.values);
    } catch (const Error& e) {
      routes[route] = {{"unavailable", e.code()}, {"reason", e.what()}};
    }
  }
  double worst = 0;
  for (std::size_t a = 0; a < values.size(); ++a)
    for (std::size_t b = a + 1; b < values.size(); ++b)
      for (std::size_t k = 0; k < xs.size(); ++k)
        worst = std::max(worst, std::abs(values[a][k] - values[b][k]) /
                                    std::max({std::abs(values[a][k]), std::abs(values[b][k]), 1e-300}));
  const bool routes_ok = worst <= kRouteTol;

  if (fmt_or(c, "json") == "csv") {
    report::Csv csv({"re_s", "im_s", "residual"});
    for (std::size_t k = 0; k < sv.points.size(); ++k) csv.row({sv.points[k].real(), sv.points[k].imag(), sv.residuals[k]});
    csv.write(os);
  } else {
    nlohmann::json j;
    j["case"] = plan.case_label;
    j["host"] = plan.host;
    j["symbol"] = to_json(sv);
    j["symbol_tolerance"] = c.err;
    j["symbol_ok"] = symbol_ok;
    j["function"] = c.fn;
    j["x"] = xs;
    j["routes"] = routes;
    j["compared_routes"] = values.size();
    j["max_route_difference"] = worst;
    j["route_tolerance"] = kRouteTol;
    j["routes_ok"] = routes_ok;
    os << report::dump(j);
  }
  return symbol_ok && routes_ok ? kExitOk : kExitNumerical;
}

}  // namespace cli_detail

inline int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Fox H-function kernels and H-transforms", "foxh"};
  app.require_subcommand(1, 1);
  auto common = [&c](CLI::App* s) {
    s->add_option("--params", c.params, "parameter JSON, inline or a file path");
    s->add_option("--nu", c.nu, "space exponent nu");
    s->add_option("--r", c.r, "Lebesgue exponent r");
    s->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--out", c.out, "write the report to this file");
  };
  auto xs = [&c](CLI::App* s) {
    s->add_option("--x", c.x_list, "comma-separated x values");
    s->add_option("--x-grid", c.x_grid, "min:max:count, log-spaced");
  };
  auto* s_classify = app.add_subcommand("classify", "invariants, case and admissibility");
  common(s_classify);
  auto* s_eval = app.add_subcommand("eval", "H(x) on a grid");
  common(s_eval);
  xs(s_eval);
  s_eval->add_option("--err", c.err, "absolute error target");
  auto* s_transform = app.add_subcommand("transform", "H-transform of a named test function");
  // --h belongs to the repr route, so help is --help only here
  s_transform->set_help_flag("--help", "print this help message and exit");
  common(s_transform);
  xs(s_transform);
  s_transform->add_option("--fn", c.fn, "exp, texp, gauss or tpow:c");
  s_transform->add_option("--route", c.route, "auto, direct, mellin, repr or plan");
  s_transform->add_option("--lambda", c.lambda, "lambda for the repr route");
  s_transform->add_option("--h", c.h, "h for the repr route");
  auto* s_zeros = app.add_subcommand("zeros", "zeros of the symbol near Re s = 1 - nu");
  common(s_zeros);
  s_zeros->add_option("--window", c.window, "search |Im s| <= T");
  auto* s_factorize = app.add_subcommand("factorize", "factorization plan");
  common(s_factorize);
  auto* s_verify = app.add_subcommand("verify", "plan symbol residuals and route agreement");
  common(s_verify);
  xs(s_verify);
  s_verify->add_option("--err", c.err, "symbol residual threshold");
  s_verify->add_option("--fn", c.fn, "test function for the route comparison");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << report::error_line("usage", "bad_arguments", e.what()) << app.help();
    return kExitUsage;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  if (c.subcommand == "verify" && s_verify->count("--err") == 0) c.err = 1e-10;

  std::ostringstream buf;
  int code = kExitOk;
  try {
    if (c.subcommand == "classify") cli_detail::classify(c, buf);
    else if (c.subcommand == "eval") cli_detail::eval(c, buf);
    else if (c.subcommand == "transform") cli_detail::transform(c, buf);
    else if (c.subcommand == "zeros") cli_detail::zeros(c, buf);
    else if (c.subcommand == "factorize") cli_detail::factorize(c, buf);
    else code = cli_detail::verify(c, buf);
  } catch (const cli_detail::Usage& e) {
    err << report::error_line("usage", "bad_arguments", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    err << report::error_line(to_string(e.kind()), e.code(), e.what());
    return cli_detail::exit_code(e.kind());
  }
  if (!c.out.empty()) {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
      err << report::error_line("usage", "bad_output", "cannot write " + c.out);
      return kExitUsage;
    }
    f << buf.str();
  } else {
    out << buf.str();
  }
  if (code != kExitOk) err << report::error_line("numerical_failure", "verify_failed", "verification outside tolerance");
  return code;
}

}  // namespace foxh
