#pragma once

// Fixed-format emitters shared by the CLI: 12 significant digits with an
// explicit exponent for CSV, and JSON with every float rounded to the same
// 12 digits so repeated runs diff cleanly.

#include <cmath>
#include <complex>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "foxh/error.hpp"
#include "foxh/hparams.hpp"
#include "foxh/hparams_json.hpp"

namespace foxh::report {

inline std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", v + 0.0);
  return buf;
}

inline double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::stod(fmt(v)) + 0.0;
}

// Rounds floats in place; non-finite values become strings ("inf", "nan").
inline void round_json(nlohmann::json& j) {
  if (j.is_number_float()) {
    const double v = j.get<double>();
    j = std::isfinite(v) ? nlohmann::json(round12(v)) : nlohmann::json(fmt(v));
  } else if (j.is_array() || j.is_object()) {
    for (auto& e : j) round_json(e);
  }
}

inline std::string dump(nlohmann::json j) {
  round_json(j);
  return j.dump(2) + "\n";
}

inline nlohmann::json complex_json(cplx z) { return nlohmann::json::array({z.real() + 0.0, z.imag() + 0.0}); }

inline nlohmann::json invariants_json(const Invariants& inv) {
  nlohmann::json j;
  j["m"] = inv.m, j["n"] = inv.n, j["p"] = inv.p, j["q"] = inv.q;
  j["a_star"] = inv.a_star;
  j["Delta"] = inv.delta_cap;
  j["a1_star"] = inv.a1_star;
  j["a2_star"] = inv.a2_star;
  j["mu"] = complex_json(inv.mu);
  j["xi"] = complex_json(inv.xi);
  j["delta"] = inv.delta;
  j["c_star"] = inv.c_star;
  j["alpha"] = inv.alpha_low;
  j["beta"] = inv.beta_high;
  j["case"] = inv.case_label ? nlohmann::json(*inv.case_label) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json admissibility_json(const Admissibility& a) {
  nlohmann::json j{{"ok", a.ok}, {"reason", a.reason}};
  if (!a.ok) j["code"] = a.code;
  return j;
}

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : header_(std::move(header)) {}
  void row(const std::vector<double>& v) { rows_.push_back(v); }
  void write(std::ostream& os) const {
    for (std::size_t k = 0; k < header_.size(); ++k) os << (k ? "," : "") << header_[k];
    os << "\n";
    for (const auto& r : rows_) {
      for (std::size_t k = 0; k < r.size(); ++k) os << (k ? "," : "") << fmt(r[k]);
      os << "\n";
    }
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

// One line: "error <kind> <code>: <message>", newlines flattened.
inline std::string error_line(const std::string& kind, const std::string& code, std::string what) {
  for (auto& c : what)
    if (c == '\n' || c == '\r') c = ' ';
  return "error " + kind + " " + code + ": " + what + "\n";
}

}  // namespace foxh::report
