#pragma once

// JSON form of HParams:
//   {"m":1,"n":0,"p":0,"q":1,"upper":[],"lower":[[0,0,1]]}
// Each pair is [re, im, weight]; the weight may be a number or a "num/den" string.

#include <string>

#include <json.hpp>

#include "foxh/hparams.hpp"

namespace foxh {

namespace detail {

inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const long long num = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return Rational(num);
    }
    const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
    const long long num = std::stoll(a, &used);
    if (used != a.size()) throw std::invalid_argument(text);
    const long long den = std::stoll(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    if (den == 0) fail(ErrorKind::invalid_params, "zero_denominator", "weight \"" + text + "\" has zero denominator");
    return Rational(num, den);
  } catch (const std::logic_error&) {
    fail(ErrorKind::invalid_params, "bad_rational", "cannot parse weight \"" + text + "\"");
  }
}

inline ParamPair pair_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number())
    fail(ErrorKind::invalid_params, "bad_pair", "parameter pair must be [re, im, weight]");
  const cplx v(j[0].get<double>(), j[1].get<double>());
  if (j[2].is_string()) return ParamPair(v, parse_rational(j[2].get<std::string>()));
  if (!j[2].is_number()) fail(ErrorKind::invalid_params, "bad_pair", "weight must be a number or \"num/den\"");
  return ParamPair(v, j[2].get<double>());
}

inline nlohmann::json pair_to_json(const ParamPair& e) {
  nlohmann::json w;
  if (e.exact_weight) {
    const auto& r = *e.exact_weight;
    w = r.denominator() == 1 ? std::to_string(r.numerator())
                             : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
  } else {
    w = e.weight;
  }
  return nlohmann::json::array({e.value.real(), e.value.imag(), w});
}

}  // namespace detail

inline HParams hparams_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorKind::invalid_params, "bad_json", "params must be a JSON object");
  HParams h;
  auto order = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
      fail(ErrorKind::invalid_params, "missing_order", std::string("missing integer field \"") + key + "\"");
    return j[key].get<int>();
  };
  h.m = order("m");
  h.n = order("n");
  h.p = order("p");
  h.q = order("q");
  for (const char* key : {"upper", "lower"}) {
    if (!j.contains(key)) continue;
    if (!j[key].is_array()) fail(ErrorKind::invalid_params, "bad_json", std::string("\"") + key + "\" must be an array");
    auto& dst = std::string(key) == "upper" ? h.upper : h.lower;
    for (const auto& e : j[key]) dst.push_back(detail::pair_from_json(e));
  }
  return validate_params(std::move(h));
}

inline HParams hparams_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::invalid_params, "bad_json", std::string("params JSON does not parse: ") + e.what());
  }
  return hparams_from_json(j);
}

inline nlohmann::json to_json(const HParams& h) {
  nlohmann::json j;
  j["m"] = h.m;
  j["n"] = h.n;
  j["p"] = h.p;
  j["q"] = h.q;
  j["upper"] = nlohmann::json::array();
  j["lower"] = nlohmann::json::array();
  for (const auto& e : h.upper) j["upper"].push_back(detail::pair_to_json(e));
  for (const auto& e : h.lower) j["lower"].push_back(detail::pair_to_json(e));
  return j;
}

}  // namespace foxh
