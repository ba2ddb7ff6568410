#pragma once

#include <json.hpp>

#include <string>

#include "pde.hpp"

namespace hcont {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void spec_error(const std::string& field, const std::string& what) {
  fail(ErrorCode::ParseError, field + ": " + what);
}

/// Numbers are exact: rational strings ("3/4", "-0.25", "inf") or JSON integers.
inline ExtendedReal json_extended(const Json& j, const std::string& field) {
  try {
    if (j.is_string()) return parse_extended_real(j.get<std::string>());
    if (j.is_number_integer()) return ExtendedReal(Rational(j.get<long long>()));
  } catch (const Error& e) {
    spec_error(field, e.what());
  }
  spec_error(field, "expected an exact number (string or integer)");
}

inline Rational json_rational(const Json& j, const std::string& field) {
  ExtendedReal v = json_extended(j, field);
  if (!v.is_finite()) spec_error(field, "must be finite");
  return v.value();
}

inline Polynomial json_polynomial(const Json& j, const std::string& field) {
  if (!j.is_array()) spec_error(field, "expected a coefficient array (low to high)");
  std::vector<Rational> c;
  for (std::size_t k = 0; k < j.size(); ++k) c.push_back(json_rational(j[k], field + "[" + std::to_string(k) + "]"));
  return Polynomial(std::move(c));
}

inline RationalFunction json_segment(const Json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("num")) spec_error(field, "expected {\"num\": [...], \"den\": [...]}");
  Polynomial num = json_polynomial(j["num"], field + ".num");
  Polynomial den = j.contains("den") ? json_polynomial(j["den"], field + ".den") : Polynomial::constant(1);
  if (den.is_zero()) spec_error(field + ".den", "zero denominator");
  RationalFunction s(std::move(num), std::move(den));
  if (s.degree() > max_degree_setting().load())
    fail(ErrorCode::DegreeCap, field + ": degree " + std::to_string(s.degree()) + " exceeds the cap " +
                                   std::to_string(max_degree_setting().load()));
  return s;
}

inline std::vector<RationalFunction> json_segments(const Json& j, const std::string& field) {
  if (!j.is_array()) spec_error(field, "expected an array of segments");
  std::vector<RationalFunction> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(json_segment(j[k], field + "[" + std::to_string(k) + "]"));
  return out;
}

inline BreakpointValue json_value(const Json& j, const std::string& field) {
  if (j.is_string() && j.get<std::string>() == "undefined") return std::nullopt;
  try {
    if (j.is_array()) {
      if (j.size() != 2) spec_error(field, "expected [lower, upper]");
      return ExtendedInterval(json_extended(j[0], field + "[0]"), json_extended(j[1], field + "[1]"));
    }
    return ExtendedInterval(json_extended(j, field));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    spec_error(field, e.what());
  }
}

inline Json json_of(const ExtendedReal& v) { return to_string(v); }

inline Json json_of(const Polynomial& p) {
  Json a = Json::array();
  for (const auto& c : p.coefficients()) a.push_back(to_string(c));
  if (p.is_zero()) a.push_back("0");
  return a;
}

inline Json json_of(const RationalFunction& s) { return Json{{"num", json_of(s.num())}, {"den", json_of(s.den())}}; }

inline Json json_of(const BreakpointValue& v) {
  if (!v) return "undefined";
  if (v->is_degenerate()) return json_of(v->lower());
  return Json::array({json_of(v->lower()), json_of(v->upper())});
}

}  // namespace detail

/// {"domain": [a, b], "breakpoints": [...], "segments": [...]} for point valued gaps, or
/// "lower" and "upper" segment lists; "breakpoint_values" entries are a number, a pair
/// [lower, upper] or "undefined". Structural violations are reported as ParseError with
/// the offending field.
inline PiecewiseFunction function_from_json(const Json& j) {
  using namespace detail;
  if (!j.is_object()) spec_error("function spec", "expected a JSON object");
  if (!j.contains("domain") || !j["domain"].is_array() || j["domain"].size() != 2)
    spec_error("domain", "expected [left, right]");
  ExtendedReal a = json_extended(j["domain"][0], "domain[0]"), b = json_extended(j["domain"][1], "domain[1]");
  if (!(a < b)) spec_error("domain", "left end must be below right end");
  std::vector<Rational> bps;
  if (j.contains("breakpoints")) {
    if (!j["breakpoints"].is_array()) spec_error("breakpoints", "expected an array");
    for (std::size_t k = 0; k < j["breakpoints"].size(); ++k)
      bps.push_back(json_rational(j["breakpoints"][k], "breakpoints[" + std::to_string(k) + "]"));
  }
  std::vector<RationalFunction> lo, up;
  if (j.contains("segments")) {
    lo = json_segments(j["segments"], "segments");
    up = lo;
  } else {
    if (!j.contains("lower") || !j.contains("upper")) spec_error("segments", "give \"segments\" or both \"lower\" and \"upper\"");
    lo = json_segments(j["lower"], "lower");
    up = json_segments(j["upper"], "upper");
  }
  std::vector<BreakpointValue> vals;
  if (j.contains("breakpoint_values")) {
    const Json& v = j["breakpoint_values"];
    if (!v.is_array()) spec_error("breakpoint_values", "expected an array");
    for (std::size_t k = 0; k < v.size(); ++k) {
      std::string field = "breakpoint_values[" + std::to_string(k) + "]";
      if (k < bps.size()) field += " (x = " + to_string(bps[k]) + ")";
      vals.push_back(json_value(v[k], field));
    }
  } else {
    vals.assign(bps.size(), std::nullopt);
  }
  try {
    return PiecewiseFunction(Domain1D(a, b), std::move(bps), std::move(lo), std::move(up), std::move(vals));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DegreeCap || e.code() == ErrorCode::IrrationalBreakpoint) throw;
    spec_error("function spec", e.what());
  }
}

inline Json function_to_json(const PiecewiseFunction& f) {
  using namespace detail;
  Json j;
  j["domain"] = Json::array({json_of(f.domain().left()), json_of(f.domain().right())});
  Json bps = Json::array();
  for (const auto& x : f.breakpoints()) bps.push_back(to_string(x));
  j["breakpoints"] = bps;
  auto segs = [](const std::vector<RationalFunction>& v) {
    Json a = Json::array();
    for (const auto& s : v) a.push_back(json_of(s));
    return a;
  };
  if (f.lower_segments() == f.upper_segments()) {
    j["segments"] = segs(f.lower_segments());
  } else {
    j["lower"] = segs(f.lower_segments());
    j["upper"] = segs(f.upper_segments());
  }
  Json vals = Json::array();
  for (const auto& v : f.breakpoint_values()) vals.push_back(json_of(v));
  j["breakpoint_values"] = vals;
  return j;
}

inline Var parse_var(const std::string& s, const std::string& field) {
  if (s == "u") return Var::U;
  if (s == "u'") return Var::U1;
  if (s == "u''") return Var::U2;
  if (s == "x") return Var::X;
  detail::spec_error(field, "unknown argument '" + s + "'");
}

/// {"m": 1, "g": "u' + u^3", "pivot": "u'"}
inline DiffOperator operator_from_json(const Json& j) {
  if (!j.is_object()) detail::spec_error("operator spec", "expected a JSON object");
  if (!j.contains("m") || !j["m"].is_number_integer()) detail::spec_error("m", "expected the integer order 1 or 2");
  if (!j.contains("g") || !j["g"].is_string()) detail::spec_error("g", "expected an expression string");
  if (!j.contains("pivot") || !j["pivot"].is_string()) detail::spec_error("pivot", "expected \"u\", \"u'\" or \"u''\"");
  Expr g = parse_expression(j["g"].get<std::string>());
  return DiffOperator(j["m"].get<int>(), g, parse_var(j["pivot"].get<std::string>(), "pivot"));
}

inline Json operator_to_json(const DiffOperator& t) {
  return Json{{"m", t.order()}, {"g", t.g().to_string()}, {"pivot", to_string(t.pivot())}};
}

/// Parses text, turning JSON syntax errors into ParseError with the byte position.
inline Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::ParseError, what + ": " + e.what());
  }
}

inline Json patch_to_json(const SubsolutionPatch& p) {
  return Json{{"center", to_string(p.center)},
              {"radius", to_string(p.radius)},
              {"left", to_string(p.left)},
              {"right", to_string(p.right)},
              {"polynomial", detail::json_of(p.p)},
              {"samples", p.samples}};
}

inline Json subsolution_to_json(const GlobalSubsolution& u) {
  Json pieces = Json::array();
  for (const auto& p : u.pieces) pieces.push_back(patch_to_json(p));
  Json gamma = Json::array();
  for (const auto& x : u.gamma.points()) gamma.push_back(to_string(x));
  return Json{{"epsilon", to_string(u.epsilon)},
              {"band", Json::array({to_string(u.band.lower_gap), to_string(u.band.upper_gap)})},
              {"compact", Json::array({to_string(u.left), to_string(u.right)})},
              {"patches", pieces.size()},
              {"gamma", gamma},
              {"verification_samples", u.samples},
              {"max_gap", to_string(u.max_gap)},
              {"min_gap", to_string(u.min_gap)},
              {"pieces", pieces}};
}

}  // namespace hcont
