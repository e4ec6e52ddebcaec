#pragma once

// JSON form of FixedPointData:
//   {"label": str, "manifold_dim": int,
//    "components": [{"name": str, "dim": int, "trace_L": "p/q",
//                    "normal_weights": ["p/q", ...], "c1_tangent_deg": "p/q",
//                    "normal_line_degrees": ["p/q", ...]}]}
// Rationals may be written as "p/q" strings or JSON integers.

#include <fstream>
#include <string>

#include <json.hpp>

#include "lckinv/localization.hpp"

namespace lckinv {

namespace detail {

inline Rational rational_from_json(const nlohmann::json& j, const std::string& field) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("field '" + field + "' must be an integer or a \"p/q\" string");
}

inline const nlohmann::json& require(const nlohmann::json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return obj.at(key);
}

}  // namespace detail

inline FixedPointData fixed_point_data_from_json(const nlohmann::json& j) {
  FixedPointData data;
  data.label = j.value("label", std::string{});
  const auto& dim = detail::require(j, "manifold_dim");
  if (!dim.is_number_integer()) throw ParseError("field 'manifold_dim' must be an integer");
  data.manifold_dim = dim.get<int>();
  const auto& comps = detail::require(j, "components");
  if (!comps.is_array()) throw ParseError("field 'components' must be an array");
  for (const auto& cj : comps) {
    ZeroComponent c;
    c.name = cj.value("name", std::string{});
    const auto& cdim = detail::require(cj, "dim");
    if (!cdim.is_number_integer()) throw ParseError("field 'dim' must be an integer");
    c.dim = cdim.get<int>();
    c.trace_L = detail::rational_from_json(detail::require(cj, "trace_L"), "trace_L");
    c.c1_tangent_deg = cj.contains("c1_tangent_deg")
                           ? detail::rational_from_json(cj.at("c1_tangent_deg"), "c1_tangent_deg")
                           : Rational(0);
    for (const auto& w : detail::require(cj, "normal_weights")) {
      c.normal_weights.push_back(detail::rational_from_json(w, "normal_weights"));
    }
    for (const auto& deg : detail::require(cj, "normal_line_degrees")) {
      c.normal_line_degrees.push_back(detail::rational_from_json(deg, "normal_line_degrees"));
    }
    data.components.push_back(std::move(c));
  }
  validate(data);
  return data;
}

inline nlohmann::json to_json(const FixedPointData& data) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : data.components) {
    nlohmann::json weights = nlohmann::json::array();
    nlohmann::json degrees = nlohmann::json::array();
    for (const auto& w : c.normal_weights) weights.push_back(to_string(w));
    for (const auto& deg : c.normal_line_degrees) degrees.push_back(to_string(deg));
    comps.push_back({{"name", c.name},
                     {"dim", c.dim},
                     {"trace_L", to_string(c.trace_L)},
                     {"normal_weights", weights},
                     {"c1_tangent_deg", to_string(c.c1_tangent_deg)},
                     {"normal_line_degrees", degrees}});
  }
  return {{"label", data.label}, {"manifold_dim", data.manifold_dim}, {"components", comps}};
}

inline FixedPointData load_fixed_point_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open fixed-point file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("fixed-point file '" + path + "' is not valid JSON: " + e.what());
  }
  return fixed_point_data_from_json(j);
}

}  // namespace lckinv
