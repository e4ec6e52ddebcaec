#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lckinv/errors.hpp"
#include "lckinv/invariant.hpp"

#ifndef LCKINV_VERSION
#define LCKINV_VERSION "0.1.0"
#endif

namespace lckinv {

struct ReportEntry {
  std::string label;
  double value_re = 0.0;
  double value_im = 0.0;
  double error_estimate = 0.0;
  std::string method;
  std::optional<std::string> exact;  // exact rational, localization only
  std::optional<double> tolerance;
  std::optional<bool> pass;

  friend bool operator==(const ReportEntry&, const ReportEntry&) = default;
};

struct Report {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  std::vector<ReportEntry> results;
  std::string version = LCKINV_VERSION;
  std::string normalization = normalization_convention;
  std::optional<bool> pass;
  nlohmann::json details = nlohmann::json::object();

  bool operator==(const Report&) const = default;
};

inline ReportEntry entry_from(const std::string& label, const InvariantResult& r) {
  return {label, r.value.real(), r.value.imag(), r.error_estimate, to_string(r.method), std::nullopt, std::nullopt,
          std::nullopt};
}

inline void to_json(nlohmann::json& j, const ReportEntry& e) {
  for (double v : {e.value_re, e.value_im, e.error_estimate}) {
    if (!std::isfinite(v)) throw EvaluationError("report entry '" + e.label + "' has a non-finite value");
  }
  j = {{"label", e.label},
       {"value_re", e.value_re},
       {"value_im", e.value_im},
       {"error_estimate", e.error_estimate},
       {"method", e.method}};
  if (e.exact) j["exact"] = *e.exact;
  if (e.tolerance) j["tolerance"] = *e.tolerance;
  if (e.pass) j["pass"] = *e.pass;
}

inline void from_json(const nlohmann::json& j, ReportEntry& e) {
  e.label = j.at("label").get<std::string>();
  e.value_re = j.at("value_re").get<double>();
  e.value_im = j.at("value_im").get<double>();
  e.error_estimate = j.at("error_estimate").get<double>();
  e.method = j.at("method").get<std::string>();
  e.exact = j.contains("exact") ? std::optional(j.at("exact").get<std::string>()) : std::nullopt;
  e.tolerance = j.contains("tolerance") ? std::optional(j.at("tolerance").get<double>()) : std::nullopt;
  e.pass = j.contains("pass") ? std::optional(j.at("pass").get<bool>()) : std::nullopt;
}

inline void to_json(nlohmann::json& j, const Report& r) {
  j = {{"command", r.command},
       {"inputs", r.inputs},
       {"results", r.results},
       {"environment", {{"version", r.version}, {"normalization", r.normalization}}}};
  if (r.pass) j["pass"] = *r.pass;
  if (!r.details.empty()) j["details"] = r.details;
}

inline void from_json(const nlohmann::json& j, Report& r) {
  r.command = j.at("command").get<std::string>();
  r.inputs = j.at("inputs");
  r.results = j.at("results").get<std::vector<ReportEntry>>();
  r.version = j.at("environment").at("version").get<std::string>();
  r.normalization = j.at("environment").at("normalization").get<std::string>();
  r.pass = j.contains("pass") ? std::optional(j.at("pass").get<bool>()) : std::nullopt;
  r.details = j.contains("details") ? j.at("details") : nlohmann::json::object();
}

}  // namespace lckinv
