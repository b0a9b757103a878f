#pragma once

// JSON config files for CEA runs.
//
//   {
//     "schema_version": 1,
//     "family": "M5",
//     "functions": {"Phi": "exp(t)"},
//     "thresholds": {"C": 2},
//     "window": {"s": [0, 4], "t": [0, 4]},
//     "resolution": 64,
//     "property": "E4",
//     "field": "complex",
//     "seed": 0,
//     "samples": 1000,
//     "tolerance": 1e-9,
//     "t_max": 10
//   }
//
// Only schema_version, family and the family's functions/threshold are
// required. Unknown keys are rejected so typos do not pass silently.

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "evoalg/cea.hpp"
#include "evoalg/classify2d.hpp"
#include "evoalg/error.hpp"

namespace evoalg {

class ConfigError : public Error {
 public:
  using Error::Error;
};

inline constexpr int cea_schema_version = 1;

struct CeaConfig {
  explicit CeaConfig(ChainFamilySpec s) : spec(std::move(s)) {}

  ChainFamilySpec spec;
  Window window{0, 4, 0, 4};
  int resolution = 64;
  std::optional<ClassTag> property;  // nullopt: "any" (every cell is an evolution algebra)
  Field field = Field::complex;
  std::uint64_t seed = 0;
  std::size_t samples = 1000;
  double tolerance = default_tolerance;
  TripleSampling sampling;
};

namespace detail {

template <class T>
T config_get(const nlohmann::json& j, const char* key, const char* type) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config: '") + key + "' must be " + type);
  }
}

inline std::uint64_t config_uint(const nlohmann::json& j, const char* key) {
  if (!j.at(key).is_number_unsigned())
    throw ConfigError(std::string("config: '") + key + "' must be a non-negative integer");
  return j.at(key).get<std::uint64_t>();
}

inline std::pair<double, double> config_range(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2 || !j[key][0].is_number() ||
      !j[key][1].is_number())
    throw ConfigError(std::string("config: window.") + key + " must be [min, max]");
  return {j[key][0].get<double>(), j[key][1].get<double>()};
}

}  // namespace detail

inline CeaConfig parse_cea_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");

  static const std::set<std::string> known = {"schema_version", "family", "functions", "thresholds",
                                              "window", "resolution", "property", "field",
                                              "seed", "samples", "tolerance", "t_max"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw ConfigError("config: unknown key '" + k + "'");

  if (!j.contains("schema_version")) throw ConfigError("config: missing schema_version");
  const int version = detail::config_get<int>(j, "schema_version", "an integer");
  if (version != cea_schema_version)
    throw ConfigError("config: unsupported schema_version " + std::to_string(version));

  if (!j.contains("family")) throw ConfigError("config: missing family");
  const auto fam_text = detail::config_get<std::string>(j, "family", "a string");
  const auto fam = parse_family_id(fam_text);
  if (!fam) throw ConfigError("config: unknown family '" + fam_text + "' (expected M0..M8)");

  std::map<std::string, Expr> functions;
  if (j.contains("functions")) {
    if (!j["functions"].is_object()) throw ConfigError("config: 'functions' must be an object");
    for (const auto& [name, v] : j["functions"].items()) {
      if (!v.is_string()) throw ConfigError("config: function '" + name + "' must be a string");
      try {
        functions.emplace(name, Expr::parse(v.get<std::string>()));
      } catch (const ParseError& e) {
        throw ConfigError("config: function '" + name + "': " + e.what());
      }
    }
  }

  std::optional<double> threshold;
  if (j.contains("thresholds")) {
    if (!j["thresholds"].is_object()) throw ConfigError("config: 'thresholds' must be an object");
    const auto tname = threshold_name(*fam);
    for (const auto& [name, v] : j["thresholds"].items()) {
      if (!tname || name != *tname)
        throw ConfigError("config: " + to_string(*fam) + " takes no threshold '" + name + "'");
      if (!v.is_number()) throw ConfigError("config: threshold '" + name + "' must be a number");
      threshold = v.get<double>();
    }
  }

  std::optional<ChainFamilySpec> spec;
  try {
    spec.emplace(*fam, std::move(functions), threshold);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  CeaConfig cfg(*spec);
  if (j.contains("window")) {
    const auto& w = j["window"];
    if (!w.is_object()) throw ConfigError("config: 'window' must be an object");
    std::tie(cfg.window.s_min, cfg.window.s_max) = detail::config_range(w, "s");
    std::tie(cfg.window.t_min, cfg.window.t_max) = detail::config_range(w, "t");
  }
  if (j.contains("resolution")) {
    const auto res = detail::config_uint(j, "resolution");
    if (res < 2 || res > 4096) throw ConfigError("config: resolution must be in [2, 4096]");
    cfg.resolution = static_cast<int>(res);
  }
  if (j.contains("property")) {
    const auto p = detail::config_get<std::string>(j, "property", "a string");
    if (p != "any") {
      cfg.property = parse_class_tag(p);
      if (!cfg.property) throw ConfigError("config: unknown property '" + p + "'");
    }
  }
  if (j.contains("field")) {
    const auto f = detail::config_get<std::string>(j, "field", "a string");
    if (f != "real" && f != "complex") throw ConfigError("config: field must be real or complex");
    cfg.field = f == "real" ? Field::real : Field::complex;
  }
  if (j.contains("seed")) cfg.seed = detail::config_uint(j, "seed");
  if (j.contains("samples")) {
    cfg.samples = detail::config_uint(j, "samples");
    if (cfg.samples < 1) throw ConfigError("config: samples must be >= 1");
  }
  if (j.contains("tolerance")) {
    cfg.tolerance = detail::config_get<double>(j, "tolerance", "a number");
    if (!(cfg.tolerance > 0)) throw ConfigError("config: tolerance must be positive");
  }
  if (j.contains("t_max")) {
    cfg.sampling.t_max = detail::config_get<double>(j, "t_max", "a number");
    if (!(cfg.sampling.t_max > 0.3)) throw ConfigError("config: t_max must exceed 0.3");
  }
  return cfg;
}

inline CeaConfig read_cea_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_cea_config(buf.str());
}

}  // namespace evoalg
