#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "alphageo/manifold.hpp"
#include "alphageo/quadrature.hpp"

namespace alphageo {

struct GridSpec {
  QuadratureRule rule = QuadratureRule::simpson;
  std::size_t n = 201;
};

struct EstimatorSpec {
  std::string type = "builtin";  // builtin | table
  std::vector<std::vector<double>> table;
};

/// Finite-difference step overrides.
struct FdSpec {
  double h_metric = 1e-3;
  double h_score = 1e-5;
  double h_christoffel = 1e-2;
};

/// A fully validated experiment configuration. `canonical` holds the
/// normalized JSON form (defaults materialized, keys sorted) from which the
/// digest is computed; serialize_config emits exactly this form, so
/// validate(serialize(c)) reproduces c.
struct ExperimentConfig {
  FamilySpec family;
  PriorSpec prior;
  std::vector<double> alphas;
  GridSpec grid;
  EstimatorSpec estimator;
  FdSpec fd;
  std::vector<std::string> tasks;
  std::optional<ThetaPoint> theta;
  std::optional<ThetaPoint> theta2;
  std::string out_dir = "out";
  std::uint64_t seed = 0;

  nlohmann::json canonical;
  std::string digest;
};

/// Optional command-line overrides applied before normalization (they are
/// part of the effective config and therefore of its digest).
struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> h_metric;
  std::optional<std::string> out_dir;
};

/// Parses and validates a config file. Throws ConfigError whose message
/// carries one "path.field: reason" line per problem.
ExperimentConfig validate_config(const std::string& path,
                                 const ConfigOverrides& overrides = {});

/// Validates an already parsed JSON document.
ExperimentConfig validate_config_json(const nlohmann::json& doc,
                                      const ConfigOverrides& overrides = {});

/// Canonical serialization (pretty-printed, sorted keys, trailing newline).
std::string serialize_config(const ExperimentConfig& config);

/// FNV-1a 64-bit digest of the canonical form, as 16 hex characters.
std::string config_digest(const nlohmann::json& canonical);

/// Constructs the model and estimator described by a validated config.
BayesianModel model_from_config(const ExperimentConfig& config);

}  // namespace alphageo
