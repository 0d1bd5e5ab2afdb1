#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gss/noise.hpp"
#include "gss/estimation.hpp"
#include "gss/simulator.hpp"

namespace gss {

// JSON-backed experiment description driving simulate/postprocess.
struct ExperimentConfig {
  std::string gate_set = "c2";
  std::string measurement = "z_basis";
  NoiseSpec noise;
  SpamSpec spam;
  SequencePlan plan;
  std::vector<std::string> probes;  // catalog names (sector labels, "p1_int", "p0", ...)
  EstimatorKind estimator = EstimatorKind::mean;
  int mom_groups = 0;
  std::string fit_model = "single";  // single | offset | offset_m
  uint64_t seed = 0;

  // Canonical (key-sorted) hash, stable under key reordering in the file.
  std::string hash() const;

  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig from_file(const std::string& path);
  nlohmann::json to_json() const;
};

NoiseSpec noise_spec_from_json(const nlohmann::json& j);
nlohmann::json noise_spec_to_json(const NoiseSpec& s);

DecayModelKind fit_model_by_name(const std::string& name);

// Schema violations carry the offending field path.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gss
