#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "crossnet/dynamics.hpp"
#include "crossnet/graph.hpp"
#include "crossnet/pde_bridge.hpp"
#include "crossnet/stability.hpp"

namespace crossnet {

struct ExperimentConfig {
  std::string sweep = "k";  // k, n or p
  std::vector<double> values;
  std::size_t realizations = 200;
  double perturbation = 1e-2;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::string spectrum_method = "auto";  // auto, numeric, closed-form

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct PdeBlock {
  double ell = 1.0;
  std::size_t n = 100;

  friend bool operator==(const PdeBlock&, const PdeBlock&) = default;
};

// One top-level block per module. The graph seed is the master seed.
struct RunConfig {
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0 = available cores
  std::string output_dir = "out";
  GraphSpec graph;
  SktParams skt;
  IntegratorConfig integrator;
  ExperimentConfig experiment;
  std::optional<PdeBlock> pde;

  GraphSpec graph_spec() const;
  unsigned thread_count() const;
  PdeParams pde_params() const;  // throws ConfigError without a pde block

  // Throws ParameterError / ConfigError on invalid values.
  void validate() const;
};

nlohmann::json to_json(const RunConfig& cfg);

// Strict: unknown keys and wrongly typed values throw ConfigError. Missing keys
// keep their defaults.
RunConfig config_from_json(const nlohmann::json& j);

RunConfig load_config(const std::string& path);
RunConfig parse_config(std::string_view text);

// "block.key=value" (or "key=value" for top-level keys). The value is read as
// JSON when it parses, otherwise as a string.
void apply_override(RunConfig& cfg, std::string_view assignment);

// Applies CROSSNET_SEED when set. Throws ConfigError on a malformed value.
void apply_environment(RunConfig& cfg);

}  // namespace crossnet
