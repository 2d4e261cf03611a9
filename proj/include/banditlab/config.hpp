#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace banditlab {

// Configuration problem tied to a specific field ("algorithms[2]",
// "environment.means", ...).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error("config field '" + field + "': " + message),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct EnvironmentConfig {
  std::string type;                       // "bernoulli" | "contextual"
  std::vector<double> means;              // bernoulli arms
  int num_contexts = 0;                   // contextual shape
  int num_arms = 0;
  std::vector<double> mean_table;         // row-major [context][arm]
  std::vector<double> context_weights;    // optional; uniform when empty
};

struct GtsConfig {
  double eta = 1.0;
  std::optional<double> gamma;            // default derived from K and horizon
  std::string loss = "logarithmic";       // "logarithmic" | "square"
  std::filesystem::path experts_file;     // resolved against the config dir
};

struct OracleConfig {
  int num_states = 20;
  std::int64_t samples = 1'000'000;
  double tolerance = 5e-3;        // alpha / conditional-mean agreement
  int gain_states = 10;
  std::int64_t gain_samples = 100'000;
  double gain_tolerance = 2e-2;   // KL-form vs entropy-drop agreement
  std::uint64_t seed = 20240601;
};

struct ExperimentConfig {
  std::vector<std::string> algorithms;    // subset of {ids, ts, gts}
  EnvironmentConfig environment;
  int horizon = 0;
  std::vector<std::uint64_t> seeds;
  int ids_grid_points = 1001;
  double prior_b1 = 1.0;
  double prior_b2 = 1.0;
  GtsConfig gts;
  OracleConfig oracle;
  std::string output_dir;                 // empty: resolved by the harness
  std::string config_hash;                // FNV-1a of the canonical JSON
};

// Parse and validate a JSON experiment config. Unknown keys, missing
// required fields, and out-of-range values all raise ConfigError naming
// the offending field. Relative experts_file paths resolve against the
// config file's directory.
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace banditlab
