#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "crn/engine.hpp"
#include "crn/kinetics.hpp"

namespace crn {

struct SweepConfig {
  std::string parameter;  // dotted path, e.g. "chemistry.r", "kinetics.residence_time"
  std::vector<double> values;
  int chemistries = 1;   // M distinct chemistries per value
  int realizations = 1;  // S stochastic realizations per chemistry
  // Rebalance the influx to hold the equilibrium population while the
  // residence time varies. Defaults to on for residence-time sweeps.
  std::optional<bool> hold_equilibrium;

  bool is_residence_sweep() const {
    return parameter == "kinetics.residence_time" || parameter == "kinetics.k_out";
  }
  bool effective_hold_equilibrium() const {
    return hold_equilibrium.value_or(is_residence_sweep());
  }
};

/// Full run/sweep configuration. Precedence: CLI flag > file value > default.
struct RunConfig {
  std::string alphabet = "AB";
  double r = 1.03e-3;
  uint64_t chemistry_seed = 1;
  int min_catalyst_length = 3;
  ReactorConfig reactor;
  KineticParams kinetics;
  uint64_t dynamics_seed = 1;
  std::optional<SweepConfig> sweep;
  std::string output_dir;  // empty -> $CRNSIM_OUT or "./out"
  int parallelism = 0;     // 0 -> hardware concurrency

  void validate() const;
  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& doc);
  static RunConfig load(const std::filesystem::path& path);

  std::filesystem::path resolve_output_dir() const;
};

/// Assigns a swept parameter by dotted path. Supported paths: chemistry.r,
/// every kinetics.* rate, kinetics.residence_time (sets k_out = 1/value),
/// reactor.initial_max_length, reactor.initial_total_molecules,
/// reactor.influx_max_length, reactor.influx_diversity (first N influx
/// species in length-lexicographic order), reactor.t_end, reactor.initial_ec.
/// Throws ConfigError for unknown paths.
void apply_parameter(RunConfig& config, const std::string& path, double value);

}  // namespace crn
