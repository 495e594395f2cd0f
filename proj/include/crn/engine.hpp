#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "crn/channel.hpp"
#include "crn/chemistry.hpp"
#include "crn/event_log.hpp"
#include "crn/kinetics.hpp"
#include "crn/state.hpp"

namespace crn {

/// Reactor setup: initial contents, influx composition, horizon and windows.
struct ReactorConfig {
  int initial_max_length = 4;            // L_max
  int64_t initial_total_molecules = 1000;
  std::vector<std::string> influx_species;  // empty -> all species up to influx_max_length
  int influx_max_length = 2;                // M_in
  std::vector<double> influx_weights;       // empty -> uniform
  double t_end = 1000.0;
  double window = 10.0;
  bool energy_enabled = false;
  int64_t initial_ec = 0;
  bool allow_sparse_initial = false;  // permit zero-count species in the initial set
  int64_t max_distinct_species = 1000000;
  bool check_mass = false;  // per-event letter bookkeeping assertion

  void validate() const;
  nlohmann::json to_json() const;
  static ReactorConfig from_json(const nlohmann::json& doc);

  /// Influx sequences resolved against the alphabet (explicit list or all
  /// sequences up to influx_max_length).
  std::vector<std::string> resolve_influx(const Alphabet& alphabet) const;
};

struct RunResult {
  std::vector<Event> events;
  std::vector<Snapshot> snapshots;
  bool aborted = false;
  std::string abort_reason;
  int64_t mass_checks = 0;
  int64_t mass_violations = 0;
};

/// Hybrid Gillespie engine over one reactor realization.
///
/// Stochastic reaction events are drawn by the SSA; in/out-flux, energy
/// carrier influx/decay and de-energization are applied as continuous
/// first-order processes over each inter-event interval, with stochastic
/// rounding keeping populations integral. When no channel can fire the clock
/// advances by min(window, 1 s) applying flows only, because influx can
/// re-enable reactions. New product species are interned on the fly and the
/// chemistry expanded; existing assignments are never altered.
class Engine {
 public:
  Engine(Chemistry chemistry, ReactorConfig config, KineticParams params, uint64_t dynamics_seed);

  /// Runs to t_end, collecting the event log and per-window snapshots.
  RunResult run();

  // Stepwise surface, exercised directly by tests.
  std::optional<ChannelTable::Draw> ssa_draw() { return table_.draw(state_); }
  void fire(size_t channel_idx);
  void apply_flows(double dt);
  void refresh_channels() { table_.refresh(state_); }

  const SimState& state() const { return state_; }
  SimState& state() { return state_; }
  const Chemistry& chemistry() const { return chemistry_; }
  const ChannelTable& channels() const { return table_; }
  const std::vector<Event>& events() const { return events_; }
  const std::vector<SpeciesId>& initial_species() const { return initial_species_; }
  const std::vector<SpeciesId>& influx_ids() const { return influx_ids_; }
  uint64_t dynamics_seed() const { return dynamics_seed_; }

 private:
  struct Discovery {
    SpeciesId id;
    bool fresh;
  };
  Discovery discover(const std::string& sequence);
  void ensure_discoverable(std::initializer_list<const std::string*> sequences) const;
  void take_snapshot(int32_t window_index);
  void log_event(Event ev);
  void consume_free_copy(SpeciesId id, bool prefer_plain, bool* consumed_energized);
  void mass_check_event(int64_t before);

  Chemistry chemistry_;
  ReactorConfig config_;
  KineticParams params_;
  uint64_t dynamics_seed_;
  SimState state_;
  ChannelTable table_;
  std::vector<SpeciesId> influx_ids_;
  std::vector<double> influx_cumulative_;  // cumulative weights, same order as influx_ids_
  std::vector<SpeciesId> initial_species_;
  std::vector<Event> events_;
  std::vector<Snapshot> snapshots_;
  int64_t mass_checks_ = 0;
  int64_t mass_violations_ = 0;
  bool overflow_ = false;
};

}  // namespace crn
