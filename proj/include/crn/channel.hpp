#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "crn/chemistry.hpp"
#include "crn/kinetics.hpp"
#include "crn/state.hpp"

namespace crn {

enum class ChannelKind : uint8_t {
  kCleave = 0,    // S + C -> P1 + P2 + C           order 2
  kBind = 1,      // L + C -> L&C                   order 2
  kUnbind = 2,    // L&C -> L + C                   order 1
  kCondense = 3,  // L&C + R -> P + C               order 2
  kEnergize = 4,  // S + EC -> S+                   order 2
};

int channel_order(ChannelKind kind);

/// One stochastic reaction channel. Unbind/Condense channels read both the
/// energized and plain complex pools of their schema and decide the pool at
/// fire time, so a condensation schema contributes exactly three channels.
struct Channel {
  ChannelKind kind;
  int32_t schema = -1;             // index into Chemistry::reactions()
  SpeciesId species = kNoSpecies;  // energization target
  double c = 0.0;                  // stochastic rate
};

/// True iff the final-condensation step of the schema may fire: either an
/// energized complex exists or the right substrate has an energized copy.
/// With energy disabled the gate is always open. Cleavages are never gated.
bool energization_gate(const ReactionSchema& schema, const SimState& state, bool energy_enabled);

/// Channel list with incremental propensity bookkeeping.
///
/// Propensities live in a Fenwick tree so that event selection and updates
/// are logarithmic. Dependency indices (species -> channels, complex pair ->
/// channels, EC -> channels) let the engine recompute only the channels a
/// state change can affect; the result is identical to full recomputation.
class ChannelTable {
 public:
  ChannelTable(const Chemistry& chemistry, const KineticParams& params, bool energy_enabled);

  /// Registers channels for schemas appended since construction/last call.
  void sync_new_schemas();
  /// Registers the energization channel of a newly interned species.
  void sync_new_species();

  void mark_species(SpeciesId id);
  void mark_complex(SpeciesId substrate, SpeciesId catalyst);
  void mark_ec();

  /// Recomputes every dirty channel against the state.
  void refresh(const SimState& state);
  /// Recomputes all channels (used at startup and by equivalence tests).
  void refresh_all(const SimState& state);

  double total() const { return active_count_ == 0 ? 0.0 : tree_total_; }
  int64_t active_count() const { return active_count_; }
  size_t size() const { return channels_.size(); }
  const Channel& channel(size_t i) const { return channels_[i]; }
  double propensity(size_t i) const { return values_[i]; }

  /// Fresh, non-incremental propensity of channel i; oracle for tests.
  double compute_propensity(size_t i, const SimState& state) const;

  struct Draw {
    double dt;
    size_t channel;
  };
  /// SSA step: waiting time Exp(a0) plus a channel drawn with probability
  /// a_j/a0. Returns nullopt when no channel can fire (quiescent).
  std::optional<Draw> draw(SimState& state) const;

  const Chemistry& chemistry() const { return *chem_; }
  bool energy_enabled() const { return energy_enabled_; }

 private:
  void append_channel(const Channel& ch);
  void register_deps(size_t idx);
  void set_value(size_t idx, double value);
  void rebuild_tree();

  const Chemistry* chem_;
  const KineticParams* params_;
  bool energy_enabled_;
  double c_cleave_, c_bind_, c_unbind_, c_cond_, c_energize_;

  std::vector<Channel> channels_;
  std::vector<double> values_;
  std::vector<double> tree_;  // Fenwick, 1-based
  double tree_total_ = 0.0;
  int64_t active_count_ = 0;
  size_t synced_schemas_ = 0;
  SpeciesId synced_species_ = 0;

  std::vector<std::vector<int32_t>> by_species_;
  std::map<std::pair<SpeciesId, SpeciesId>, std::vector<int32_t>> by_complex_;
  std::vector<int32_t> by_ec_;

  std::vector<int32_t> dirty_;
  std::vector<char> in_dirty_;
  uint64_t updates_since_rebuild_ = 0;
};

/// Order/rate description of an emitted channel, for inspection and tests.
struct ChannelSpec {
  ChannelKind kind;
  int32_t schema;
  SpeciesId species;
  int order;
  double c;
};

/// The channel set the spec describes: per cleavage schema one channel, per
/// condensation schema three, plus one energization channel per species
/// present (count > 0) when energy is enabled.
std::vector<ChannelSpec> channel_set(const Chemistry& chemistry, const SimState& state,
                                     const KineticParams& params, bool energy_enabled);

}  // namespace crn
