#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "crn/reaction.hpp"
#include "crn/species.hpp"

namespace crn {

/// Eq-style cardinality of the conceivable reaction set over the given
/// species: sum(L_i - 1) cleavages plus N^2 ordered condensations.
int64_t conceivable_count(const SpeciesTable& table, std::span<const SpeciesId> species);

/// All conceivable templates, cleavages first, sorted by (species id, cut
/// point) then (left id, right id). Length equals conceivable_count.
std::vector<ReactionTemplate> enumerate_conceivable(const SpeciesTable& table,
                                                    std::span<const SpeciesId> species);

/// The randomly generated, thereafter immutable catalyst assignment.
///
/// Every (eligible catalyst, conceivable template) pair is an independent
/// Bernoulli(r) draw keyed by a stable hash of the pair's canonical sequence
/// key mixed with the chemistry seed. Because the draw is a pure function of
/// (seed, sequences), expanding the chemistry with new species is
/// order-independent and never alters existing assignments.
class Chemistry {
 public:
  struct ExpandResult {
    SpeciesId id = kNoSpecies;
    bool was_known = false;
    size_t first_new_schema = 0;  // index into reactions() of the first schema added
  };

  static Chemistry generate(const Alphabet& alphabet, std::span<const std::string> species,
                            double r, uint64_t seed, int min_catalyst_length = 3);

  /// Interns the sequence (if new) and draws all assignments for pairs the
  /// new species participates in. Known species are a no-op.
  ExpandResult expand(std::string_view sequence);

  /// True iff the catalysis graph restricted to the influx species (by
  /// sequence) contains a cycle, self-loops included. Edges require the
  /// catalyst and every substrate to be influx members; each product that is
  /// itself an influx member contributes one edge catalyst -> product.
  bool influx_has_acs(std::span<const std::string> influx_sequences) const;

  const SpeciesTable& species() const { return table_; }
  const std::vector<ReactionSchema>& reactions() const { return reactions_; }
  std::vector<SpeciesId> known_species() const;
  bool is_known(SpeciesId id) const {
    return id >= 0 && static_cast<size_t>(id) < is_known_.size() && is_known_[static_cast<size_t>(id)];
  }
  bool eligible_catalyst(SpeciesId id) const { return table_.length(id) >= min_catalyst_length_; }

  double r() const { return r_; }
  uint64_t seed() const { return seed_; }
  int min_catalyst_length() const { return min_catalyst_length_; }
  const Alphabet& alphabet() const { return table_.alphabet(); }

  nlohmann::json to_json() const;
  static Chemistry from_json(const nlohmann::json& doc);

 private:
  Chemistry(Alphabet alphabet, double r, uint64_t seed, int min_catalyst_length);

  bool pair_drawn(const ReactionTemplate& t, SpeciesId catalyst) const;
  void draw_templates_for_catalysts(const std::vector<ReactionTemplate>& templates,
                                    std::span<const SpeciesId> catalysts);

  SpeciesTable table_;
  double r_ = 0.0;
  uint64_t seed_ = 0;
  int min_catalyst_length_ = 3;
  std::vector<char> is_known_;
  std::vector<ReactionSchema> reactions_;
};

/// Result of chemistry generation with the influx-ACS rejection loop.
struct GenerationOutcome {
  Chemistry chemistry;
  uint64_t accepted_seed = 0;
  int attempts = 1;
};

/// Regenerates with seed+1 until the influx carries no ACS, up to
/// max_attempts; throws ConfigError when exhausted.
GenerationOutcome generate_rejecting_influx_acs(const Alphabet& alphabet,
                                                std::span<const std::string> species, double r,
                                                uint64_t seed, int min_catalyst_length,
                                                std::span<const std::string> influx_sequences,
                                                int max_attempts = 100);

}  // namespace crn
