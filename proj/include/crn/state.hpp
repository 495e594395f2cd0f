#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <vector>

#include "crn/rng.hpp"
#include "crn/species.hpp"
#include "crn/types.hpp"

namespace crn {

/// Identity of a substrate-catalyst complex pool. The energized flag records
/// whether the bound substrate copy carried an energization.
struct ComplexKey {
  SpeciesId substrate = kNoSpecies;
  SpeciesId catalyst = kNoSpecies;
  bool energized = false;

  auto operator<=>(const ComplexKey&) const = default;
};

/// Mutable reactor contents: free copies per species, the energized subset,
/// complex pools, the energy-carrier pool and the simulation clock.
///
/// counts[s] tracks free (unbound) copies only; copies bound into complexes
/// live in `complexes`. energized[s] <= counts[s] always.
struct SimState {
  double time = 0.0;
  std::vector<int64_t> counts;
  std::vector<int64_t> energized;
  std::map<ComplexKey, int64_t> complexes;
  int64_t ec_count = 0;
  Rng rng;

  explicit SimState(uint64_t dynamics_seed) : rng(dynamics_seed) {}

  void ensure_species(SpeciesId id) {
    if (static_cast<size_t>(id) >= counts.size()) {
      counts.resize(static_cast<size_t>(id) + 1, 0);
      energized.resize(static_cast<size_t>(id) + 1, 0);
    }
  }

  int64_t count(SpeciesId id) const {
    return static_cast<size_t>(id) < counts.size() ? counts[static_cast<size_t>(id)] : 0;
  }
  int64_t energized_count(SpeciesId id) const {
    return static_cast<size_t>(id) < energized.size() ? energized[static_cast<size_t>(id)] : 0;
  }
  int64_t complex_count(const ComplexKey& key) const {
    auto it = complexes.find(key);
    return it == complexes.end() ? 0 : it->second;
  }

  /// Free molecules of all species (excludes complexes and energy carriers).
  int64_t total_free_molecules() const;

  /// Total letters in the reactor: free copies plus both members of every
  /// complex. Energy carriers contribute none. Changes only through flows.
  int64_t total_letters(const SpeciesTable& table) const;

  /// Throws InternalError when a count is negative or energized > counts.
  void check_invariants() const;
};

}  // namespace crn
