#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "crn/chemistry.hpp"
#include "crn/state.hpp"
#include "crn/types.hpp"

namespace crn {

enum class EventKind : uint8_t {
  // stochastic reaction events
  kCleave = 0,
  kBind = 1,
  kUnbind = 2,
  kCondense = 3,
  kEnergize = 4,
  // continuous-flow bookkeeping, aggregated per step
  kInflux = 5,
  kOutflux = 6,
  kEcInflux = 7,
  kEcDecay = 8,
  kDeenergize = 9,
};

const char* event_kind_name(EventKind kind);

/// One countable entity: a free species copy, a complex, or an energy
/// carrier. Tokenized in event CSVs as `<id>`, `x<sub>~<cat>[+]`, or `E`.
struct EntityRef {
  enum class Type : uint8_t { kSpecies, kComplex, kEc };
  Type type = Type::kSpecies;
  SpeciesId a = kNoSpecies;  // species id, or complex substrate
  SpeciesId b = kNoSpecies;  // complex catalyst
  bool energized = false;    // complex substrate-energized flag
};

struct EntityCount {
  EntityRef entity;
  int64_t n = 1;
};

struct Event {
  double time = 0.0;
  EventKind kind = EventKind::kCleave;
  int32_t schema = -1;             // reaction events only
  SpeciesId catalyst = kNoSpecies; // reaction events only
  std::vector<EntityCount> products;
  bool new_species = false;  // a product was interned for the first time
};

/// State of the reactor at a window boundary; row-sparse (count > 0 only).
struct Snapshot {
  int32_t window_index = 0;
  double time = 0.0;
  struct Row {
    SpeciesId species;
    int64_t count;
    int64_t energized;
  };
  std::vector<Row> rows;

  int64_t total_molecules() const;
  int64_t count_of(SpeciesId id) const;
};

struct SeedPair {
  uint64_t chemistry_seed = 0;
  uint64_t dynamics_seed = 0;
};

void write_events_csv(const std::filesystem::path& path, const std::vector<Event>& events,
                      const Chemistry& chemistry, const SeedPair& seeds);
void write_snapshots_csv(const std::filesystem::path& path, const std::vector<Snapshot>& snapshots,
                         const SeedPair& seeds);
void write_species_csv(const std::filesystem::path& path, const SpeciesTable& table);

/// Parsed event row; complex/EC tokens are counted but not expanded into
/// species (window analysis only consumes species products).
struct ParsedEvent {
  double time = 0.0;
  EventKind kind = EventKind::kCleave;
  std::string schema_key;
  SpeciesId catalyst = kNoSpecies;
  std::vector<std::pair<SpeciesId, int64_t>> species_products;
  bool new_species = false;
};

std::vector<ParsedEvent> read_events_csv(const std::filesystem::path& path);
std::vector<Snapshot> read_snapshots_csv(const std::filesystem::path& path);
std::vector<std::string> read_species_csv(const std::filesystem::path& path);

/// Shortest round-trip decimal form of a double (std::to_chars).
std::string format_double(double value);

}  // namespace crn
