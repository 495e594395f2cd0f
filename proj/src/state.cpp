#include "crn/state.hpp"

namespace crn {

int64_t SimState::total_free_molecules() const {
  int64_t total = 0;
  for (int64_t n : counts) total += n;
  return total;
}

int64_t SimState::total_letters(const SpeciesTable& table) const {
  int64_t letters = 0;
  for (size_t i = 0; i < counts.size(); ++i) {
    letters += counts[i] * table.length(static_cast<SpeciesId>(i));
  }
  for (const auto& [key, n] : complexes) {
    letters += n * (table.length(key.substrate) + table.length(key.catalyst));
  }
  return letters;
}

void SimState::check_invariants() const {
  for (size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 0) throw InternalError("negative species count");
    if (energized[i] < 0) throw InternalError("negative energized count");
    if (energized[i] > counts[i]) throw InternalError("energized exceeds total count");
  }
  for (const auto& [key, n] : complexes) {
    if (n < 0) throw InternalError("negative complex count");
  }
  if (ec_count < 0) throw InternalError("negative energy carrier count");
}

}  // namespace crn
