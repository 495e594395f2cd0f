#include "crn/species.hpp"

namespace crn {

SpeciesId SpeciesTable::intern(std::string_view sequence) {
  auto it = index_.find(std::string(sequence));
  if (it != index_.end()) return it->second;
  if (!alphabet_.valid_sequence(sequence)) {
    throw ConfigError("invalid sequence \"" + std::string(sequence) +
                      "\" over alphabet \"" + alphabet_.letters() + "\"");
  }
  SpeciesId id = static_cast<SpeciesId>(sequences_.size());
  sequences_.emplace_back(sequence);
  index_.emplace(sequences_.back(), id);
  return id;
}

std::optional<SpeciesId> SpeciesTable::find(std::string_view sequence) const {
  auto it = index_.find(std::string(sequence));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace crn
