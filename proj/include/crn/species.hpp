#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "crn/alphabet.hpp"
#include "crn/types.hpp"

namespace crn {

/// Interning store for polymer sequences. The same sequence always maps to
/// the same dense id; ids are handed out in interning order and never reused.
class SpeciesTable {
 public:
  explicit SpeciesTable(Alphabet alphabet = Alphabet()) : alphabet_(std::move(alphabet)) {}

  /// Returns the existing id for a seen sequence, otherwise interns it.
  /// Throws ConfigError for empty sequences or letters outside the alphabet.
  SpeciesId intern(std::string_view sequence);

  std::optional<SpeciesId> find(std::string_view sequence) const;

  const std::string& sequence(SpeciesId id) const { return sequences_[static_cast<size_t>(id)]; }
  int length(SpeciesId id) const { return static_cast<int>(sequences_[static_cast<size_t>(id)].size()); }

  SpeciesId size() const { return static_cast<SpeciesId>(sequences_.size()); }
  const Alphabet& alphabet() const { return alphabet_; }

 private:
  Alphabet alphabet_;
  std::vector<std::string> sequences_;
  std::unordered_map<std::string, SpeciesId> index_;
};

}  // namespace crn
