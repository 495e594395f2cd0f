#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>

#include "crn/species.hpp"
#include "crn/types.hpp"

namespace crn {

enum class ReactionKind : uint8_t { kCleavage = 0, kCondensation = 1 };

/// An uncatalyzed reaction template.
///
/// Cleavage: `a` is the substrate, `b` the cut point in [1, L-1]; the two
/// products are the prefix/suffix around the cut.
/// Condensation: `a` is the left substrate, `b` the right substrate id; the
/// product is left followed by right. Ordered: (x, y) and (y, x) are
/// distinct templates.
struct ReactionTemplate {
  ReactionKind kind;
  SpeciesId a;
  int32_t b;

  auto operator<=>(const ReactionTemplate&) const = default;
};

/// A template with its randomly assigned catalyst. Immutable once drawn.
struct ReactionSchema {
  ReactionTemplate tmpl;
  SpeciesId catalyst;

  auto operator<=>(const ReactionSchema&) const = default;

  ReactionKind kind() const { return tmpl.kind; }
  SpeciesId substrate() const { return tmpl.a; }  // cleavage
  int cut_point() const { return tmpl.b; }        // cleavage
  SpeciesId left() const { return tmpl.a; }       // condensation
  SpeciesId right() const { return static_cast<SpeciesId>(tmpl.b); }
};

/// Cleavage products (prefix, suffix) of the substrate sequence.
inline std::pair<std::string, std::string> cleavage_products(const SpeciesTable& table,
                                                             const ReactionTemplate& t) {
  const std::string& seq = table.sequence(t.a);
  return {seq.substr(0, static_cast<size_t>(t.b)), seq.substr(static_cast<size_t>(t.b))};
}

inline std::string condensation_product(const SpeciesTable& table, const ReactionTemplate& t) {
  return table.sequence(t.a) + table.sequence(static_cast<SpeciesId>(t.b));
}

/// Canonical sequence-based key of a template. Stable across interning
/// orders, which makes the catalysis draw a pure function of the species
/// identities rather than of their ids.
std::string template_key(const SpeciesTable& table, const ReactionTemplate& t);

/// Canonical key of a (template, catalyst) pair.
std::string pair_key(const SpeciesTable& table, const ReactionTemplate& t, SpeciesId catalyst);

/// Human/machine readable key of an assigned schema, used in event logs.
std::string schema_key(const SpeciesTable& table, const ReactionSchema& s);

}  // namespace crn
