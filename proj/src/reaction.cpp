#include "crn/reaction.hpp"

namespace crn {

namespace {
// Unit separator; cannot collide with alphabet letters or digits.
constexpr char kSep = '\x1f';
}  // namespace

std::string template_key(const SpeciesTable& table, const ReactionTemplate& t) {
  std::string key;
  if (t.kind == ReactionKind::kCleavage) {
    key += 'C';
    key += kSep;
    key += table.sequence(t.a);
    key += kSep;
    key += std::to_string(t.b);
  } else {
    key += 'D';
    key += kSep;
    key += table.sequence(t.a);
    key += kSep;
    key += table.sequence(static_cast<SpeciesId>(t.b));
  }
  return key;
}

std::string pair_key(const SpeciesTable& table, const ReactionTemplate& t, SpeciesId catalyst) {
  std::string key = template_key(table, t);
  key += kSep;
  key += table.sequence(catalyst);
  return key;
}

std::string schema_key(const SpeciesTable& table, const ReactionSchema& s) {
  std::string key;
  if (s.kind() == ReactionKind::kCleavage) {
    key += "cleave:";
    key += table.sequence(s.substrate());
    key += '@';
    key += std::to_string(s.cut_point());
  } else {
    key += "cond:";
    key += table.sequence(s.left());
    key += '+';
    key += table.sequence(s.right());
  }
  key += "/cat=";
  key += table.sequence(s.catalyst);
  return key;
}

}  // namespace crn
