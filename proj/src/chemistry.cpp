#include "crn/chemistry.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <unordered_set>

#include "crn/digraph.hpp"
#include "crn/hash.hpp"

namespace crn {

int64_t conceivable_count(const SpeciesTable& table, std::span<const SpeciesId> species) {
  int64_t cleavages = 0;
  for (SpeciesId id : species) {
    cleavages += table.length(id) - 1;
  }
  int64_t n = static_cast<int64_t>(species.size());
  return cleavages + n * n;
}

std::vector<ReactionTemplate> enumerate_conceivable(const SpeciesTable& table,
                                                    std::span<const SpeciesId> species) {
  std::vector<SpeciesId> ids(species.begin(), species.end());
  std::sort(ids.begin(), ids.end());

  std::vector<ReactionTemplate> out;
  out.reserve(static_cast<size_t>(conceivable_count(table, ids)));
  for (SpeciesId id : ids) {
    int len = table.length(id);
    for (int cut = 1; cut < len; ++cut) {
      out.push_back({ReactionKind::kCleavage, id, cut});
    }
  }
  for (SpeciesId left : ids) {
    for (SpeciesId right : ids) {
      out.push_back({ReactionKind::kCondensation, left, right});
    }
  }
  return out;
}

Chemistry::Chemistry(Alphabet alphabet, double r, uint64_t seed, int min_catalyst_length)
    : table_(std::move(alphabet)), r_(r), seed_(seed), min_catalyst_length_(min_catalyst_length) {
  if (r < 0.0 || r > 1.0) {
    throw ConfigError("catalysis probability r must lie in [0,1], got " + std::to_string(r));
  }
  if (min_catalyst_length < 1) {
    throw ConfigError("min_catalyst_length must be >= 1");
  }
}

bool Chemistry::pair_drawn(const ReactionTemplate& t, SpeciesId catalyst) const {
  return hash_unit(seed_, pair_key(table_, t, catalyst)) < r_;
}

void Chemistry::draw_templates_for_catalysts(const std::vector<ReactionTemplate>& templates,
                                             std::span<const SpeciesId> catalysts) {
  for (const ReactionTemplate& t : templates) {
    for (SpeciesId c : catalysts) {
      if (pair_drawn(t, c)) {
        reactions_.push_back({t, c});
      }
    }
  }
}

Chemistry Chemistry::generate(const Alphabet& alphabet, std::span<const std::string> species,
                              double r, uint64_t seed, int min_catalyst_length) {
  Chemistry chem(alphabet, r, seed, min_catalyst_length);
  for (const std::string& seq : species) {
    SpeciesId id = chem.table_.intern(seq);
    if (static_cast<size_t>(id) >= chem.is_known_.size()) {
      chem.is_known_.resize(static_cast<size_t>(id) + 1, 0);
    }
    chem.is_known_[static_cast<size_t>(id)] = 1;
  }
  std::vector<SpeciesId> known = chem.known_species();
  std::vector<ReactionTemplate> templates = enumerate_conceivable(chem.table_, known);
  std::vector<SpeciesId> catalysts;
  for (SpeciesId id : known) {
    if (chem.eligible_catalyst(id)) catalysts.push_back(id);
  }
  chem.draw_templates_for_catalysts(templates, catalysts);
  return chem;
}

std::vector<SpeciesId> Chemistry::known_species() const {
  std::vector<SpeciesId> out;
  out.reserve(is_known_.size());
  for (size_t i = 0; i < is_known_.size(); ++i) {
    if (is_known_[i]) out.push_back(static_cast<SpeciesId>(i));
  }
  return out;
}

Chemistry::ExpandResult Chemistry::expand(std::string_view sequence) {
  if (auto existing = table_.find(sequence); existing && is_known(*existing)) {
    return {*existing, true, reactions_.size()};
  }
  ExpandResult result;
  result.first_new_schema = reactions_.size();

  std::vector<SpeciesId> old_known = known_species();
  SpeciesId id = table_.intern(sequence);
  result.id = id;

  // Templates that become conceivable because of the new species.
  std::vector<ReactionTemplate> fresh;
  int len = table_.length(id);
  for (int cut = 1; cut < len; ++cut) {
    fresh.push_back({ReactionKind::kCleavage, id, cut});
  }
  for (SpeciesId x : old_known) {
    fresh.push_back({ReactionKind::kCondensation, id, x});
    fresh.push_back({ReactionKind::kCondensation, x, id});
  }
  fresh.push_back({ReactionKind::kCondensation, id, id});
  std::sort(fresh.begin(), fresh.end());

  std::vector<SpeciesId> catalysts;
  for (SpeciesId c : old_known) {
    if (eligible_catalyst(c)) catalysts.push_back(c);
  }
  if (eligible_catalyst(id)) catalysts.push_back(id);
  draw_templates_for_catalysts(fresh, catalysts);

  // Previously conceivable templates against the new species as catalyst.
  if (eligible_catalyst(id)) {
    std::vector<ReactionTemplate> old_templates = enumerate_conceivable(table_, old_known);
    SpeciesId self[1] = {id};
    draw_templates_for_catalysts(old_templates, self);
  }

  if (static_cast<size_t>(id) >= is_known_.size()) {
    is_known_.resize(static_cast<size_t>(id) + 1, 0);
  }
  is_known_[static_cast<size_t>(id)] = 1;
  return result;
}

bool Chemistry::influx_has_acs(std::span<const std::string> influx_sequences) const {
  std::unordered_set<std::string> influx(influx_sequences.begin(), influx_sequences.end());
  std::map<SpeciesId, int> node_of;
  auto node_for = [&](SpeciesId id) {
    auto [it, inserted] = node_of.emplace(id, static_cast<int>(node_of.size()));
    return it->second;
  };

  struct PendingEdge {
    SpeciesId catalyst;
    SpeciesId product;
  };
  std::vector<PendingEdge> edges;
  auto in_influx = [&](SpeciesId id) { return influx.count(table_.sequence(id)) > 0; };

  for (const ReactionSchema& s : reactions_) {
    if (!in_influx(s.catalyst)) continue;
    if (s.kind() == ReactionKind::kCleavage) {
      if (!in_influx(s.substrate())) continue;
      auto [p1, p2] = cleavage_products(table_, s.tmpl);
      for (const std::string& p : {p1, p2}) {
        if (influx.count(p)) {
          if (auto pid = table_.find(p)) edges.push_back({s.catalyst, *pid});
        }
      }
    } else {
      if (!in_influx(s.left()) || !in_influx(s.right())) continue;
      std::string product = condensation_product(table_, s.tmpl);
      if (influx.count(product)) {
        if (auto pid = table_.find(product)) edges.push_back({s.catalyst, *pid});
      }
    }
  }

  for (const PendingEdge& e : edges) {
    node_for(e.catalyst);
    node_for(e.product);
  }
  Digraph g(static_cast<int>(node_of.size()));
  for (const PendingEdge& e : edges) {
    g.add_edge(node_of.at(e.catalyst), node_of.at(e.product));
  }
  return has_cycle(g);
}

nlohmann::json Chemistry::to_json() const {
  nlohmann::json doc;
  doc["schema_version"] = 1;
  doc["format"] = "crnsim-chemistry";
  doc["alphabet"] = table_.alphabet().letters();
  doc["r"] = r_;
  doc["seed"] = seed_;
  doc["min_catalyst_length"] = min_catalyst_length_;
  nlohmann::json species = nlohmann::json::array();
  for (SpeciesId id = 0; id < table_.size(); ++id) {
    species.push_back(table_.sequence(id));
  }
  doc["species"] = std::move(species);
  nlohmann::json reactions = nlohmann::json::array();
  for (const ReactionSchema& s : reactions_) {
    nlohmann::json r;
    if (s.kind() == ReactionKind::kCleavage) {
      r["kind"] = "cleave";
      r["substrate"] = s.substrate();
      r["cut"] = s.cut_point();
    } else {
      r["kind"] = "cond";
      r["left"] = s.left();
      r["right"] = s.right();
    }
    r["catalyst"] = s.catalyst;
    reactions.push_back(std::move(r));
  }
  doc["reactions"] = std::move(reactions);
  return doc;
}

Chemistry Chemistry::from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || doc.value("format", "") != "crnsim-chemistry") {
    throw FormatError("not a crnsim chemistry document");
  }
  if (doc.value("schema_version", 0) != 1) {
    throw FormatError("unsupported chemistry schema_version");
  }
  Chemistry chem(Alphabet(doc.at("alphabet").get<std::string>()), doc.at("r").get<double>(),
                 doc.at("seed").get<uint64_t>(), doc.at("min_catalyst_length").get<int>());
  for (const auto& seq : doc.at("species")) {
    SpeciesId id = chem.table_.intern(seq.get<std::string>());
    if (static_cast<size_t>(id) >= chem.is_known_.size()) {
      chem.is_known_.resize(static_cast<size_t>(id) + 1, 0);
    }
    chem.is_known_[static_cast<size_t>(id)] = 1;
  }
  for (const auto& r : doc.at("reactions")) {
    ReactionSchema s;
    if (r.at("kind") == "cleave") {
      s.tmpl = {ReactionKind::kCleavage, r.at("substrate").get<SpeciesId>(), r.at("cut").get<int32_t>()};
    } else if (r.at("kind") == "cond") {
      s.tmpl = {ReactionKind::kCondensation, r.at("left").get<SpeciesId>(), r.at("right").get<int32_t>()};
    } else {
      throw FormatError("unknown reaction kind in chemistry document");
    }
    s.catalyst = r.at("catalyst").get<SpeciesId>();
    if (s.tmpl.a < 0 || s.tmpl.a >= chem.table_.size() || s.catalyst < 0 ||
        s.catalyst >= chem.table_.size()) {
      throw FormatError("reaction references unknown species id");
    }
    if (s.kind() == ReactionKind::kCleavage &&
        (s.cut_point() < 1 || s.cut_point() >= chem.table_.length(s.substrate()))) {
      throw FormatError("cleavage cut point out of range");
    }
    chem.reactions_.push_back(s);
  }
  return chem;
}

GenerationOutcome generate_rejecting_influx_acs(const Alphabet& alphabet,
                                                std::span<const std::string> species, double r,
                                                uint64_t seed, int min_catalyst_length,
                                                std::span<const std::string> influx_sequences,
                                                int max_attempts) {
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    uint64_t candidate_seed = seed + static_cast<uint64_t>(attempt - 1);
    Chemistry chem = Chemistry::generate(alphabet, species, r, candidate_seed, min_catalyst_length);
    if (!chem.influx_has_acs(influx_sequences)) {
      return {std::move(chem), candidate_seed, attempt};
    }
  }
  throw ConfigError("influx-ACS rejection exhausted " + std::to_string(max_attempts) +
                    " seeds starting at " + std::to_string(seed));
}

}  // namespace crn
