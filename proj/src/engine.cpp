#include "crn/engine.hpp"

#include <algorithm>
#include <cmath>

namespace crn {

void ReactorConfig::validate() const {
  if (initial_max_length < 1) throw ConfigError("initial_max_length must be >= 1");
  if (initial_total_molecules < 0) throw ConfigError("initial_total_molecules must be >= 0");
  if (influx_max_length < 1) throw ConfigError("influx_max_length must be >= 1");
  if (t_end < 0.0) throw ConfigError("t_end must be >= 0");
  if (window <= 0.0) throw ConfigError("window must be > 0");
  if (initial_ec < 0) throw ConfigError("initial_ec must be >= 0");
  if (max_distinct_species < 1) throw ConfigError("max_distinct_species must be >= 1");
  if (!influx_weights.empty() && influx_weights.size() != influx_species.size()) {
    throw ConfigError("influx_weights must match influx_species in length");
  }
  for (double w : influx_weights) {
    if (w < 0.0) throw ConfigError("influx weights must be >= 0");
  }
}

nlohmann::json ReactorConfig::to_json() const {
  nlohmann::json doc{{"initial_max_length", initial_max_length},
                     {"initial_total_molecules", initial_total_molecules},
                     {"influx_max_length", influx_max_length},
                     {"t_end", t_end},
                     {"window", window},
                     {"energy_enabled", energy_enabled},
                     {"initial_ec", initial_ec},
                     {"allow_sparse_initial", allow_sparse_initial},
                     {"max_distinct_species", max_distinct_species},
                     {"check_mass", check_mass}};
  if (!influx_species.empty()) doc["influx_species"] = influx_species;
  if (!influx_weights.empty()) doc["influx_weights"] = influx_weights;
  return doc;
}

ReactorConfig ReactorConfig::from_json(const nlohmann::json& doc) {
  ReactorConfig c;
  if (doc.is_null()) return c;
  c.initial_max_length = doc.value("initial_max_length", c.initial_max_length);
  c.initial_total_molecules = doc.value("initial_total_molecules", c.initial_total_molecules);
  if (doc.contains("influx_species")) {
    c.influx_species = doc.at("influx_species").get<std::vector<std::string>>();
  }
  c.influx_max_length = doc.value("influx_max_length", c.influx_max_length);
  if (doc.contains("influx_weights")) {
    c.influx_weights = doc.at("influx_weights").get<std::vector<double>>();
  }
  c.t_end = doc.value("t_end", c.t_end);
  c.window = doc.value("window", c.window);
  c.energy_enabled = doc.value("energy_enabled", c.energy_enabled);
  c.initial_ec = doc.value("initial_ec", c.initial_ec);
  c.allow_sparse_initial = doc.value("allow_sparse_initial", c.allow_sparse_initial);
  c.max_distinct_species = doc.value("max_distinct_species", c.max_distinct_species);
  c.check_mass = doc.value("check_mass", c.check_mass);
  c.validate();
  return c;
}

std::vector<std::string> ReactorConfig::resolve_influx(const Alphabet& alphabet) const {
  if (influx_species.empty()) {
    return alphabet.sequences_up_to(influx_max_length);
  }
  for (const std::string& seq : influx_species) {
    if (static_cast<int>(seq.size()) > influx_max_length) {
      throw ConfigError("influx species \"" + seq + "\" exceeds influx_max_length");
    }
    if (!alphabet.valid_sequence(seq)) {
      throw ConfigError("influx species \"" + seq + "\" not over alphabet");
    }
  }
  return influx_species;
}

namespace {

// Initial and influx species are interned and assigned before t = 0 so that
// the influx-ACS precondition is well defined.
Chemistry prepare_chemistry(Chemistry chem, const ReactorConfig& config,
                            const KineticParams& params) {
  config.validate();
  params.validate();
  for (const std::string& seq : chem.alphabet().sequences_up_to(config.initial_max_length)) {
    chem.expand(seq);
  }
  for (const std::string& seq : config.resolve_influx(chem.alphabet())) {
    chem.expand(seq);
  }
  return chem;
}

}  // namespace

Engine::Engine(Chemistry chemistry, ReactorConfig config, KineticParams params,
               uint64_t dynamics_seed)
    : chemistry_(prepare_chemistry(std::move(chemistry), config, params)),
      config_(std::move(config)),
      params_(params),
      dynamics_seed_(dynamics_seed),
      state_(dynamics_seed),
      table_(chemistry_, params_, config_.energy_enabled) {
  std::vector<std::string> influx_seqs = config_.resolve_influx(chemistry_.alphabet());
  if (chemistry_.influx_has_acs(influx_seqs)) {
    throw ConfigError("configured influx contains an autocatalytic cycle; regenerate the chemistry");
  }
  for (const std::string& seq : influx_seqs) {
    influx_ids_.push_back(*chemistry_.species().find(seq));
  }
  double acc = 0.0;
  for (size_t i = 0; i < influx_ids_.size(); ++i) {
    acc += config_.influx_weights.empty() ? 1.0 : config_.influx_weights[i];
    influx_cumulative_.push_back(acc);
  }

  for (SpeciesId id : chemistry_.known_species()) {
    if (chemistry_.species().length(id) <= config_.initial_max_length) {
      initial_species_.push_back(id);
    }
  }
  state_.ensure_species(chemistry_.species().size() - 1);

  // Uniform split of the initial molecules; the remainder goes to distinct
  // species picked by seeded draw.
  int64_t n_species = static_cast<int64_t>(initial_species_.size());
  if (n_species > 0 && config_.initial_total_molecules > 0) {
    if (config_.initial_total_molecules < n_species && !config_.allow_sparse_initial) {
      throw ConfigError("initial_total_molecules < number of initial species; set "
                        "allow_sparse_initial to permit zero-count species");
    }
    int64_t per = config_.initial_total_molecules / n_species;
    int64_t rem = config_.initial_total_molecules % n_species;
    for (SpeciesId id : initial_species_) {
      state_.counts[static_cast<size_t>(id)] = per;
    }
    std::vector<SpeciesId> pool = initial_species_;
    for (int64_t i = 0; i < rem; ++i) {
      size_t j = i + state_.rng.index(pool.size() - static_cast<size_t>(i));
      std::swap(pool[static_cast<size_t>(i)], pool[j]);
      ++state_.counts[static_cast<size_t>(pool[static_cast<size_t>(i)])];
    }
  }
  state_.ec_count = config_.energy_enabled ? config_.initial_ec : 0;
  table_.refresh_all(state_);
}

Engine::Discovery Engine::discover(const std::string& sequence) {
  if (auto id = chemistry_.species().find(sequence); id && chemistry_.is_known(*id)) {
    return {*id, false};
  }
  auto result = chemistry_.expand(sequence);
  state_.ensure_species(result.id);
  table_.sync_new_schemas();
  table_.sync_new_species();
  return {result.id, true};
}

void Engine::consume_free_copy(SpeciesId id, bool prefer_plain, bool* consumed_energized) {
  int64_t n = state_.count(id);
  int64_t e = state_.energized_count(id);
  if (n <= 0) throw InternalError("fired channel consumed a zero-count species (propensity bug)");
  bool take_energized;
  if (prefer_plain) {
    take_energized = (n - e) <= 0;
  } else {
    // Copies are statistically indistinguishable: energized with odds e/n.
    take_energized = e > 0 && state_.rng.uniform01() < static_cast<double>(e) / static_cast<double>(n);
  }
  --state_.counts[static_cast<size_t>(id)];
  if (take_energized) --state_.energized[static_cast<size_t>(id)];
  if (consumed_energized) *consumed_energized = take_energized;
  table_.mark_species(id);
}

void Engine::mass_check_event(int64_t before) {
  ++mass_checks_;
  int64_t after = state_.total_letters(chemistry_.species());
  if (after != before) {
    ++mass_violations_;
    throw InternalError("letter mass changed across a reaction event: " + std::to_string(before) +
                        " -> " + std::to_string(after));
  }
}

void Engine::log_event(Event ev) {
  ev.time = state_.time;
  events_.push_back(std::move(ev));
}

void Engine::fire(size_t channel_idx) {
  const Channel& ch = table_.channel(channel_idx);
  int64_t mass_before = config_.check_mass ? state_.total_letters(chemistry_.species()) : 0;

  switch (ch.kind) {
    case ChannelKind::kCleave: {
      const ReactionSchema& s = chemistry_.reactions()[static_cast<size_t>(ch.schema)];
      if (state_.count(s.substrate()) <= 0 || state_.count(s.catalyst) <= 0) {
        throw InternalError("cleave fired without participants");
      }
      auto [p1_seq, p2_seq] = cleavage_products(chemistry_.species(), s.tmpl);
      int64_t fresh_needed = 0;
      auto unseen = [&](const std::string& q) {
        auto id = chemistry_.species().find(q);
        return !(id && chemistry_.is_known(*id));
      };
      if (unseen(p1_seq)) ++fresh_needed;
      if (p2_seq != p1_seq && unseen(p2_seq)) ++fresh_needed;
      if (chemistry_.species().size() + fresh_needed > config_.max_distinct_species) {
        overflow_ = true;
        return;
      }
      consume_free_copy(s.substrate(), false, nullptr);
      Discovery d1 = discover(p1_seq);
      Discovery d2 = discover(p2_seq);
      ++state_.counts[static_cast<size_t>(d1.id)];
      ++state_.counts[static_cast<size_t>(d2.id)];
      table_.mark_species(d1.id);
      table_.mark_species(d2.id);
      Event ev;
      ev.kind = EventKind::kCleave;
      ev.schema = ch.schema;
      ev.catalyst = s.catalyst;
      ev.products = {{{EntityRef::Type::kSpecies, d1.id}, 1},
                     {{EntityRef::Type::kSpecies, d2.id}, 1}};
      ev.new_species = d1.fresh || d2.fresh;
      log_event(std::move(ev));
      break;
    }
    case ChannelKind::kBind: {
      const ReactionSchema& s = chemistry_.reactions()[static_cast<size_t>(ch.schema)];
      if (state_.count(s.left()) <= 0 || state_.count(s.catalyst) <= 0 ||
          (s.left() == s.catalyst && state_.count(s.left()) < 2)) {
        throw InternalError("bind fired without participants");
      }
      bool substrate_energized = false;
      consume_free_copy(s.left(), false, &substrate_energized);
      // Catalyst energization is not tracked inside complexes; bind a plain
      // catalyst copy whenever one exists.
      consume_free_copy(s.catalyst, true, nullptr);
      ComplexKey key{s.left(), s.catalyst, substrate_energized};
      ++state_.complexes[key];
      table_.mark_complex(key.substrate, key.catalyst);
      Event ev;
      ev.kind = EventKind::kBind;
      ev.schema = ch.schema;
      ev.catalyst = s.catalyst;
      ev.products = {{{EntityRef::Type::kComplex, key.substrate, key.catalyst, key.energized}, 1}};
      log_event(std::move(ev));
      break;
    }
    case ChannelKind::kUnbind: {
      const ReactionSchema& s = chemistry_.reactions()[static_cast<size_t>(ch.schema)];
      ComplexKey plain{s.left(), s.catalyst, false};
      ComplexKey flagged{s.left(), s.catalyst, true};
      int64_t n0 = state_.complex_count(plain);
      int64_t n1 = state_.complex_count(flagged);
      if (n0 + n1 <= 0) throw InternalError("unbind fired without a complex");
      bool take_flagged =
          n1 > 0 && state_.rng.uniform01() <
                        static_cast<double>(n1) / static_cast<double>(n0 + n1);
      ComplexKey key = take_flagged ? flagged : plain;
      --state_.complexes[key];
      ++state_.counts[static_cast<size_t>(s.left())];
      if (take_flagged) ++state_.energized[static_cast<size_t>(s.left())];
      ++state_.counts[static_cast<size_t>(s.catalyst)];
      table_.mark_complex(key.substrate, key.catalyst);
      table_.mark_species(s.left());
      table_.mark_species(s.catalyst);
      Event ev;
      ev.kind = EventKind::kUnbind;
      ev.schema = ch.schema;
      ev.catalyst = s.catalyst;
      ev.products = {{{EntityRef::Type::kSpecies, s.left()}, 1},
                     {{EntityRef::Type::kSpecies, s.catalyst}, 1}};
      log_event(std::move(ev));
      break;
    }
    case ChannelKind::kCondense: {
      const ReactionSchema& s = chemistry_.reactions()[static_cast<size_t>(ch.schema)];
      ComplexKey plain{s.left(), s.catalyst, false};
      ComplexKey flagged{s.left(), s.catalyst, true};
      int64_t n1 = state_.complex_count(flagged);
      int64_t n0 = state_.complex_count(plain);
      bool right_energized = state_.energized_count(s.right()) > 0;
      double w_flagged = static_cast<double>(n1);
      double w_plain =
          (!config_.energy_enabled || right_energized) ? static_cast<double>(n0) : 0.0;
      if (state_.count(s.right()) <= 0 || w_flagged + w_plain <= 0.0) {
        throw InternalError("condense fired without an enabled complex/substrate pair");
      }
      std::string product_seq = condensation_product(chemistry_.species(), s.tmpl);
      auto maybe_id = chemistry_.species().find(product_seq);
      bool fresh_needed = !(maybe_id && chemistry_.is_known(*maybe_id));
      if (fresh_needed && chemistry_.species().size() + 1 > config_.max_distinct_species) {
        overflow_ = true;
        return;
      }
      bool take_flagged =
          w_flagged > 0.0 &&
          state_.rng.uniform01() < w_flagged / (w_flagged + w_plain);
      ComplexKey key = take_flagged ? flagged : plain;
      --state_.complexes[key];
      table_.mark_complex(key.substrate, key.catalyst);
      // Exactly one energization is consumed: the complex flag when set,
      // otherwise an energized copy of the right substrate.
      if (config_.energy_enabled && !take_flagged) {
        --state_.counts[static_cast<size_t>(s.right())];
        --state_.energized[static_cast<size_t>(s.right())];
        table_.mark_species(s.right());
      } else {
        consume_free_copy(s.right(), true, nullptr);
      }
      Discovery product = discover(product_seq);
      ++state_.counts[static_cast<size_t>(product.id)];
      ++state_.counts[static_cast<size_t>(s.catalyst)];
      table_.mark_species(product.id);
      table_.mark_species(s.catalyst);
      Event ev;
      ev.kind = EventKind::kCondense;
      ev.schema = ch.schema;
      ev.catalyst = s.catalyst;
      ev.products = {{{EntityRef::Type::kSpecies, product.id}, 1}};
      ev.new_species = product.fresh;
      log_event(std::move(ev));
      break;
    }
    case ChannelKind::kEnergize: {
      if (state_.ec_count <= 0 ||
          state_.count(ch.species) - state_.energized_count(ch.species) <= 0) {
        throw InternalError("energize fired without a carrier or plain copy");
      }
      --state_.ec_count;  // the carrier is removed from the system
      ++state_.energized[static_cast<size_t>(ch.species)];
      table_.mark_ec();
      table_.mark_species(ch.species);
      Event ev;
      ev.kind = EventKind::kEnergize;
      ev.products = {{{EntityRef::Type::kSpecies, ch.species}, 1}};
      log_event(std::move(ev));
      break;
    }
  }
  if (config_.check_mass) mass_check_event(mass_before);
}

void Engine::apply_flows(double dt) {
  if (dt <= 0.0) return;

  // Outflux: every countable entity leaves with the same first-order rate.
  if (params_.k_out > 0.0) {
    double p_out = 1.0 - std::exp(-params_.k_out * dt);
    std::vector<EntityCount> removed;
    for (size_t i = 0; i < state_.counts.size(); ++i) {
      int64_t n = state_.counts[i];
      if (n <= 0) continue;
      int64_t k = std::min<int64_t>(n, state_.rng.stoch_round(static_cast<double>(n) * p_out));
      if (k <= 0) continue;
      // Removed copies are drawn uniformly, so the energized subset shrinks
      // hypergeometrically.
      int64_t e = state_.energized[i];
      int64_t remaining = n;
      for (int64_t j = 0; j < k; ++j) {
        if (e > 0 &&
            state_.rng.uniform01() < static_cast<double>(e) / static_cast<double>(remaining)) {
          --e;
        }
        --remaining;
      }
      state_.counts[i] -= k;
      state_.energized[i] = e;
      table_.mark_species(static_cast<SpeciesId>(i));
      removed.push_back({{EntityRef::Type::kSpecies, static_cast<SpeciesId>(i)}, k});
    }
    for (auto& [key, n] : state_.complexes) {
      if (n <= 0) continue;
      int64_t k = std::min<int64_t>(n, state_.rng.stoch_round(static_cast<double>(n) * p_out));
      if (k <= 0) continue;
      n -= k;
      table_.mark_complex(key.substrate, key.catalyst);
      removed.push_back({{EntityRef::Type::kComplex, key.substrate, key.catalyst, key.energized}, k});
    }
    if (state_.ec_count > 0) {
      int64_t k = std::min<int64_t>(
          state_.ec_count, state_.rng.stoch_round(static_cast<double>(state_.ec_count) * p_out));
      if (k > 0) {
        state_.ec_count -= k;
        table_.mark_ec();
        removed.push_back({{EntityRef::Type::kEc}, k});
      }
    }
    if (!removed.empty()) {
      Event ev;
      ev.kind = EventKind::kOutflux;
      ev.products = std::move(removed);
      log_event(std::move(ev));
    }
  }

  // Influx: expected influx_rate*dt molecules, species per configured weights.
  if (params_.influx_rate > 0.0 && !influx_ids_.empty()) {
    int64_t arrivals = state_.rng.stoch_round(params_.influx_rate * dt);
    if (arrivals > 0) {
      std::vector<int64_t> per_species(influx_ids_.size(), 0);
      double total_weight = influx_cumulative_.back();
      for (int64_t j = 0; j < arrivals; ++j) {
        double target = state_.rng.uniform01() * total_weight;
        size_t idx = static_cast<size_t>(
            std::lower_bound(influx_cumulative_.begin(), influx_cumulative_.end(), target) -
            influx_cumulative_.begin());
        if (idx >= influx_ids_.size()) idx = influx_ids_.size() - 1;
        ++per_species[idx];
      }
      std::vector<EntityCount> added;
      for (size_t i = 0; i < influx_ids_.size(); ++i) {
        if (per_species[i] == 0) continue;
        state_.counts[static_cast<size_t>(influx_ids_[i])] += per_species[i];
        table_.mark_species(influx_ids_[i]);
        added.push_back({{EntityRef::Type::kSpecies, influx_ids_[i]}, per_species[i]});
      }
      Event ev;
      ev.kind = EventKind::kInflux;
      ev.products = std::move(added);
      log_event(std::move(ev));
    }
  }

  if (config_.energy_enabled) {
    if (params_.ec_influx_rate > 0.0) {
      int64_t arrivals = state_.rng.stoch_round(params_.ec_influx_rate * dt);
      if (arrivals > 0) {
        state_.ec_count += arrivals;
        table_.mark_ec();
        Event ev;
        ev.kind = EventKind::kEcInflux;
        ev.products = {{{EntityRef::Type::kEc}, arrivals}};
        log_event(std::move(ev));
      }
    }
    if (params_.ec_decay_rate > 0.0 && state_.ec_count > 0) {
      double p = 1.0 - std::exp(-params_.ec_decay_rate * dt);
      int64_t k = std::min<int64_t>(
          state_.ec_count, state_.rng.stoch_round(static_cast<double>(state_.ec_count) * p));
      if (k > 0) {
        state_.ec_count -= k;
        table_.mark_ec();
        Event ev;
        ev.kind = EventKind::kEcDecay;
        ev.products = {{{EntityRef::Type::kEc}, k}};
        log_event(std::move(ev));
      }
    }
    if (params_.deenergize_rate > 0.0) {
      double p = 1.0 - std::exp(-params_.deenergize_rate * dt);
      std::vector<EntityCount> relaxed;
      for (size_t i = 0; i < state_.energized.size(); ++i) {
        int64_t e = state_.energized[i];
        if (e <= 0) continue;
        int64_t k = std::min<int64_t>(e, state_.rng.stoch_round(static_cast<double>(e) * p));
        if (k <= 0) continue;
        state_.energized[i] -= k;
        table_.mark_species(static_cast<SpeciesId>(i));
        relaxed.push_back({{EntityRef::Type::kSpecies, static_cast<SpeciesId>(i)}, k});
      }
      if (!relaxed.empty()) {
        Event ev;
        ev.kind = EventKind::kDeenergize;
        ev.products = std::move(relaxed);
        log_event(std::move(ev));
      }
    }
  }
}

void Engine::take_snapshot(int32_t window_index) {
  Snapshot snap;
  snap.window_index = window_index;
  snap.time = state_.time;
  for (size_t i = 0; i < state_.counts.size(); ++i) {
    if (state_.counts[i] > 0) {
      snap.rows.push_back({static_cast<SpeciesId>(i), state_.counts[i], state_.energized[i]});
    }
  }
  snapshots_.push_back(std::move(snap));
}

RunResult Engine::run() {
  take_snapshot(0);
  const double stride = std::min(1.0, config_.window);
  int64_t next_window = 1;

  while (state_.time < config_.t_end && !overflow_) {
    table_.refresh(state_);
    auto draw = table_.draw(state_);
    double cap = std::min(static_cast<double>(next_window) * config_.window, config_.t_end);
    double attempted = draw ? draw->dt : stride;
    bool fire_now = draw.has_value();
    double dt;
    if (state_.time + attempted >= cap) {
      dt = cap - state_.time;
      state_.time = cap;
      fire_now = false;  // the drawn event lands beyond the cap; redraw after it
    } else {
      dt = attempted;
      state_.time += dt;
    }
    if (fire_now) fire(draw->channel);
    apply_flows(dt);
    if (state_.time == cap) {
      if (cap == static_cast<double>(next_window) * config_.window) {
        take_snapshot(static_cast<int32_t>(next_window));
        ++next_window;
      }
      if (cap >= config_.t_end) break;
    }
  }

  RunResult result;
  result.events = std::move(events_);
  result.snapshots = std::move(snapshots_);
  result.aborted = overflow_;
  if (overflow_) {
    result.abort_reason = "species table exceeded max_distinct_species (" +
                          std::to_string(config_.max_distinct_species) + ")";
  }
  result.mass_checks = mass_checks_;
  result.mass_violations = mass_violations_;
  return result;
}

}  // namespace crn
