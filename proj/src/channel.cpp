#include "crn/channel.hpp"

#include <algorithm>
#include <cmath>

namespace crn {

namespace {
constexpr uint64_t kRebuildInterval = 16384;
}

int channel_order(ChannelKind kind) { return kind == ChannelKind::kUnbind ? 1 : 2; }

bool energization_gate(const ReactionSchema& schema, const SimState& state, bool energy_enabled) {
  if (!energy_enabled) return true;
  if (schema.kind() != ReactionKind::kCondensation) return true;
  if (state.complex_count({schema.left(), schema.catalyst, true}) > 0) return true;
  return state.energized_count(schema.right()) > 0;
}

ChannelTable::ChannelTable(const Chemistry& chemistry, const KineticParams& params,
                           bool energy_enabled)
    : chem_(&chemistry), params_(&params), energy_enabled_(energy_enabled) {
  c_cleave_ = stochastic_rate(params.k_cleav, 2, params);
  c_bind_ = stochastic_rate(params.k_comp, 2, params);
  c_unbind_ = stochastic_rate(params.k_decomp, 1, params);
  c_cond_ = stochastic_rate(params.k_cond, 2, params);
  c_energize_ = stochastic_rate(params.k_nrg, 2, params);
  by_species_.resize(static_cast<size_t>(chemistry.species().size()));
  sync_new_schemas();
  sync_new_species();
}

void ChannelTable::append_channel(const Channel& ch) {
  size_t idx = channels_.size();
  channels_.push_back(ch);
  values_.push_back(0.0);
  if (tree_.size() < channels_.size() + 1) {
    tree_.resize(std::max<size_t>(16, tree_.size() * 2), 0.0);
    rebuild_tree();
  }
  register_deps(idx);
  // New channels start at zero propensity; schedule their first computation.
  in_dirty_.resize(channels_.size(), 0);
  if (!in_dirty_[idx]) {
    in_dirty_[idx] = 1;
    dirty_.push_back(static_cast<int32_t>(idx));
  }
}

void ChannelTable::register_deps(size_t idx) {
  const Channel& ch = channels_[idx];
  auto by_sp = [&](SpeciesId s) {
    if (static_cast<size_t>(s) >= by_species_.size()) {
      by_species_.resize(static_cast<size_t>(s) + 1);
    }
    by_species_[static_cast<size_t>(s)].push_back(static_cast<int32_t>(idx));
  };
  switch (ch.kind) {
    case ChannelKind::kCleave: {
      const ReactionSchema& s = chem_->reactions()[static_cast<size_t>(ch.schema)];
      by_sp(s.substrate());
      if (s.catalyst != s.substrate()) by_sp(s.catalyst);
      break;
    }
    case ChannelKind::kBind: {
      const ReactionSchema& s = chem_->reactions()[static_cast<size_t>(ch.schema)];
      by_sp(s.left());
      if (s.catalyst != s.left()) by_sp(s.catalyst);
      break;
    }
    case ChannelKind::kUnbind: {
      const ReactionSchema& s = chem_->reactions()[static_cast<size_t>(ch.schema)];
      by_complex_[{s.left(), s.catalyst}].push_back(static_cast<int32_t>(idx));
      break;
    }
    case ChannelKind::kCondense: {
      const ReactionSchema& s = chem_->reactions()[static_cast<size_t>(ch.schema)];
      by_complex_[{s.left(), s.catalyst}].push_back(static_cast<int32_t>(idx));
      by_sp(s.right());
      break;
    }
    case ChannelKind::kEnergize: {
      by_sp(ch.species);
      by_ec_.push_back(static_cast<int32_t>(idx));
      break;
    }
  }
}

void ChannelTable::sync_new_schemas() {
  const auto& reactions = chem_->reactions();
  for (size_t i = synced_schemas_; i < reactions.size(); ++i) {
    const ReactionSchema& s = reactions[i];
    if (s.kind() == ReactionKind::kCleavage) {
      append_channel({ChannelKind::kCleave, static_cast<int32_t>(i), kNoSpecies, c_cleave_});
    } else {
      append_channel({ChannelKind::kBind, static_cast<int32_t>(i), kNoSpecies, c_bind_});
      append_channel({ChannelKind::kUnbind, static_cast<int32_t>(i), kNoSpecies, c_unbind_});
      append_channel({ChannelKind::kCondense, static_cast<int32_t>(i), kNoSpecies, c_cond_});
    }
  }
  synced_schemas_ = reactions.size();
}

void ChannelTable::sync_new_species() {
  SpeciesId n = chem_->species().size();
  if (energy_enabled_) {
    for (SpeciesId s = synced_species_; s < n; ++s) {
      append_channel({ChannelKind::kEnergize, -1, s, c_energize_});
    }
  }
  if (static_cast<size_t>(n) > by_species_.size()) by_species_.resize(static_cast<size_t>(n));
  synced_species_ = n;
}

void ChannelTable::mark_species(SpeciesId id) {
  if (id == kNoSpecies || static_cast<size_t>(id) >= by_species_.size()) return;
  in_dirty_.resize(channels_.size(), 0);
  for (int32_t idx : by_species_[static_cast<size_t>(id)]) {
    if (!in_dirty_[static_cast<size_t>(idx)]) {
      in_dirty_[static_cast<size_t>(idx)] = 1;
      dirty_.push_back(idx);
    }
  }
}

void ChannelTable::mark_complex(SpeciesId substrate, SpeciesId catalyst) {
  auto it = by_complex_.find({substrate, catalyst});
  if (it == by_complex_.end()) return;
  in_dirty_.resize(channels_.size(), 0);
  for (int32_t idx : it->second) {
    if (!in_dirty_[static_cast<size_t>(idx)]) {
      in_dirty_[static_cast<size_t>(idx)] = 1;
      dirty_.push_back(idx);
    }
  }
}

void ChannelTable::mark_ec() {
  in_dirty_.resize(channels_.size(), 0);
  for (int32_t idx : by_ec_) {
    if (!in_dirty_[static_cast<size_t>(idx)]) {
      in_dirty_[static_cast<size_t>(idx)] = 1;
      dirty_.push_back(idx);
    }
  }
}

double ChannelTable::compute_propensity(size_t i, const SimState& state) const {
  const Channel& ch = channels_[i];
  switch (ch.kind) {
    case ChannelKind::kCleave: {
      const ReactionSchema& s = chem_->reactions()[static_cast<size_t>(ch.schema)];
      if (s.substrate() == s.catalyst) {
        return propensity_order2_same(ch.c, state.count(s.substrate()));
      }
      return propensity_order2(ch.c, state.count(s.substrate()), state.count(s.catalyst));
    }
    case ChannelKind::kBind: {
      const ReactionSchema& s = chem_->reactions()[static_cast<size_t>(ch.schema)];
      if (s.left() == s.catalyst) {
        return propensity_order2_same(ch.c, state.count(s.left()));
      }
      return propensity_order2(ch.c, state.count(s.left()), state.count(s.catalyst));
    }
    case ChannelKind::kUnbind: {
      const ReactionSchema& s = chem_->reactions()[static_cast<size_t>(ch.schema)];
      int64_t pool = state.complex_count({s.left(), s.catalyst, false}) +
                     state.complex_count({s.left(), s.catalyst, true});
      return propensity_order1(ch.c, pool);
    }
    case ChannelKind::kCondense: {
      const ReactionSchema& s = chem_->reactions()[static_cast<size_t>(ch.schema)];
      int64_t flagged = state.complex_count({s.left(), s.catalyst, true});
      int64_t plain = state.complex_count({s.left(), s.catalyst, false});
      int64_t enabled = flagged;
      if (!energy_enabled_ || state.energized_count(s.right()) > 0) enabled += plain;
      return propensity_order2(ch.c, enabled, state.count(s.right()));
    }
    case ChannelKind::kEnergize: {
      int64_t plain_copies = state.count(ch.species) - state.energized_count(ch.species);
      return propensity_order2(ch.c, plain_copies, state.ec_count);
    }
  }
  return 0.0;
}

void ChannelTable::set_value(size_t idx, double value) {
  double old = values_[idx];
  if (old == value) return;
  if (old > 0.0 && value <= 0.0) --active_count_;
  if (old <= 0.0 && value > 0.0) ++active_count_;
  values_[idx] = value;
  double delta = value - old;
  tree_total_ += delta;
  for (size_t i = idx + 1; i < tree_.size(); i += i & (~i + 1)) {
    tree_[i] += delta;
  }
}

void ChannelTable::rebuild_tree() {
  std::fill(tree_.begin(), tree_.end(), 0.0);
  tree_total_ = 0.0;
  for (size_t idx = 0; idx < values_.size(); ++idx) {
    double v = values_[idx];
    if (v == 0.0) continue;
    tree_total_ += v;
    for (size_t i = idx + 1; i < tree_.size(); i += i & (~i + 1)) {
      tree_[i] += v;
    }
  }
}

void ChannelTable::refresh(const SimState& state) {
  for (int32_t idx : dirty_) {
    set_value(static_cast<size_t>(idx), compute_propensity(static_cast<size_t>(idx), state));
    in_dirty_[static_cast<size_t>(idx)] = 0;
  }
  dirty_.clear();
  if (++updates_since_rebuild_ >= kRebuildInterval) {
    rebuild_tree();
    updates_since_rebuild_ = 0;
  }
}

void ChannelTable::refresh_all(const SimState& state) {
  for (size_t i = 0; i < channels_.size(); ++i) {
    set_value(i, compute_propensity(i, state));
  }
  std::fill(in_dirty_.begin(), in_dirty_.end(), 0);
  dirty_.clear();
  rebuild_tree();
}

std::optional<ChannelTable::Draw> ChannelTable::draw(SimState& state) const {
  if (active_count_ == 0) return std::nullopt;
  double a0 = tree_total_;
  if (!(a0 > 0.0)) return std::nullopt;
  double dt = state.rng.exponential(a0);
  double target = state.rng.uniform01() * a0;

  // Fenwick prefix descent: find the first channel whose cumulative
  // propensity exceeds target.
  size_t idx = 0;
  size_t mask = 1;
  while (mask * 2 < tree_.size()) mask *= 2;
  for (; mask > 0; mask /= 2) {
    size_t next = idx + mask;
    if (next < tree_.size() && tree_[next] < target) {
      target -= tree_[next];
      idx = next;
    }
  }
  // idx is now the 0-based channel index; clamp onto a fireable channel in
  // case accumulated float error landed on a zero-propensity slot.
  if (idx >= channels_.size()) idx = channels_.size() - 1;
  if (values_[idx] <= 0.0) {
    size_t n = channels_.size();
    size_t found = n;
    for (size_t fwd = idx + 1; fwd < n; ++fwd) {
      if (values_[fwd] > 0.0) {
        found = fwd;
        break;
      }
    }
    if (found == n) {
      for (size_t back = idx; back-- > 0;) {
        if (values_[back] > 0.0) {
          found = back;
          break;
        }
      }
    }
    if (found == n) return std::nullopt;
    idx = found;
  }
  return Draw{dt, idx};
}

std::vector<ChannelSpec> channel_set(const Chemistry& chemistry, const SimState& state,
                                     const KineticParams& params, bool energy_enabled) {
  std::vector<ChannelSpec> out;
  const double c_cleave = stochastic_rate(params.k_cleav, 2, params);
  const double c_bind = stochastic_rate(params.k_comp, 2, params);
  const double c_unbind = stochastic_rate(params.k_decomp, 1, params);
  const double c_cond = stochastic_rate(params.k_cond, 2, params);
  const double c_energize = stochastic_rate(params.k_nrg, 2, params);
  const auto& reactions = chemistry.reactions();
  for (size_t i = 0; i < reactions.size(); ++i) {
    if (reactions[i].kind() == ReactionKind::kCleavage) {
      out.push_back({ChannelKind::kCleave, static_cast<int32_t>(i), kNoSpecies, 2, c_cleave});
    } else {
      out.push_back({ChannelKind::kBind, static_cast<int32_t>(i), kNoSpecies, 2, c_bind});
      out.push_back({ChannelKind::kUnbind, static_cast<int32_t>(i), kNoSpecies, 1, c_unbind});
      out.push_back({ChannelKind::kCondense, static_cast<int32_t>(i), kNoSpecies, 2, c_cond});
    }
  }
  if (energy_enabled) {
    for (SpeciesId s = 0; s < chemistry.species().size(); ++s) {
      if (state.count(s) > 0) {
        out.push_back({ChannelKind::kEnergize, -1, s, 2, c_energize});
      }
    }
  }
  return out;
}

}  // namespace crn
