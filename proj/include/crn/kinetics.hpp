#pragma once

#include <cstdint>

#include <json.hpp>

#include "crn/types.hpp"

namespace crn {

inline constexpr double kAvogadro = 6.02214076e23;  // 1/mol

/// Kinetic constants and reactor rates. Deterministic (molar) constants are
/// converted to per-molecule stochastic rates via stochastic_rate() using the
/// reactor volume.
struct KineticParams {
  double k_cleav = 25.0;        // 1/(M s), cleavage
  double k_comp = 50.0;         // 1/(M s), complex formation
  double k_cond = 50.0;         // 1/(M s), final condensation
  double k_decomp = 1e-6;       // 1/s, spontaneous complex dissociation
  double k_nrg = 50.0;          // 1/(M s), substrate energization
  double k_out = 0.01;          // 1/s, outflow (inverse residence time)
  double influx_rate = 10.0;    // molecules/s entering the reactor
  double ec_influx_rate = 0.0;  // molecules/s of energy carriers (phi_E)
  double ec_decay_rate = 1e-3;  // 1/s, energy carrier decay
  double deenergize_rate = 1e-3;  // 1/s, spontaneous de-energization
  double volume = 1e-15;        // liters

  void validate() const;

  nlohmann::json to_json() const;
  static KineticParams from_json(const nlohmann::json& doc);
};

/// Converts a deterministic rate constant into the stochastic per-channel
/// rate c: order 1 passes through, order 2 divides by (N_A * V).
double stochastic_rate(double k_det, int order, const KineticParams& params);

/// Gillespie propensity for a channel with stochastic rate c.
/// Order 1: c*n. Order 2, distinct reactants: c*nx*ny. Order 2, identical
/// reactants: c*n*(n-1), a molecule cannot pair with itself.
double propensity_order1(double c, int64_t n);
double propensity_order2(double c, int64_t nx, int64_t ny);
double propensity_order2_same(double c, int64_t n);

}  // namespace crn
