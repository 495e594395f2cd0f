#include "crn/kinetics.hpp"

namespace crn {

void KineticParams::validate() const {
  auto nonneg = [](double v, const char* name) {
    if (v < 0.0) throw ConfigError(std::string(name) + " must be >= 0");
  };
  nonneg(k_cleav, "k_cleav");
  nonneg(k_comp, "k_comp");
  nonneg(k_cond, "k_cond");
  nonneg(k_decomp, "k_decomp");
  nonneg(k_nrg, "k_nrg");
  nonneg(k_out, "k_out");
  nonneg(influx_rate, "influx_rate");
  nonneg(ec_influx_rate, "ec_influx_rate");
  nonneg(ec_decay_rate, "ec_decay_rate");
  nonneg(deenergize_rate, "deenergize_rate");
  if (volume <= 0.0) throw ConfigError("volume must be > 0");
}

nlohmann::json KineticParams::to_json() const {
  return nlohmann::json{{"k_cleav", k_cleav},
                        {"k_comp", k_comp},
                        {"k_cond", k_cond},
                        {"k_decomp", k_decomp},
                        {"k_nrg", k_nrg},
                        {"k_out", k_out},
                        {"influx_rate", influx_rate},
                        {"ec_influx_rate", ec_influx_rate},
                        {"ec_decay_rate", ec_decay_rate},
                        {"deenergize_rate", deenergize_rate},
                        {"volume", volume}};
}

KineticParams KineticParams::from_json(const nlohmann::json& doc) {
  KineticParams p;
  if (doc.is_null()) return p;
  p.k_cleav = doc.value("k_cleav", p.k_cleav);
  p.k_comp = doc.value("k_comp", p.k_comp);
  p.k_cond = doc.value("k_cond", p.k_cond);
  p.k_decomp = doc.value("k_decomp", p.k_decomp);
  p.k_nrg = doc.value("k_nrg", p.k_nrg);
  p.k_out = doc.value("k_out", p.k_out);
  p.influx_rate = doc.value("influx_rate", p.influx_rate);
  p.ec_influx_rate = doc.value("ec_influx_rate", p.ec_influx_rate);
  p.ec_decay_rate = doc.value("ec_decay_rate", p.ec_decay_rate);
  p.deenergize_rate = doc.value("deenergize_rate", p.deenergize_rate);
  p.volume = doc.value("volume", p.volume);
  p.validate();
  return p;
}

double stochastic_rate(double k_det, int order, const KineticParams& params) {
  if (order == 1) return k_det;
  if (order == 2) return k_det / (kAvogadro * params.volume);
  throw ConfigError("unsupported reaction order " + std::to_string(order));
}

double propensity_order1(double c, int64_t n) { return c * static_cast<double>(n); }

double propensity_order2(double c, int64_t nx, int64_t ny) {
  return c * static_cast<double>(nx) * static_cast<double>(ny);
}

double propensity_order2_same(double c, int64_t n) {
  return c * static_cast<double>(n) * static_cast<double>(n - 1);
}

}  // namespace crn
