#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crn/acs.hpp"
#include "crn/event_log.hpp"
#include "crn/types.hpp"

namespace crn {

/// The per-window dynamics descriptors. "New" species are those present in
/// the reactor but absent from both the initial set and the incoming flux.
struct DescriptorSeries {
  std::vector<int64_t> n_acs;
  std::vector<int64_t> species_in_acs;
  std::vector<int64_t> molecules_in_acs;
  std::vector<int64_t> new_species_count;
  std::vector<int64_t> new_molecules_count;

  size_t num_windows() const { return n_acs.size(); }
};

inline constexpr const char* kDescriptorNames[] = {
    "n_acs", "species_in_acs", "molecules_in_acs", "new_species_count", "new_molecules_count"};
inline constexpr size_t kNumDescriptors = 5;

int64_t descriptor_value(const DescriptorSeries& s, size_t descriptor, size_t window);

/// Identity of a run and the sets needed to classify species as new.
struct RunContext {
  std::set<SpeciesId> initial_species;
  std::set<SpeciesId> influx_species;
  double window = 10.0;
  double t_end = 1000.0;

  size_t num_windows() const {
    return static_cast<size_t>(t_end / window + 1e-9);
  }
  bool is_new_species(SpeciesId id) const {
    return !initial_species.count(id) && !influx_species.count(id);
  }
};

/// Computes all five descriptors per full window. Window w spans
/// [w*window, (w+1)*window); its counts come from the snapshot at the window
/// end. Throws ConfigError when a window-end snapshot is missing.
template <typename EventT>
DescriptorSeries compute_descriptors(const std::vector<EventT>& events,
                                     const std::vector<Snapshot>& snapshots,
                                     const RunContext& context);

/// Mean and standard error of every descriptor per window over an ensemble
/// of runs, plus the probability of having observed at least one ACS.
struct EnsembleSummary {
  double parameter_value = 0.0;
  size_t num_runs = 0;
  // [descriptor][window]
  std::vector<std::vector<double>> mean;
  std::vector<std::vector<double>> se;  // NaN when num_runs < 2
  std::vector<double> p_acs_cumulative;  // fraction of runs with an ACS by window t
  std::vector<double> p_acs_window;      // fraction of runs with an ACS in window t
};

/// Aggregates runs on identical window grids; throws ConfigError otherwise.
EnsembleSummary ensemble_average(const std::vector<DescriptorSeries>& runs);

enum class Trend { kFlat, kUp, kDown, kPeak };
const char* trend_name(Trend t);

/// Classifies the direction of end_means across >= 3 sorted parameter
/// values. Relative threshold epsilon scales with max |mean|.
Trend trend_classify(const std::vector<double>& param_values, const std::vector<double>& end_means,
                     double epsilon = 0.05);

/// (mean count of ACS members) / (mean count of new non-member species) at a
/// window end; nullopt when no new non-member species is present.
std::optional<double> concentration_departure(const AcsReport& report, const Snapshot& window_end,
                                              const RunContext& context);

/// Influx rate that balances the outflow at the target population
/// (fixed point n* = influx_rate / k_out). Throws ConfigError for k_out <= 0.
double balanced_influx(double target_total_molecules, double k_out);

void write_descriptors_csv(const std::filesystem::path& path, const DescriptorSeries& series,
                           const SeedPair& seeds);
DescriptorSeries read_descriptors_csv(const std::filesystem::path& path);

}  // namespace crn
