#include "crn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace crn {

int64_t descriptor_value(const DescriptorSeries& s, size_t descriptor, size_t window) {
  switch (descriptor) {
    case 0: return s.n_acs[window];
    case 1: return s.species_in_acs[window];
    case 2: return s.molecules_in_acs[window];
    case 3: return s.new_species_count[window];
    case 4: return s.new_molecules_count[window];
    default: throw ConfigError("descriptor index out of range");
  }
}

template <typename EventT>
DescriptorSeries compute_descriptors(const std::vector<EventT>& events,
                                     const std::vector<Snapshot>& snapshots,
                                     const RunContext& context) {
  size_t windows = context.num_windows();
  std::vector<const Snapshot*> by_index(windows + 1, nullptr);
  for (const Snapshot& s : snapshots) {
    if (s.window_index >= 0 && static_cast<size_t>(s.window_index) <= windows) {
      by_index[static_cast<size_t>(s.window_index)] = &s;
    }
  }
  DescriptorSeries out;
  for (size_t w = 0; w < windows; ++w) {
    const Snapshot* end_snap = by_index[w + 1];
    if (end_snap == nullptr) {
      throw ConfigError("missing snapshot for window " + std::to_string(w + 1));
    }

    CatalysisGraph graph =
        build_graph(events, static_cast<double>(w) * context.window, context.window);
    std::vector<AcsReport> reports = find_acs(graph);
    fill_molecule_counts(reports, *end_snap);

    std::set<SpeciesId> acs_species;
    for (const AcsReport& r : reports) {
      acs_species.insert(r.members.begin(), r.members.end());
    }
    int64_t acs_molecules = 0;
    for (SpeciesId id : acs_species) acs_molecules += end_snap->count_of(id);

    int64_t new_species = 0;
    int64_t new_molecules = 0;
    for (const auto& row : end_snap->rows) {
      if (row.count > 0 && context.is_new_species(row.species)) {
        ++new_species;
        new_molecules += row.count;
      }
    }

    out.n_acs.push_back(static_cast<int64_t>(reports.size()));
    out.species_in_acs.push_back(static_cast<int64_t>(acs_species.size()));
    out.molecules_in_acs.push_back(acs_molecules);
    out.new_species_count.push_back(new_species);
    out.new_molecules_count.push_back(new_molecules);
  }
  return out;
}

template DescriptorSeries compute_descriptors<Event>(const std::vector<Event>&,
                                                     const std::vector<Snapshot>&,
                                                     const RunContext&);
template DescriptorSeries compute_descriptors<ParsedEvent>(const std::vector<ParsedEvent>&,
                                                           const std::vector<Snapshot>&,
                                                           const RunContext&);

EnsembleSummary ensemble_average(const std::vector<DescriptorSeries>& runs) {
  if (runs.empty()) throw ConfigError("ensemble_average needs at least one run");
  size_t windows = runs.front().num_windows();
  for (const DescriptorSeries& r : runs) {
    if (r.num_windows() != windows) {
      throw ConfigError("ensemble runs have heterogeneous window grids");
    }
  }

  EnsembleSummary out;
  out.num_runs = runs.size();
  out.mean.assign(kNumDescriptors, std::vector<double>(windows, 0.0));
  out.se.assign(kNumDescriptors, std::vector<double>(windows, 0.0));
  const double nan = std::numeric_limits<double>::quiet_NaN();

  for (size_t d = 0; d < kNumDescriptors; ++d) {
    for (size_t w = 0; w < windows; ++w) {
      double sum = 0.0;
      for (const DescriptorSeries& r : runs) {
        sum += static_cast<double>(descriptor_value(r, d, w));
      }
      double mean = sum / static_cast<double>(runs.size());
      out.mean[d][w] = mean;
      if (runs.size() < 2) {
        out.se[d][w] = nan;  // undefined for a single run
      } else {
        double ss = 0.0;
        for (const DescriptorSeries& r : runs) {
          double dv = static_cast<double>(descriptor_value(r, d, w)) - mean;
          ss += dv * dv;
        }
        double var = ss / static_cast<double>(runs.size() - 1);
        out.se[d][w] = std::sqrt(var / static_cast<double>(runs.size()));
      }
    }
  }

  out.p_acs_window.assign(windows, 0.0);
  out.p_acs_cumulative.assign(windows, 0.0);
  for (size_t w = 0; w < windows; ++w) {
    size_t with_acs_now = 0;
    size_t with_acs_by_now = 0;
    for (const DescriptorSeries& r : runs) {
      if (r.n_acs[w] > 0) ++with_acs_now;
      bool any = false;
      for (size_t v = 0; v <= w; ++v) {
        if (r.n_acs[v] > 0) any = true;
      }
      if (any) ++with_acs_by_now;
    }
    out.p_acs_window[w] = static_cast<double>(with_acs_now) / static_cast<double>(runs.size());
    out.p_acs_cumulative[w] =
        static_cast<double>(with_acs_by_now) / static_cast<double>(runs.size());
  }
  return out;
}

const char* trend_name(Trend t) {
  switch (t) {
    case Trend::kFlat: return "flat";
    case Trend::kUp: return "up";
    case Trend::kDown: return "down";
    case Trend::kPeak: return "peak";
  }
  return "?";
}

Trend trend_classify(const std::vector<double>& param_values, const std::vector<double>& end_means,
                     double epsilon) {
  if (param_values.size() < 3 || param_values.size() != end_means.size()) {
    throw ConfigError("trend_classify needs >= 3 (parameter, mean) points");
  }
  if (!std::is_sorted(param_values.begin(), param_values.end())) {
    throw ConfigError("trend_classify parameter values must be sorted ascending");
  }
  double scale = 0.0;
  for (double m : end_means) scale = std::max(scale, std::abs(m));
  if (scale == 0.0) return Trend::kFlat;
  double eps_abs = epsilon * scale;

  auto [min_it, max_it] = std::minmax_element(end_means.begin(), end_means.end());
  if (*max_it - *min_it < eps_abs) return Trend::kFlat;

  size_t peak_at = static_cast<size_t>(max_it - end_means.begin());
  if (peak_at > 0 && peak_at + 1 < end_means.size() &&
      *max_it - end_means.front() > eps_abs && *max_it - end_means.back() > eps_abs) {
    return Trend::kPeak;
  }
  double net = end_means.back() - end_means.front();
  if (net > eps_abs) return Trend::kUp;
  if (net < -eps_abs) return Trend::kDown;
  return Trend::kFlat;
}

std::optional<double> concentration_departure(const AcsReport& report, const Snapshot& window_end,
                                              const RunContext& context) {
  if (report.members.empty()) throw ConfigError("concentration_departure of an empty ACS");
  std::set<SpeciesId> members(report.members.begin(), report.members.end());
  double member_sum = 0.0;
  for (SpeciesId id : report.members) {
    member_sum += static_cast<double>(window_end.count_of(id));
  }
  double member_mean = member_sum / static_cast<double>(report.members.size());

  double new_sum = 0.0;
  int64_t new_count = 0;
  for (const auto& row : window_end.rows) {
    if (row.count > 0 && context.is_new_species(row.species) && !members.count(row.species)) {
      new_sum += static_cast<double>(row.count);
      ++new_count;
    }
  }
  if (new_count == 0) return std::nullopt;  // undefined, flagged to the caller
  return member_mean / (new_sum / static_cast<double>(new_count));
}

double balanced_influx(double target_total_molecules, double k_out) {
  if (k_out <= 0.0) throw ConfigError("balanced_influx requires k_out > 0");
  if (target_total_molecules < 0.0) throw ConfigError("target population must be >= 0");
  return target_total_molecules * k_out;
}

void write_descriptors_csv(const std::filesystem::path& path, const DescriptorSeries& series,
                           const SeedPair& seeds) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  out << "# crnsim-descriptors v1 chem_seed=" << seeds.chemistry_seed
      << " dyn_seed=" << seeds.dynamics_seed << "\n";
  out << "window,n_acs,species_in_acs,molecules_in_acs,new_species_count,new_molecules_count\n";
  for (size_t w = 0; w < series.num_windows(); ++w) {
    out << w << ',' << series.n_acs[w] << ',' << series.species_in_acs[w] << ','
        << series.molecules_in_acs[w] << ',' << series.new_species_count[w] << ','
        << series.new_molecules_count[w] << "\n";
  }
  if (!out) throw FormatError("write failed for " + path.string());
}

DescriptorSeries read_descriptors_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("# crnsim-descriptors v1", 0) != 0) {
    throw FormatError("bad or missing schema header in " + path.string());
  }
  std::getline(in, line);
  DescriptorSeries out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    long long w, a, b, c, d, e;
    if (std::sscanf(line.c_str(), "%lld,%lld,%lld,%lld,%lld,%lld", &w, &a, &b, &c, &d, &e) != 6) {
      throw FormatError("malformed descriptor row in " + path.string());
    }
    out.n_acs.push_back(a);
    out.species_in_acs.push_back(b);
    out.molecules_in_acs.push_back(c);
    out.new_species_count.push_back(d);
    out.new_molecules_count.push_back(e);
  }
  return out;
}

}  // namespace crn
