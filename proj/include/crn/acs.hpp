#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <json.hpp>

#include "crn/event_log.hpp"
#include "crn/species.hpp"

namespace crn {

/// Directed catalytic-activity graph of one temporal window: an edge
/// catalyst -> product with its realized occurrence count.
struct CatalysisGraph {
  std::vector<SpeciesId> nodes;  // sorted, deduplicated
  std::map<std::pair<SpeciesId, SpeciesId>, int64_t> edges;

  bool empty() const { return nodes.empty(); }
};

/// One autocatalytic set: a strongly connected component of the catalysis
/// graph (singletons require a self-loop).
struct AcsReport {
  std::vector<SpeciesId> members;  // sorted
  struct Edge {
    SpeciesId catalyst;
    SpeciesId product;
    int64_t count;
  };
  std::vector<Edge> internal_edges;
  int64_t min_edge_count = 0;
  int64_t member_molecule_count = 0;  // filled from a window-end snapshot
  bool singleton = false;
};

/// Collects catalysis edges from events with window_start <= t <
/// window_start + window_length. Cleavages contribute catalyst->P1 and
/// catalyst->P2 (one edge, incremented once, when P1 = P2); completed final
/// condensations contribute catalyst->product. Everything else adds nothing.
CatalysisGraph build_graph(const std::vector<ParsedEvent>& events, double window_start,
                           double window_length);

/// Same, over in-memory engine events.
CatalysisGraph build_graph(const std::vector<Event>& events, double window_start,
                           double window_length);

/// Every SCC of size >= 2 plus every self-looped singleton, ordered by
/// smallest member id. member_molecule_count is left at 0; callers holding a
/// snapshot fill it via fill_molecule_counts.
std::vector<AcsReport> find_acs(const CatalysisGraph& graph);

void fill_molecule_counts(std::vector<AcsReport>& reports, const Snapshot& window_end);

/// Largest-magnitude real eigenvalue of the unweighted adjacency matrix,
/// estimated by shifted power iteration (tolerance 1e-9, at most 10^4
/// iterations). For a catalysis graph this is >= 1 iff a cycle exists.
/// Throws ConfigError on an empty graph.
double leading_eigenvalue(const CatalysisGraph& graph);

struct Fragility {
  bool bottleneck = false;
  int64_t min_edge_count = 0;
};

/// An ACS is bottlenecked when its rarest internal edge was realized at most
/// `threshold` times in the window.
Fragility fragility(const AcsReport& report, int64_t threshold = 1);

/// JSON report for one window: members (as sequences), internal edges with
/// counts, fragility and molecule counts.
nlohmann::json acs_window_report(const std::vector<AcsReport>& reports, const SpeciesTable& table,
                                 int32_t window_index, int64_t bottleneck_threshold = 1);

}  // namespace crn
