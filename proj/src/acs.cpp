#include "crn/acs.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "crn/digraph.hpp"

namespace crn {

namespace {

struct EdgeAccumulator {
  std::set<SpeciesId> nodes;
  std::map<std::pair<SpeciesId, SpeciesId>, int64_t> edges;

  void add(SpeciesId catalyst, SpeciesId product) {
    nodes.insert(catalyst);
    nodes.insert(product);
    ++edges[{catalyst, product}];
  }

  CatalysisGraph finish() {
    CatalysisGraph g;
    g.nodes.assign(nodes.begin(), nodes.end());
    g.edges = std::move(edges);
    return g;
  }
};

template <typename EventT, typename ProductsFn>
CatalysisGraph build_graph_impl(const std::vector<EventT>& events, double window_start,
                                double window_length, ProductsFn&& products_of) {
  EdgeAccumulator acc;
  double window_end = window_start + window_length;
  for (const EventT& ev : events) {
    if (ev.time < window_start || ev.time >= window_end) continue;
    if (ev.kind != EventKind::kCleave && ev.kind != EventKind::kCondense) continue;
    // Identical cleavage products yield one edge incremented once per event.
    std::set<SpeciesId> distinct;
    for (SpeciesId p : products_of(ev)) distinct.insert(p);
    for (SpeciesId p : distinct) acc.add(ev.catalyst, p);
  }
  return acc.finish();
}

}  // namespace

CatalysisGraph build_graph(const std::vector<ParsedEvent>& events, double window_start,
                           double window_length) {
  return build_graph_impl(events, window_start, window_length, [](const ParsedEvent& ev) {
    std::vector<SpeciesId> out;
    for (const auto& [id, n] : ev.species_products) out.push_back(id);
    return out;
  });
}

CatalysisGraph build_graph(const std::vector<Event>& events, double window_start,
                           double window_length) {
  return build_graph_impl(events, window_start, window_length, [](const Event& ev) {
    std::vector<SpeciesId> out;
    for (const EntityCount& p : ev.products) {
      if (p.entity.type == EntityRef::Type::kSpecies) out.push_back(p.entity.a);
    }
    return out;
  });
}

std::vector<AcsReport> find_acs(const CatalysisGraph& graph) {
  std::unordered_map<SpeciesId, int> node_index;
  for (size_t i = 0; i < graph.nodes.size(); ++i) {
    node_index[graph.nodes[i]] = static_cast<int>(i);
  }
  Digraph g(static_cast<int>(graph.nodes.size()));
  for (const auto& [edge, count] : graph.edges) {
    g.add_edge(node_index.at(edge.first), node_index.at(edge.second));
  }

  std::vector<AcsReport> reports;
  for (const auto& comp : tarjan_scc(g)) {
    if (comp.size() < 2 && !has_self_loop(g, comp.front())) continue;
    AcsReport report;
    report.singleton = comp.size() == 1;
    std::set<SpeciesId> members;
    for (int n : comp) members.insert(graph.nodes[static_cast<size_t>(n)]);
    report.members.assign(members.begin(), members.end());
    report.min_edge_count = 0;
    for (const auto& [edge, count] : graph.edges) {
      if (members.count(edge.first) && members.count(edge.second)) {
        report.internal_edges.push_back({edge.first, edge.second, count});
        if (report.min_edge_count == 0 || count < report.min_edge_count) {
          report.min_edge_count = count;
        }
      }
    }
    reports.push_back(std::move(report));
  }
  // tarjan_scc already orders components by smallest node index; node
  // indices are assigned over sorted ids, so this is id order as well.
  return reports;
}

void fill_molecule_counts(std::vector<AcsReport>& reports, const Snapshot& window_end) {
  for (AcsReport& report : reports) {
    int64_t total = 0;
    for (SpeciesId id : report.members) total += window_end.count_of(id);
    report.member_molecule_count = total;
  }
}

double leading_eigenvalue(const CatalysisGraph& graph) {
  const size_t n = graph.nodes.size();
  if (n == 0) throw ConfigError("leading_eigenvalue of an empty graph");

  std::unordered_map<SpeciesId, size_t> node_index;
  for (size_t i = 0; i < n; ++i) node_index[graph.nodes[i]] = i;
  std::vector<std::pair<size_t, size_t>> edges;
  edges.reserve(graph.edges.size());
  for (const auto& [edge, count] : graph.edges) {
    edges.emplace_back(node_index.at(edge.first), node_index.at(edge.second));
  }

  // Power iteration on A + I: the shift makes the dominant eigenvalue of a
  // non-negative adjacency simple enough to converge, and subtracting the
  // shift back recovers the spectral radius of A.
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> y(n, 0.0);
  double estimate = 0.0;
  const double tol = 1e-9;
  const int max_iters = 10000;
  for (int iter = 0; iter < max_iters; ++iter) {
    std::fill(y.begin(), y.end(), 0.0);
    for (const auto& [from, to] : edges) y[from] += x[to];
    for (size_t i = 0; i < n; ++i) y[i] += x[i];
    double rayleigh = 0.0;
    double norm2 = 0.0;
    for (size_t i = 0; i < n; ++i) {
      rayleigh += x[i] * y[i];
      norm2 += y[i] * y[i];
    }
    double norm = std::sqrt(norm2);
    if (norm == 0.0) return 0.0;  // nilpotent and x hit the kernel exactly
    for (size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
    double next = rayleigh - 1.0;
    if (iter > 0 && std::abs(next - estimate) < tol) {
      return next;
    }
    estimate = next;
  }
  return estimate;
}

Fragility fragility(const AcsReport& report, int64_t threshold) {
  return {report.min_edge_count <= threshold, report.min_edge_count};
}

nlohmann::json acs_window_report(const std::vector<AcsReport>& reports, const SpeciesTable& table,
                                 int32_t window_index, int64_t bottleneck_threshold) {
  nlohmann::json doc;
  doc["window"] = window_index;
  nlohmann::json list = nlohmann::json::array();
  for (const AcsReport& report : reports) {
    nlohmann::json entry;
    nlohmann::json members = nlohmann::json::array();
    for (SpeciesId id : report.members) members.push_back(table.sequence(id));
    entry["members"] = std::move(members);
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : report.internal_edges) {
      edges.push_back({{"catalyst", table.sequence(e.catalyst)},
                       {"product", table.sequence(e.product)},
                       {"count", e.count}});
    }
    entry["internal_edges"] = std::move(edges);
    entry["min_edge_count"] = report.min_edge_count;
    entry["bottleneck"] = fragility(report, bottleneck_threshold).bottleneck;
    entry["member_molecule_count"] = report.member_molecule_count;
    entry["singleton"] = report.singleton;
    list.push_back(std::move(entry));
  }
  doc["acs"] = std::move(list);
  return doc;
}

}  // namespace crn
