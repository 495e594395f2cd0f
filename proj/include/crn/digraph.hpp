#pragma once

#include <cstdint>
#include <vector>

namespace crn {

/// Minimal directed graph over dense node indices [0, n).
class Digraph {
 public:
  explicit Digraph(int n = 0) : adj_(static_cast<size_t>(n)) {}

  int num_nodes() const { return static_cast<int>(adj_.size()); }
  void add_edge(int from, int to) { adj_[static_cast<size_t>(from)].push_back(to); }
  const std::vector<int>& out(int node) const { return adj_[static_cast<size_t>(node)]; }

 private:
  std::vector<std::vector<int>> adj_;
};

/// Strongly connected components, Tarjan's algorithm (iterative). Each
/// component is a sorted node list; components are ordered by smallest
/// member, so output is deterministic.
std::vector<std::vector<int>> tarjan_scc(const Digraph& g);

bool has_self_loop(const Digraph& g, int node);

/// True iff the graph contains any directed cycle (self-loops count).
bool has_cycle(const Digraph& g);

}  // namespace crn
