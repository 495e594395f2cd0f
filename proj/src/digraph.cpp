#include "crn/digraph.hpp"

#include <algorithm>

namespace crn {

std::vector<std::vector<int>> tarjan_scc(const Digraph& g) {
  const int n = g.num_nodes();
  std::vector<int> index(static_cast<size_t>(n), -1);
  std::vector<int> lowlink(static_cast<size_t>(n), 0);
  std::vector<char> on_stack(static_cast<size_t>(n), 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> components;
  int next_index = 0;

  // Explicit DFS frame: node plus position in its adjacency list.
  struct Frame {
    int node;
    size_t edge;
  };
  std::vector<Frame> frames;

  for (int root = 0; root < n; ++root) {
    if (index[static_cast<size_t>(root)] != -1) continue;
    frames.push_back({root, 0});
    while (!frames.empty()) {
      Frame& f = frames.back();
      int v = f.node;
      if (f.edge == 0) {
        index[static_cast<size_t>(v)] = next_index;
        lowlink[static_cast<size_t>(v)] = next_index;
        ++next_index;
        stack.push_back(v);
        on_stack[static_cast<size_t>(v)] = 1;
      }
      bool descended = false;
      const auto& out = g.out(v);
      while (f.edge < out.size()) {
        int w = out[f.edge];
        ++f.edge;
        if (index[static_cast<size_t>(w)] == -1) {
          frames.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[static_cast<size_t>(w)]) {
          lowlink[static_cast<size_t>(v)] =
              std::min(lowlink[static_cast<size_t>(v)], index[static_cast<size_t>(w)]);
        }
      }
      if (descended) continue;
      if (lowlink[static_cast<size_t>(v)] == index[static_cast<size_t>(v)]) {
        std::vector<int> component;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<size_t>(w)] = 0;
          component.push_back(w);
        } while (w != v);
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
      }
      frames.pop_back();
      if (!frames.empty()) {
        int parent = frames.back().node;
        lowlink[static_cast<size_t>(parent)] =
            std::min(lowlink[static_cast<size_t>(parent)], lowlink[static_cast<size_t>(v)]);
      }
    }
  }

  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return components;
}

bool has_self_loop(const Digraph& g, int node) {
  const auto& out = g.out(node);
  return std::find(out.begin(), out.end(), node) != out.end();
}

bool has_cycle(const Digraph& g) {
  for (const auto& comp : tarjan_scc(g)) {
    if (comp.size() >= 2) return true;
    if (has_self_loop(g, comp.front())) return true;
  }
  return false;
}

}  // namespace crn
