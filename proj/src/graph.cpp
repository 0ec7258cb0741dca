#include "decisive/core/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace decisive {

std::vector<std::vector<std::size_t>> strongly_connected_components(const Graph& graph) {
  constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
  const std::size_t n = graph.size();
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;

  struct Frame {
    std::size_t v;
    std::size_t next_edge;
  };
  std::vector<Frame> call;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& frame = call.back();
      const std::size_t v = frame.v;
      if (frame.next_edge < graph[v].size()) {
        const std::size_t w = graph[v][frame.next_edge++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<std::size_t> component;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          component.push_back(w);
        } while (w != v);
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
      }
      call.pop_back();
      if (!call.empty()) {
        const std::size_t parent = call.back().v;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  return components;
}

std::vector<std::vector<std::size_t>> bottom_components(const Graph& graph) {
  auto components = strongly_connected_components(graph);
  std::vector<std::size_t> owner(graph.size());
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (auto v : components[c]) owner[v] = c;
  }
  std::vector<std::vector<std::size_t>> bottom;
  for (std::size_t c = 0; c < components.size(); ++c) {
    bool closed = true;
    for (auto v : components[c]) {
      for (auto w : graph[v]) {
        if (owner[w] != c) {
          closed = false;
          break;
        }
      }
      if (!closed) break;
    }
    if (closed) bottom.push_back(std::move(components[c]));
  }
  std::sort(bottom.begin(), bottom.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return bottom;
}

std::vector<char> reachable_from(const Graph& graph, const std::vector<std::size_t>& seeds) {
  std::vector<char> seen(graph.size(), 0);
  std::deque<std::size_t> queue;
  for (auto s : seeds) {
    if (!seen[s]) {
      seen[s] = 1;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (auto w : graph[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

Graph reverse(const Graph& graph) {
  Graph out(graph.size());
  for (std::size_t v = 0; v < graph.size(); ++v) {
    for (auto w : graph[v]) out[w].push_back(v);
  }
  return out;
}

Graph support_graph(const MarkovChain& chain) {
  const auto& states = chain.states();
  Graph graph(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (const auto& e : chain.row(i).entries()) graph[i].push_back(chain.index_of(e.state));
  }
  return graph;
}

}  // namespace decisive
