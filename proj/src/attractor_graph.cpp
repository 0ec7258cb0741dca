#include "decisive/qualitative/attractor_graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "decisive/core/explorer.hpp"
#include "decisive/error.hpp"

namespace decisive {

namespace {

// States reachable from `start` by paths of length >= 1, bounded by depth
// when given.
std::unordered_set<StateId> reach_from(const MarkovChain& chain, StateId start, std::optional<std::size_t> depth) {
  std::unordered_set<StateId> seen;
  std::deque<std::pair<StateId, std::size_t>> queue;
  for (const auto& e : chain.successors(start).entries()) {
    if (seen.insert(e.state).second) queue.emplace_back(e.state, 1);
  }
  while (!queue.empty()) {
    const auto [s, d] = queue.front();
    queue.pop_front();
    if (depth && d >= *depth) continue;
    for (const auto& e : chain.successors(s).entries()) {
      if (seen.insert(e.state).second) {
        queue.emplace_back(e.state, d + 1);
        if (seen.size() > kDefaultExplorationCap) {
          fail(ErrorKind::ResourceExhausted, "exploration cap reached while building the attractor graph");
        }
      }
    }
  }
  return seen;
}

std::optional<std::size_t> graph_depth(const ProductChain& prod, const StateSet& attractor,
                                       const ExplorationScope& scope) {
  if (prod.chain().is_finite()) return std::nullopt;
  if (scope.depth) return scope.depth;
  if (attractor.certificate()) return attractor.certificate();
  fail(ErrorKind::CertificateRequired,
       "attractor graph of a countable product needs a closure certificate on the attractor");
}

std::string dot_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::vector<StateId> AttractorGraph::bscc_states(std::size_t c) const {
  std::vector<StateId> out;
  for (auto v : bsccs.at(c)) out.push_back(vertices[v]);
  return out;
}

AttractorGraph attractor_graph(const ProductChain& prod, const StateSet& attractor, const ExplorationScope& scope) {
  if (!attractor.is_explicit()) fail(ErrorKind::InvalidArgument, "attractor graph needs a finite explicit attractor");
  AttractorGraph graph;
  graph.depth = graph_depth(prod, attractor, scope);
  graph.exact = !graph.depth.has_value();
  graph.vertices = attractor.members();
  std::unordered_map<StateId, std::size_t> position;
  for (std::size_t i = 0; i < graph.vertices.size(); ++i) position[graph.vertices[i]] = i;

  const MarkovChain& chain = prod.chain();
  graph.edges.assign(graph.vertices.size(), {});
  std::vector<LocationMask> reach_mask(graph.vertices.size(), 0);
  for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
    const StateId v = graph.vertices[i];
    reach_mask[i] |= LocationMask{1} << prod.decode(v).second;
    for (auto s : reach_from(chain, v, graph.depth)) {
      reach_mask[i] |= LocationMask{1} << prod.decode(s).second;
      auto it = position.find(s);
      if (it != position.end()) graph.edges[i].push_back(it->second);
    }
    std::sort(graph.edges[i].begin(), graph.edges[i].end());
  }
  graph.bsccs = bottom_components(graph.edges);
  for (const auto& component : graph.bsccs) {
    LocationMask mask = 0;
    for (auto v : component) mask |= reach_mask[v];
    graph.recurring.push_back(mask);
  }
  return graph;
}

std::vector<std::size_t> good_bsccs(const AttractorGraph& graph, const MullerAutomaton& dma) {
  std::vector<std::size_t> good;
  for (std::size_t c = 0; c < graph.bsccs.size(); ++c) {
    if (dma.accepts(graph.recurring[c])) good.push_back(c);
  }
  return good;
}

bool good_by_definition(const ProductChain& prod, const AttractorGraph& graph, std::size_t bscc) {
  // Product states reachable from C (paths of length >= 0).
  std::unordered_set<StateId> reachable;
  for (auto v : graph.bscc_states(bscc)) {
    reachable.insert(v);
    for (auto s : reach_from(prod.chain(), v, graph.depth)) reachable.insert(s);
  }
  const auto& dma = prod.automaton();
  for (auto family_set : dma.family()) {
    bool condition_a = true;
    for (auto s : reachable) {
      if (!(family_set >> prod.decode(s).second & 1)) {
        condition_a = false;
        break;
      }
    }
    bool condition_b = true;
    for (std::size_t q = 0; q < dma.size() && condition_b; ++q) {
      if (!(family_set >> q & 1)) continue;
      condition_b = std::any_of(reachable.begin(), reachable.end(),
                                [&](StateId s) { return prod.decode(s).second == q; });
    }
    if (condition_a && condition_b) return true;
  }
  return false;
}

std::string attractor_graph_dot(const ProductChain& prod, const AttractorGraph& graph,
                                const std::vector<std::size_t>& good) {
  std::vector<int> status(graph.vertices.size(), 0);  // 0 transient, 1 good, 2 bad
  for (std::size_t c = 0; c < graph.bsccs.size(); ++c) {
    const bool is_good = std::find(good.begin(), good.end(), c) != good.end();
    for (auto v : graph.bsccs[c]) status[v] = is_good ? 1 : 2;
  }
  std::ostringstream out;
  out << "digraph attractor_graph {\n";
  out << "  node [shape=box, style=rounded];\n";
  for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
    out << "  v" << i << " [label=\"" << dot_escape(prod.name(graph.vertices[i])) << "\"";
    if (status[i] == 1) out << ", style=\"rounded,filled\", fillcolor=palegreen";
    if (status[i] == 2) out << ", style=\"rounded,filled\", fillcolor=lightpink";
    out << "];\n";
  }
  for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
    for (auto j : graph.edges[i]) out << "  v" << i << " -> v" << j << ";\n";
  }
  out << "}\n";
  return out.str();
}

nlohmann::json attractor_graph_json(const ProductChain& prod, const AttractorGraph& graph,
                                    const std::vector<std::size_t>& good) {
  nlohmann::json doc;
  doc["vertices"] = nlohmann::json::array();
  for (auto v : graph.vertices) doc["vertices"].push_back(prod.name(v));
  doc["edges"] = nlohmann::json::array();
  for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
    for (auto j : graph.edges[i]) doc["edges"].push_back({prod.name(graph.vertices[i]), prod.name(graph.vertices[j])});
  }
  doc["bsccs"] = nlohmann::json::array();
  for (std::size_t c = 0; c < graph.bsccs.size(); ++c) {
    nlohmann::json members = nlohmann::json::array();
    for (auto v : graph.bscc_states(c)) members.push_back(prod.name(v));
    doc["bsccs"].push_back({{"states", members},
                            {"recurring", format_mask(prod.automaton(), graph.recurring[c])},
                            {"good", std::find(good.begin(), good.end(), c) != good.end()}});
  }
  doc["exact"] = graph.exact;
  if (graph.depth) doc["certificate_depth"] = *graph.depth;
  return doc;
}

}  // namespace decisive
