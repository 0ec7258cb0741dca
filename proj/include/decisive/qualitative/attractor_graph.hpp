#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "decisive/core/graph.hpp"
#include "decisive/omega/product.hpp"
#include "decisive/qualitative/avoid.hpp"

namespace decisive {

// Graph(B) of a product chain: vertices are the attractor states, with an
// edge when a path of length >= 1 joins them in the product.
struct AttractorGraph {
  std::vector<StateId> vertices;
  Graph edges;
  std::vector<std::vector<std::size_t>> bsccs;  // vertex indices
  std::vector<LocationMask> recurring;         // F_C per BSCC
  bool exact = true;                           // false when built by bounded exploration
  std::optional<std::size_t> depth;

  std::vector<StateId> bscc_states(std::size_t c) const;
};

// B must be a finite explicit set. Countable products need a depth.
AttractorGraph attractor_graph(const ProductChain& prod, const StateSet& attractor, const ExplorationScope& scope = {});

// Indices of BSCCs with F_C ∈ F.
std::vector<std::size_t> good_bsccs(const AttractorGraph& graph, const MullerAutomaton& dma);

// The definition's two conditions, checked literally: some F in the family
// contains every location reachable from C (a) and each of its locations is
// reachable from C (b).
bool good_by_definition(const ProductChain& prod, const AttractorGraph& graph, std::size_t bscc);

std::string attractor_graph_dot(const ProductChain& prod, const AttractorGraph& graph,
                                const std::vector<std::size_t>& good);
nlohmann::json attractor_graph_json(const ProductChain& prod, const AttractorGraph& graph,
                                    const std::vector<std::size_t>& good);

}  // namespace decisive
