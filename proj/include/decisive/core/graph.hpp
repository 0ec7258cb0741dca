#pragma once

#include <cstddef>
#include <vector>

#include "decisive/core/markov_chain.hpp"

namespace decisive {

using Graph = std::vector<std::vector<std::size_t>>;

// Tarjan's algorithm without recursion. Components come out in reverse
// topological order; members are sorted.
std::vector<std::vector<std::size_t>> strongly_connected_components(const Graph& graph);

// SCCs with no edge leaving them, ordered by their least member.
std::vector<std::vector<std::size_t>> bottom_components(const Graph& graph);

std::vector<char> reachable_from(const Graph& graph, const std::vector<std::size_t>& seeds);

Graph reverse(const Graph& graph);

// Support graph of a finite chain over dense state indices.
Graph support_graph(const MarkovChain& chain);

}  // namespace decisive
