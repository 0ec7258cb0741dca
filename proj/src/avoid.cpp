#include "decisive/qualitative/avoid.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "decisive/core/graph.hpp"
#include "decisive/core/measures.hpp"
#include "decisive/error.hpp"

namespace decisive {

namespace {

// Part of a countable chain within a BFS depth of the seeds. Edges leaving
// the region are dropped.
struct Region {
  std::vector<StateId> states;
  std::unordered_map<StateId, std::size_t> index;
  Graph graph;
  std::vector<char> frontier;  // at the depth limit, successors unexplored
};

Region explore_region(const MarkovChain& chain, const std::vector<StateId>& seeds, std::size_t depth) {
  Region region;
  std::vector<std::size_t> level;
  std::deque<std::size_t> queue;
  auto add = [&](StateId s, std::size_t d) {
    auto [it, inserted] = region.index.emplace(s, region.states.size());
    if (inserted) {
      if (region.states.size() >= kDefaultExplorationCap) {
        fail(ErrorKind::ResourceExhausted, "exploration cap reached while building a certified region");
      }
      region.states.push_back(s);
      region.graph.emplace_back();
      level.push_back(d);
      queue.push_back(it->second);
    }
    return it->second;
  };
  for (auto s : seeds) add(s, 0);
  region.frontier.assign(region.states.size(), 0);
  while (!queue.empty()) {
    const auto i = queue.front();
    queue.pop_front();
    if (level[i] >= depth) {
      if (region.frontier.size() <= i) region.frontier.resize(i + 1, 0);
      region.frontier[i] = 1;
      continue;
    }
    const StateId s = region.states[i];
    const std::size_t d = level[i];
    for (const auto& e : chain.successors(s).entries()) {
      const auto j = add(e.state, d + 1);
      region.graph[i].push_back(j);
    }
  }
  region.frontier.resize(region.states.size(), 0);
  return region;
}

std::size_t required_depth(const StateSet& target, const ExplorationScope& scope, const char* what) {
  if (scope.depth) return *scope.depth;
  if (!target.is_explicit() && target.certificate()) return *target.certificate();
  fail(ErrorKind::CertificateRequired, std::string(what) + " on a countable chain needs a closure certificate");
}

std::vector<char> co_reachable(const Graph& graph, const std::vector<char>& target) {
  std::vector<std::size_t> seeds;
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (target[i]) seeds.push_back(i);
  }
  return reachable_from(reverse(graph), seeds);
}

AvoidSet finite_avoid_set(const MarkovChain& chain, const StateSet& target) {
  const auto& states = chain.states();
  std::vector<char> in_target(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) in_target[i] = target.contains(states[i]);
  const auto reaches = co_reachable(support_graph(chain), in_target);
  std::vector<StateId> members;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!reaches[i]) members.push_back(states[i]);
  }
  return {StateSet::of(std::move(members)), AvoidSet::Provenance::ExactFiniteGraph, std::nullopt, {}};
}

std::optional<bool> target_nonempty(const MarkovChain& chain, const StateSet& target, const ExplorationScope& scope) {
  if (target.is_explicit()) return !target.empty();
  for (auto s : scope.seeds) {
    if (target.try_contains(s).value_or(false)) return true;
  }
  if (!scope.seeds.empty()) {
    const auto depth = scope.depth ? *scope.depth : target.certificate().value_or(0);
    const Region region = explore_region(chain, scope.seeds, depth);
    for (auto s : region.states) {
      if (target.try_contains(s).value_or(false)) return true;
    }
  }
  return std::nullopt;
}

}  // namespace

std::string to_string(AvoidSet::Provenance provenance) {
  switch (provenance) {
    case AvoidSet::Provenance::ExactFiniteGraph: return "exact-finite-graph";
    case AvoidSet::Provenance::BoundedExploration: return "bounded-exploration";
    case AvoidSet::Provenance::ChainCertificate: return "chain-certificate";
    case AvoidSet::Provenance::UserSupplied: return "user-supplied";
  }
  return "unknown";
}

AvoidSet avoid_set(const MarkovChain& chain, const StateSet& target, const ExplorationScope& scope) {
  if (chain.is_finite()) return finite_avoid_set(chain, target);

  if (chain.certificate().irreducible) {
    const auto nonempty = target_nonempty(chain, target, scope);
    if (!nonempty) {
      fail(ErrorKind::CertificateRequired, "cannot tell whether " + target.description() + " is empty");
    }
    AvoidSet out{*nonempty ? StateSet::nothing() : StateSet::everything(), AvoidSet::Provenance::ChainCertificate,
                 std::nullopt, "irreducible chain: " + chain.certificate().note};
    return out;
  }

  const std::size_t depth = required_depth(target, scope, "avoid-set");
  if (scope.seeds.empty()) fail(ErrorKind::CertificateRequired, "bounded avoid-set needs exploration seeds");
  Region region = explore_region(chain, scope.seeds, depth);
  std::vector<char> in_target(region.states.size());
  for (std::size_t i = 0; i < region.states.size(); ++i) in_target[i] = target.contains(region.states[i]);
  const auto reaches = co_reachable(region.graph, in_target);
  auto index = std::make_shared<std::unordered_map<StateId, bool>>();
  for (std::size_t i = 0; i < region.states.size(); ++i) (*index)[region.states[i]] = !reaches[i];
  auto membership = [index](StateId s) -> std::optional<bool> {
    auto it = index->find(s);
    if (it == index->end()) return std::nullopt;
    return it->second;
  };
  return {StateSet::predicate(membership, "avoid(" + target.description() + ")", depth),
          AvoidSet::Provenance::BoundedExploration, depth, "certified within depth " + std::to_string(depth)};
}

AvoidSet double_avoid_set(const MarkovChain& chain, const StateSet& target, const ExplorationScope& scope) {
  const AvoidSet first = avoid_set(chain, target, scope);
  AvoidSet second = avoid_set(chain, first.set, scope);
  if (first.provenance != AvoidSet::Provenance::ExactFiniteGraph && second.note.empty()) second.note = first.note;
  return second;
}

std::optional<StateId> sink_violation(const MarkovChain& chain, const StateSet& set, const std::vector<StateId>& states) {
  for (auto s : states) {
    if (!set.try_contains(s).value_or(false)) continue;
    for (const auto& e : chain.successors(s).entries()) {
      const auto in = set.try_contains(e.state);
      if (in && !*in) return s;
    }
  }
  return std::nullopt;
}

AvoidSet user_avoid_set(const MarkovChain& chain, const StateSet& target, StateSet candidate,
                        const ExplorationScope& scope, std::string note) {
  std::vector<StateId> checked;
  if (chain.is_finite()) {
    checked = chain.states();
  } else if (candidate.is_explicit()) {
    checked = candidate.members();
  } else {
    if (scope.seeds.empty()) {
      fail(ErrorKind::CertificateRequired, "user avoid-set on a countable chain needs an exploration scope");
    }
    const auto depth = required_depth(candidate, scope, "user avoid-set validation");
    checked = explore_region(chain, scope.seeds, depth).states;
  }
  for (auto s : checked) {
    const auto in_candidate = candidate.try_contains(s);
    if (in_candidate && *in_candidate && target.try_contains(s).value_or(false)) {
      fail(ErrorKind::InvalidArgument, "user avoid-set contains target state " + chain.name(s));
    }
  }
  if (auto bad = sink_violation(chain, candidate, checked)) {
    fail(ErrorKind::InvalidArgument, "user avoid-set is not closed: state " + chain.name(*bad) + " leaves it");
  }
  return {std::move(candidate), AvoidSet::Provenance::UserSupplied, scope.depth,
          note.empty() ? "sink property validated on " + std::to_string(checked.size()) + " states" : note};
}

AttractorCheck check_attractor(const MarkovChain& chain, const StateSet& attractor, const std::vector<StateId>& from,
                               const ExplorationScope& scope) {
  if (chain.is_finite()) {
    const auto& states = chain.states();
    const Graph graph = support_graph(chain);
    std::vector<char> in_attractor(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) in_attractor[i] = attractor.contains(states[i]);
    const auto reaches = co_reachable(graph, in_attractor);
    // States visited before the first hit of A.
    std::vector<std::size_t> seeds;
    if (from.empty()) {
      for (std::size_t i = 0; i < states.size(); ++i) seeds.push_back(i);
    } else {
      for (auto s : from) seeds.push_back(chain.index_of(s));
    }
    Graph avoiding = graph;
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (in_attractor[i]) avoiding[i].clear();
    }
    const auto visited = reachable_from(avoiding, seeds);
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (visited[i] && !reaches[i]) {
        return {false, true, "state " + chain.name(states[i]) + " is reachable and cannot reach the set"};
      }
    }
    return {true, true, "every reachable state reaches the set (finite chain)"};
  }

  std::vector<StateId> seeds = from.empty() ? scope.seeds : from;
  if (seeds.empty()) fail(ErrorKind::CertificateRequired, "attractor check on a countable chain needs seeds");
  const std::size_t depth = required_depth(attractor, scope, "attractor check");
  const Region region = explore_region(chain, seeds, depth);
  std::vector<char> in_attractor(region.states.size());
  for (std::size_t i = 0; i < region.states.size(); ++i) in_attractor[i] = attractor.contains(region.states[i]);
  // Frontier states may reach the set through unexplored successors.
  for (std::size_t i = 0; i < region.states.size(); ++i) {
    if (region.frontier[i]) in_attractor[i] = 1;
  }
  const auto reaches = co_reachable(region.graph, in_attractor);
  for (std::size_t i = 0; i < region.states.size(); ++i) {
    if (!reaches[i]) {
      return {false, false,
              "state " + chain.name(region.states[i]) + " does not reach the set within depth " + std::to_string(depth)};
    }
  }
  return {true, false,
          "necessary condition holds within depth " + std::to_string(depth) +
              "; probability-one reachability is the model's obligation"};
}

bool is_attractor(const MarkovChain& chain, const StateSet& attractor, const std::vector<StateId>& from,
                  const ExplorationScope& scope) {
  return check_attractor(chain, attractor, from, scope).holds;
}

std::vector<std::vector<StateId>> bsccs(const MarkovChain& chain) {
  const auto& states = chain.states();
  std::vector<std::vector<StateId>> out;
  for (const auto& component : bottom_components(support_graph(chain))) {
    std::vector<StateId> members;
    for (auto i : component) members.push_back(states[i]);
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

template <class T>
std::vector<T> exact_repeated_finite(const MarkovChain& chain, const StateSet& target) {
  std::vector<StateId> recurrent;
  for (const auto& component : bsccs(chain)) {
    const bool hits = std::any_of(component.begin(), component.end(), [&](StateId s) { return target.contains(s); });
    if (hits) recurrent.insert(recurrent.end(), component.begin(), component.end());
  }
  return exact_reachability_finite<T>(chain, StateSet::of(std::move(recurrent)));
}

template std::vector<Rational> exact_repeated_finite<Rational>(const MarkovChain&, const StateSet&);
template std::vector<double> exact_repeated_finite<double>(const MarkovChain&, const StateSet&);

}  // namespace decisive
