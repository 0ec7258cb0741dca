#pragma once

// Hand-rolled generators for property tests. Every generator takes the RNG
// by reference so a failing case is reproducible from the suite seed and
// the case index.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "decisive/core/distribution.hpp"
#include "decisive/core/markov_chain.hpp"
#include "decisive/core/state_set.hpp"
#include "decisive/omega/muller.hpp"

namespace testgen {

using decisive::Distribution;
using decisive::LabelSet;
using decisive::MarkovChain;
using decisive::Rational;
using decisive::StateId;
using decisive::StateSet;
using Rng = std::mt19937_64;

inline std::size_t uniform_int(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

// Positive integer weights normalized to rationals.
inline Distribution random_distribution(Rng& rng, const std::vector<StateId>& support) {
  std::vector<long> weights;
  long total = 0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    weights.push_back(static_cast<long>(uniform_int(rng, 1, 6)));
    total += weights.back();
  }
  std::vector<Distribution::Entry> entries;
  for (std::size_t i = 0; i < support.size(); ++i) entries.push_back({support[i], Rational(weights[i], total)});
  for (auto& e : entries) e.prob.canonicalize();
  return Distribution::from_entries(std::move(entries));
}

inline std::vector<StateId> random_subset(Rng& rng, std::size_t n, std::size_t lo, std::size_t hi) {
  std::vector<StateId> all;
  for (std::size_t i = 0; i < n; ++i) all.push_back(StateId{static_cast<std::int64_t>(i)});
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min(n, uniform_int(rng, lo, hi)));
  std::sort(all.begin(), all.end());
  return all;
}

struct ChainShape {
  std::size_t min_states = 1;
  std::size_t max_states = 20;
  std::size_t max_fanout = 3;
  double self_loop = 0.2;  // chance of forcing an absorbing state
};

// States 0..n-1, labels over {a, b}.
inline MarkovChain random_chain(Rng& rng, const ChainShape& shape = {}) {
  const std::size_t n = uniform_int(rng, shape.min_states, shape.max_states);
  std::vector<StateId> states;
  std::vector<Distribution> rows;
  std::vector<LabelSet> labels;
  for (std::size_t i = 0; i < n; ++i) {
    states.push_back(StateId{static_cast<std::int64_t>(i)});
    if (coin(rng, shape.self_loop)) {
      rows.push_back(Distribution::dirac(states.back()));
    } else {
      rows.push_back(random_distribution(rng, random_subset(rng, n, 1, shape.max_fanout)));
    }
    labels.push_back(uniform_int(rng, 0, 3));
  }
  return MarkovChain::finite({"a", "b"}, std::move(states), std::move(rows), std::move(labels));
}

inline StateSet random_set(Rng& rng, std::size_t n, std::size_t max_size = 4) {
  return StateSet::of(random_subset(rng, n, 0, max_size));
}

inline Distribution random_initial(Rng& rng, std::size_t n) {
  return random_distribution(rng, random_subset(rng, n, 1, 3));
}

// Complete deterministic automaton over {a, b} with a random Muller family.
inline decisive::MullerAutomaton random_automaton(Rng& rng, std::size_t max_locations = 3) {
  const std::size_t m = uniform_int(rng, 1, max_locations);
  std::vector<std::string> names;
  for (std::size_t q = 0; q < m; ++q) names.push_back("q" + std::to_string(q));
  std::vector<decisive::MullerAutomaton::Edge> edges;
  for (std::size_t q = 0; q < m; ++q) {
    for (LabelSet u = 0; u < 4; ++u) edges.push_back({q, u, uniform_int(rng, 0, m - 1)});
  }
  std::vector<decisive::LocationMask> family;
  for (decisive::LocationMask mask = 1; mask < (decisive::LocationMask{1} << m); ++mask) {
    if (coin(rng)) family.push_back(mask);
  }
  return decisive::MullerAutomaton::build({"a", "b"}, names, 0, edges, family);
}

struct Refinement {
  MarkovChain abstract;
  MarkovChain concrete;
  std::map<StateId, StateId> alpha;
};

// Each abstract state gets a fiber of 1..3 concrete states. A concrete
// state sends positive mass to some state of every abstract successor's
// fiber and nowhere else, so α is an abstraction by construction.
inline Refinement random_refinement(Rng& rng) {
  const MarkovChain abstract = random_chain(rng, {1, 6, 3, 0.2});
  const auto& astates = abstract.states();
  std::vector<std::vector<StateId>> fibers(astates.size());
  std::map<StateId, StateId> alpha;
  std::int64_t next = 0;
  for (std::size_t a = 0; a < astates.size(); ++a) {
    const std::size_t size = uniform_int(rng, 1, 3);
    for (std::size_t k = 0; k < size; ++k) {
      fibers[a].push_back(StateId{next});
      alpha[StateId{next}] = astates[a];
      ++next;
    }
  }
  std::vector<StateId> cstates;
  std::vector<Distribution> rows;
  std::vector<LabelSet> labels;
  for (std::size_t a = 0; a < astates.size(); ++a) {
    for (auto c : fibers[a]) {
      std::vector<StateId> support;
      for (auto b : abstract.successors(astates[a]).support()) {
        const auto& fiber = fibers[abstract.index_of(b)];
        std::vector<StateId> pick;
        for (auto t : fiber) {
          if (coin(rng)) pick.push_back(t);
        }
        if (pick.empty()) pick.push_back(fiber[uniform_int(rng, 0, fiber.size() - 1)]);
        support.insert(support.end(), pick.begin(), pick.end());
      }
      cstates.push_back(c);
      rows.push_back(random_distribution(rng, support));
      labels.push_back(abstract.label(astates[a]));
    }
  }
  return {abstract, MarkovChain::finite({"a", "b"}, cstates, std::move(rows), std::move(labels)), alpha};
}

inline StateSet preimage(const std::map<StateId, StateId>& alpha, const StateSet& set) {
  std::vector<StateId> out;
  for (const auto& [c, a] : alpha) {
    if (set.contains(a)) out.push_back(c);
  }
  return StateSet::of(out);
}

}  // namespace testgen
