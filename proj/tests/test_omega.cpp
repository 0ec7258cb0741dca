#include <doctest.h>

#include <set>

#include "decisive/core/families.hpp"
#include "decisive/core/graph.hpp"
#include "decisive/core/measures.hpp"
#include "decisive/error.hpp"
#include "decisive/omega/muller.hpp"
#include "decisive/omega/product.hpp"
#include "decisive/qualitative/attractor_graph.hpp"
#include "decisive/qualitative/evidence.hpp"
#include "decisive/qualitative/verdict.hpp"
#include "support.hpp"

using namespace decisive;

namespace {

// 0 -> {1: 1/2, 2: 1/2}; 1 loops labelled a, 2 loops unlabelled.
MarkovChain fork_chain() {
  return MarkovChain::finite(
      {"a"}, {state(0), state(1), state(2)},
      {Distribution::from_entries({{state(1), Rational(1, 2)}, {state(2), Rational(1, 2)}}), Distribution::dirac(state(1)),
       Distribution::dirac(state(2))},
      {0, 1, 0});
}

// q1 after reading a, q0 otherwise; F = {{q1}}: eventually always a.
MullerAutomaton eventually_always_a() {
  return MullerAutomaton::build({"a"}, {"q0", "q1"}, 0, {{0, 0, 0}, {0, 1, 1}, {1, 0, 0}, {1, 1, 1}}, {0b10});
}

StateSet all_pairs(const ProductChain& prod) { return all_states(prod.chain()); }

}  // namespace

TEST_CASE("automata are checked for determinism and completeness") {
  CHECK_THROWS_AS(MullerAutomaton::build({"a"}, {"q0"}, 0, {{0, 1, 0}}, {1}), Error);
  CHECK_THROWS_AS(MullerAutomaton::build({"a"}, {"q0", "q1"}, 0, {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {1, 0, 1}, {1, 1, 1}},
                                         {1}),
                  Error);
  const auto completed = MullerAutomaton::build({"a"}, {"q0"}, 0, {{0, 1, 0}}, {1}, true);
  CHECK(completed.auto_completed());
  CHECK(completed.size() == 2);
  CHECK_FALSE(completed.accepts(0b10));
}

TEST_CASE("alternating automaton") {
  const auto dma = alternating_automaton();
  CHECK(dma.next(0, 1) == 1);
  CHECK(dma.next(1, 1) == 2);
  CHECK(dma.next(2, 1) == 1);
  CHECK(dma.next(1, 0) == 3);
  CHECK(dma.accepts(0b0110));
  CHECK_FALSE(dma.accepts(0b0010));
  const auto reloaded = load_muller(muller_to_json(dma));
  for (std::size_t q = 0; q < dma.size(); ++q) {
    for (LabelSet u = 0; u < 2; ++u) CHECK(reloaded.next(q, u) == dma.next(q, u));
  }
}

TEST_CASE("letters are re-encoded over the chain's propositions") {
  const auto dma = MullerAutomaton::build({"b"}, {"q0", "q1"}, 0, {{0, 0, 0}, {0, 1, 1}, {1, 0, 0}, {1, 1, 1}}, {0b10});
  const auto wide = dma.over_alphabet({"a", "b"});
  // bit 1 is b on the chain side; a is ignored.
  CHECK(wide.next(0, 0b10) == 1);
  CHECK(wide.next(0, 0b11) == 1);
  CHECK(wide.next(0, 0b01) == 0);
  CHECK_THROWS_AS(dma.over_alphabet({"a"}), Error);
}

TEST_CASE("product encoding follows the label of the state being left") {
  const auto prod = product(fork_chain(), eventually_always_a());
  CHECK(prod.encode(state(1), 1) == state(3));
  CHECK(prod.decode(state(3)) == std::pair<StateId, std::size_t>{state(1), 1});
  // From (1, q0): label a moves to q1 for the successor.
  CHECK(prod.chain().successors(prod.encode(state(1), 0)) == Distribution::dirac(prod.encode(state(1), 1)));
  const auto mu = lift_initial(prod, Distribution::dirac(state(0)));
  CHECK(mu == Distribution::dirac(prod.encode(state(0), 0)));
  CHECK(prod.name(state(3)) == "(1,q1)");
}

TEST_CASE("exact Muller probability on hand-sized products") {
  const auto prod = product(fork_chain(), eventually_always_a());
  const auto mu = lift_initial(prod, Distribution::dirac(state(0)));
  CHECK(muller_probability_exact(prod, mu) == Rational(1, 2));
  const auto verdict = almost_sure_omega(prod, mu, all_pairs(prod), DecisivenessEvidence::finite_chain());
  CHECK_FALSE(verdict.almost_sure);
  CHECK(verdict.good.size() == 1);
  CHECK(verdict.reachable_bsccs.size() == 2);
}

TEST_CASE("walk times alternating automaton is almost surely accepted") {
  const auto prod = product(random_walk(Rational(1, 3)), alternating_automaton());
  const auto mu = lift_initial(prod, Distribution::dirac(state(1)));
  std::vector<StateId> attractor;
  for (std::size_t q = 0; q < prod.automaton().size(); ++q) attractor.push_back(prod.encode(state(0), q));
  ExplorationScope scope;
  scope.depth = 40;
  const auto verdict =
      almost_sure_omega(prod, mu, StateSet::of(attractor),
                        DecisivenessEvidence::finite_attractor(StateSet::of({0}), "walk drift", true), scope);
  CHECK(verdict.almost_sure);
  CHECK_FALSE(verdict.tainted);
}

TEST_CASE("empty Muller family is never satisfied") {
  testgen::Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto chain = testgen::random_chain(rng, {1, 8, 3, 0.2});
    const auto dma = MullerAutomaton::build({"a", "b"}, {"q0"}, 0, {{0, 0, 0}, {0, 1, 0}, {0, 2, 0}, {0, 3, 0}}, {});
    const auto prod = product(chain, dma);
    const auto mu = lift_initial(prod, testgen::random_initial(rng, chain.states().size()));
    CHECK(muller_probability_exact(prod, mu) == 0);
    CHECK_FALSE(almost_sure_omega(prod, mu, all_pairs(prod), DecisivenessEvidence::finite_chain()).almost_sure);
  }
}

TEST_CASE("property: good BSCCs match the definition and a direct product decomposition") {
  testgen::Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const auto chain = testgen::random_chain(rng, {1, 10, 3, 0.2});
    const auto prod = product(chain, testgen::random_automaton(rng));
    const auto graph = attractor_graph(prod, all_pairs(prod));
    const auto good = good_bsccs(graph, prod.automaton());
    for (std::size_t c = 0; c < graph.bsccs.size(); ++c) {
      const bool listed = std::find(good.begin(), good.end(), c) != good.end();
      CHECK(listed == good_by_definition(prod, graph, c));
    }
    // Oracle: bottom components of the full product support graph whose
    // location set is accepted.
    const auto& states = prod.chain().states();
    std::set<std::vector<StateId>> oracle;
    for (const auto& bottom : bottom_components(support_graph(prod.chain()))) {
      LocationMask mask = 0;
      std::vector<StateId> members;
      for (auto i : bottom) {
        mask |= LocationMask{1} << prod.decode(states[i]).second;
        members.push_back(states[i]);
      }
      if (prod.automaton().accepts(mask)) oracle.insert(members);
    }
    std::set<std::vector<StateId>> found;
    for (auto c : good) {
      auto members = graph.bscc_states(c);
      std::sort(members.begin(), members.end());
      found.insert(members);
    }
    CHECK(found == oracle);
  }
}

TEST_CASE("property: Muller probability decomposes over good BSCCs") {
  testgen::Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto chain = testgen::random_chain(rng, {1, 10, 3, 0.2});
    const auto prod = product(chain, testgen::random_automaton(rng));
    const auto mu = lift_initial(prod, testgen::random_initial(rng, chain.states().size()));
    const auto graph = attractor_graph(prod, all_pairs(prod));
    std::vector<StateId> good_states;
    for (auto c : good_bsccs(graph, prod.automaton())) {
      for (auto s : graph.bscc_states(c)) good_states.push_back(s);
    }
    const Rational decomposition = exact_reachability_from(prod.chain(), mu, StateSet::of(good_states));
    CHECK(decomposition == muller_probability_exact(prod, mu));
  }
}
