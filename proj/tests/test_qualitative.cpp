#include <doctest.h>

#include "decisive/core/families.hpp"
#include "decisive/core/measures.hpp"
#include "decisive/error.hpp"
#include "decisive/qualitative/avoid.hpp"
#include "decisive/qualitative/evidence.hpp"
#include "decisive/qualitative/verdict.hpp"
#include "support.hpp"

using namespace decisive;

namespace {

StateSet complement_in(const MarkovChain& chain, const StateSet& set) {
  std::vector<StateId> out;
  for (auto s : chain.states()) {
    if (!set.contains(s)) out.push_back(s);
  }
  return StateSet::of(out);
}

}  // namespace

TEST_CASE("property: avoid-set soundness, sink property and event identity") {
  testgen::Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const auto chain = testgen::random_chain(rng);
    const auto target = testgen::random_set(rng, chain.states().size());
    const AvoidSet avoid = avoid_set(chain, target);
    CHECK(avoid.provenance == AvoidSet::Provenance::ExactFiniteGraph);
    const auto x = exact_reachability_finite<Rational>(chain, target);
    for (std::size_t i = 0; i < chain.states().size(); ++i) {
      const StateId s = chain.states()[i];
      CHECK(avoid.set.contains(s) == (x[i] == 0));
      if (avoid.set.contains(s)) {
        for (auto t : chain.successors(s).support()) CHECK(avoid.set.contains(t));
      }
    }
    CHECK_FALSE(sink_violation(chain, avoid.set, chain.states()).has_value());

    const auto mu = testgen::random_initial(rng, chain.states().size());
    const Rational either = exact_reachability_from(chain, mu, set_union(target, avoid.set));
    const auto until = exact_until_finite<Rational>(chain, complement_in(chain, target), avoid.set);
    Rational split = exact_reachability_from(chain, mu, target);
    for (const auto& e : mu.entries()) split += e.prob * until[chain.index_of(e.state)];
    CHECK(either == split);
    // Finite chains are decisive.
    CHECK(either == 1);
  }
}

TEST_CASE("double avoid-set and repeated reachability") {
  // 0 <-> 1 recurrent with 1 labelled target; 2 absorbing elsewhere.
  const auto chain = MarkovChain::finite(
      {}, {state(0), state(1), state(2)},
      {Distribution::from_entries({{state(1), Rational(1, 2)}, {state(2), Rational(1, 2)}}), Distribution::dirac(state(0)),
       Distribution::dirac(state(2))},
      {0, 0, 0});
  const auto target = StateSet::of({1});
  CHECK(avoid_set(chain, target).set == StateSet::of({2}));
  CHECK(double_avoid_set(chain, target).set.empty());
  const auto gf = exact_repeated_finite<Rational>(chain, target);
  CHECK(gf == std::vector<Rational>{0, 0, 0});
}

TEST_CASE("qualitative reachability verdicts") {
  const auto evidence = DecisivenessEvidence::finite_chain();
  const auto chain = MarkovChain::finite(
      {}, {state(0), state(1), state(2)},
      {Distribution::from_entries({{state(1), Rational(1, 3)}, {state(2), Rational(2, 3)}}), Distribution::dirac(state(1)),
       Distribution::dirac(state(2))},
      {0, 0, 0});
  CHECK(qualitative_reachability(chain, Distribution::dirac(state(0)), StateSet::of({1}), evidence).verdict ==
        Qualitative::Positive);
  CHECK(qualitative_reachability(chain, Distribution::dirac(state(2)), StateSet::of({1}), evidence).verdict ==
        Qualitative::Zero);
  CHECK(qualitative_reachability(chain, Distribution::dirac(state(0)), StateSet::of({1, 2}), evidence).verdict ==
        Qualitative::AlmostSure);
  CHECK(qualitative_repeated(chain, Distribution::dirac(state(1)), StateSet::of({1}), evidence).verdict ==
        Qualitative::AlmostSure);
}

TEST_CASE("T_f reaches s0 almost surely for every q") {
  for (auto q : {Rational(1, 10), Rational(1, 2), Rational(9, 10)}) {
    const auto verdict = qualitative_reachability(three_state_abstraction(q), Distribution::dirac(state(2)),
                                                  StateSet::of({0}), DecisivenessEvidence::finite_chain());
    CHECK(verdict.verdict == Qualitative::AlmostSure);
    CHECK_FALSE(verdict.tainted);
  }
}

TEST_CASE("countable chains") {
  const auto walk = random_walk(Rational(1, 3));
  SUBCASE("irreducible certificate gives an empty avoid-set") {
    const AvoidSet avoid = avoid_set(walk, StateSet::of({0}));
    CHECK(avoid.provenance == AvoidSet::Provenance::ChainCertificate);
    CHECK(avoid.set.empty());
  }
  SUBCASE("attractor check is only a necessary condition") {
    ExplorationScope scope{{state(3)}, 30};
    const auto check = check_attractor(walk, StateSet::of({0}), {}, scope);
    CHECK(check.holds);
    CHECK_FALSE(check.conclusive);
  }
  SUBCASE("assumed evidence taints the verdict") {
    const auto verdict = qualitative_reachability(walk, Distribution::dirac(state(1)), StateSet::of({0}),
                                                  DecisivenessEvidence::assumed("test"));
    CHECK(verdict.tainted);
    CHECK(verdict.verdict == Qualitative::AlmostSure);
  }
  SUBCASE("a predicate target without a closure certificate is refused") {
    const auto far = StateSet::predicate([](StateId s) { return std::optional<bool>(s.value > 100); }, "n>100");
    const auto chain = MarkovChain::lazy(
        {}, [](StateId s) { return Distribution::dirac(StateId{s.value + 1}); }, [](StateId) { return LabelSet{0}; },
        [](StateId s) { return s.value >= 0; });
    CHECK_THROWS_AS(avoid_set(chain, far, {{state(0)}, std::nullopt}), Error);
  }
}

TEST_CASE("finite chain attractors") {
  testgen::Rng rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const auto chain = testgen::random_chain(rng);
    // The union of all bottom components is an attractor.
    std::vector<StateId> recurrent;
    for (const auto& component : bsccs(chain)) recurrent.insert(recurrent.end(), component.begin(), component.end());
    const auto check = check_attractor(chain, StateSet::of(recurrent));
    CHECK(check.holds);
    CHECK(check.conclusive);
    for (auto s : chain.states()) {
      CHECK(exact_reachability_from(chain, Distribution::dirac(s), StateSet::of(recurrent)) == 1);
    }
  }
}

TEST_CASE("evidence kinds") {
  CHECK(DecisivenessEvidence::assumed("x").taints());
  CHECK_FALSE(DecisivenessEvidence::finite_chain().taints());
  CHECK_FALSE(DecisivenessEvidence::not_required("x").taints());
  CHECK(to_json(DecisivenessEvidence::assumed("x"))["tainted"] == true);
}
