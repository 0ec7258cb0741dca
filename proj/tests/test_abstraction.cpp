#include <doctest.h>

#include <map>

#include "decisive/abstraction/abstraction.hpp"
#include "decisive/core/families.hpp"
#include "decisive/core/measures.hpp"
#include "decisive/error.hpp"
#include "decisive/qualitative/avoid.hpp"
#include "decisive/quantitative/scheme.hpp"
#include "support.hpp"

using namespace decisive;

namespace {

Distribution random_concrete_initial(testgen::Rng& rng, const MarkovChain& concrete) {
  return testgen::random_initial(rng, concrete.states().size());
}

}  // namespace

TEST_CASE("pushforward of a Dirac distribution is a Dirac distribution") {
  const AlphaMap alpha = AlphaMap::walk_to_three_state();
  CHECK(pushforward(alpha, Distribution::dirac(state(0))) == Distribution::dirac(state(0)));
  CHECK(pushforward(alpha, Distribution::dirac(state(9))) == Distribution::dirac(state(2)));
  const auto mu = Distribution::from_entries({{state(2), Rational(1, 3)}, {state(5), Rational(2, 3)}});
  CHECK(pushforward(alpha, mu) == Distribution::dirac(state(2)));
  CHECK(pushforward(alpha, mu).mass() == 1);
}

TEST_CASE("property: refinements are abstractions and avoid-sets commute with preimages") {
  testgen::Rng rng(51);
  for (int trial = 0; trial < 150; ++trial) {
    const testgen::Refinement r = testgen::random_refinement(rng);
    AbstractionHandle handle(r.concrete, r.abstract, AlphaMap::table(r.alpha));
    const auto report = check_abstraction(handle, 16);
    CHECK(report.holds);
    CHECK(handle.is_abstraction());

    const auto target = testgen::random_set(rng, r.abstract.states().size());
    const auto concrete_avoid = avoid_set(r.concrete, testgen::preimage(r.alpha, target)).set;
    const auto lifted = testgen::preimage(r.alpha, avoid_set(r.abstract, target).set);
    CHECK(concrete_avoid == lifted);

    const auto mu = random_concrete_initial(rng, r.concrete);
    const auto nu = pushforward(handle.alpha(), mu);
    CHECK(nu.mass() == 1);
    // Positivity of cylinders transfers both ways.
    std::vector<StateSet> abstract_sets;
    std::vector<StateSet> concrete_sets;
    const std::size_t length = testgen::uniform_int(rng, 1, 4);
    for (std::size_t i = 0; i < length; ++i) {
      abstract_sets.push_back(testgen::random_set(rng, r.abstract.states().size(), 3));
      concrete_sets.push_back(testgen::preimage(r.alpha, abstract_sets.back()));
    }
    CHECK(sgn(cylinder_probability(r.concrete, mu, concrete_sets)) ==
          sgn(cylinder_probability(r.abstract, nu, abstract_sets)));
  }
}

TEST_CASE("breaking one edge breaks the abstraction") {
  // Concrete: 0 -> 1, 1 -> 1, 2 -> 2 with α(2) = α(1)... abstract 0 -> 1, 1 -> 1.
  const auto concrete = MarkovChain::finite({}, {state(0), state(1), state(2)},
                                            {Distribution::dirac(state(1)), Distribution::dirac(state(1)),
                                             Distribution::dirac(state(0))},
                                            {0, 0, 0});
  const auto abstract =
      MarkovChain::finite({}, {state(0), state(1)}, {Distribution::dirac(state(1)), Distribution::dirac(state(1))}, {0, 0});
  AbstractionHandle handle(concrete, abstract,
                           AlphaMap::table({{state(0), state(0)}, {state(1), state(1)}, {state(2), state(1)}}));
  const auto report = check_abstraction(handle, 8);
  CHECK_FALSE(report.holds);
  REQUIRE(report.offending.has_value());
  CHECK(report.offending->first == state(2));
}

TEST_CASE("walk against T_f") {
  SUBCASE("the one-step condition fails from states 2 and above") {
    AbstractionHandle handle(random_walk(Rational(1, 3)), three_state_abstraction(Rational(1, 3)),
                             AlphaMap::walk_to_three_state());
    ExplorationScope scope;
    scope.depth = 20;
    const auto report = check_abstraction(handle, 32, scope);
    CHECK_FALSE(report.holds);
  }
  SUBCASE("witness search finds unsoundness for p=2/3") {
    const Rational p(2, 3);
    const auto walk = random_walk(p);
    AbstractionHandle handle(walk, three_state_abstraction(Rational(1, 3)), AlphaMap::walk_to_three_state());
    auto estimate = [&](const Distribution& mu, const StateSet& target) {
      auto e = Estimator::monte_carlo(20000, 0.99, 3, 1);
      if (target.is_explicit() && target.members() == std::vector<StateId>{state(0)}) {
        e.tail = [p](StateId s) { return walk_ruin_tail(p, s); };
      }
      SchemeOptions o;
      o.eps = 0.05;
      o.budget = 2000;
      return approx_reach(walk, mu, target, avoid_set(walk, target, {mu.support(), 20}),
                          DecisivenessEvidence::not_required("truncated runs stay inside the interval"), e, o);
    };
    const auto cex = soundness_witness_search(handle, Distribution::dirac(state(1)), {StateSet::of({0})}, estimate);
    REQUIRE(cex.has_value());
    CHECK(cex->abstract_value == 1);
    CHECK(cex->concrete.hi < 1.0);
    CHECK(cex->concrete.contains(0.5));
    CHECK(handle.soundness() == Soundness::WitnessedUnsound);
  }
}

TEST_CASE("witness search over an abstract catalogue") {
  const auto tf = three_state_abstraction(Rational(1, 2));
  const auto catalogue = default_catalogue(tf);
  CHECK_FALSE(catalogue.empty());
  int calls = 0;
  auto sure = [&](const StateSet&) {
    ++calls;
    ApproxResult r;
    r.lo = 0.99;
    r.hi = 1.0;
    r.status = Status::Converged;
    return r;
  };
  CHECK_FALSE(witness_search(tf, Distribution::dirac(state(1)), catalogue, sure).has_value());
  CHECK(calls > 0);
  auto low = [](const StateSet&) {
    ApproxResult r;
    r.lo = 0.4;
    r.hi = 0.6;
    r.status = Status::Converged;
    return r;
  };
  const auto w = witness_search(tf, Distribution::dirac(state(1)), catalogue, low);
  REQUIRE(w.has_value());
  CHECK(w->abstract_value == 1);
}

TEST_CASE("identity handles are certified complete") {
  testgen::Rng rng(52);
  for (int trial = 0; trial < 20; ++trial) {
    const auto chain = testgen::random_chain(rng, {1, 8, 3, 0.2});
    AbstractionHandle handle(chain, chain, AlphaMap::identity(chain));
    CHECK(check_abstraction(handle, 8).holds);
    CHECK(certify_complete(handle).holds);
    CHECK(handle.is_complete());
  }
}
