#include <doctest.h>

#include <cmath>

#include "decisive/core/families.hpp"
#include "decisive/core/measures.hpp"
#include "decisive/core/path_formula.hpp"
#include "decisive/error.hpp"
#include "decisive/omega/product.hpp"
#include "decisive/qualitative/avoid.hpp"
#include "decisive/quantitative/monte_carlo.hpp"
#include "decisive/quantitative/omega.hpp"
#include "decisive/quantitative/scheme.hpp"
#include "support.hpp"

using namespace decisive;

namespace {

SchemeOptions exact_options(double eps = 1e-9, std::size_t budget = 400) {
  SchemeOptions o;
  o.eps = eps;
  o.budget = budget;
  o.record_trace = true;
  return o;
}

void check_adjacent(const ApproxResult& r, const Rational& oracle) {
  REQUIRE_FALSE(r.trace.empty());
  for (std::size_t n = 0; n < r.trace.size(); ++n) {
    const auto& [lo, hi] = r.trace[n];
    CHECK(lo <= hi);
    CHECK(lo <= oracle);
    CHECK(oracle <= hi);
    if (n > 0) {
      CHECK(r.trace[n - 1].first <= lo);
      CHECK(hi <= r.trace[n - 1].second);
    }
  }
}

// 0 -> {1: 1/2, 2: 1/2}, 1 and 2 absorbing.
MarkovChain fork_chain() {
  return MarkovChain::finite(
      {}, {state(0), state(1), state(2)},
      {Distribution::from_entries({{state(1), Rational(1, 2)}, {state(2), Rational(1, 2)}}), Distribution::dirac(state(1)),
       Distribution::dirac(state(2))},
      {0, 0, 0});
}

}  // namespace

TEST_CASE("property: exact scheme runs are adjacent and bracket the exact value") {
  testgen::Rng rng(41);
  const auto evidence = DecisivenessEvidence::finite_chain();
  for (int trial = 0; trial < 60; ++trial) {
    const auto chain = testgen::random_chain(rng, {1, 15, 3, 0.2});
    const auto n = chain.states().size();
    const auto mu = testgen::random_initial(rng, n);
    const auto target = testgen::random_set(rng, n);
    const auto avoid = avoid_set(chain, target);

    const auto reach = approx_reach(chain, mu, target, avoid, evidence, Estimator::exact(), exact_options());
    const Rational p_reach = exact_reachability_from(chain, mu, target);
    check_adjacent(reach, p_reach);
    CHECK(reach.status == Status::Converged);

    const auto allowed = testgen::random_set(rng, n, n);
    const auto until =
        approx_until(chain, mu, allowed, target, avoid, evidence, Estimator::exact(), exact_options());
    const auto x = exact_until_finite<Rational>(chain, allowed, target);
    Rational p_until = 0;
    for (const auto& e : mu.entries()) p_until += e.prob * x[chain.index_of(e.state)];
    check_adjacent(until, p_until);

    const auto twice = avoid_set(chain, avoid.set);
    const auto repeated =
        approx_repeated(chain, mu, target, avoid, twice, evidence, Estimator::exact(), exact_options());
    const auto gf = exact_repeated_finite<Rational>(chain, target);
    Rational p_gf = 0;
    for (const auto& e : mu.entries()) p_gf += e.prob * gf[chain.index_of(e.state)];
    check_adjacent(repeated, p_gf);
  }
}

TEST_CASE("property: doubling the budget never widens the interval") {
  testgen::Rng rng(42);
  const auto evidence = DecisivenessEvidence::finite_chain();
  for (int trial = 0; trial < 40; ++trial) {
    const auto chain = testgen::random_chain(rng, {2, 15, 3, 0.1});
    const auto n = chain.states().size();
    const auto mu = testgen::random_initial(rng, n);
    const auto target = testgen::random_set(rng, n);
    const auto avoid = avoid_set(chain, target);
    const std::size_t budget = testgen::uniform_int(rng, 1, 8);
    const auto small = approx_reach(chain, mu, target, avoid, evidence, Estimator::exact(), exact_options(1e-30, budget));
    const auto large =
        approx_reach(chain, mu, target, avoid, evidence, Estimator::exact(), exact_options(1e-30, 2 * budget));
    CHECK(large.gap() <= small.gap());
  }
}

TEST_CASE("walk p=1/3 converges to 1") {
  const auto walk = random_walk(Rational(1, 3));
  SchemeOptions o;
  o.eps = 1e-3;
  const auto r = approx_reach(walk, Distribution::dirac(state(1)), StateSet::of({0}), avoid_set(walk, StateSet::of({0})),
                              DecisivenessEvidence::finite_attractor(StateSet::of({0}), "drift to 0", false),
                              Estimator::floating(), o);
  CHECK(r.status == Status::Converged);
  CHECK(r.contains(1.0));
  CHECK(r.lo >= 0.999);
}

TEST_CASE("walk p=2/3 stalls with the gap stuck at one half") {
  const auto walk = random_walk(Rational(2, 3));
  SchemeOptions o;
  o.eps = 1e-3;
  o.budget = 2000;
  const auto r = approx_reach(walk, Distribution::dirac(state(1)), StateSet::of({0}), avoid_set(walk, StateSet::of({0})),
                              DecisivenessEvidence::assumed("not decisive"), Estimator::floating(), o);
  CHECK(r.status != Status::Converged);
  CHECK(r.lo == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(r.hi == 1.0);
  CHECK(r.tainted());
}

TEST_CASE("discrete time-bounded reachability equals the bounded formula") {
  testgen::Rng rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const auto chain = testgen::random_chain(rng, {1, 10, 3, 0.2});
    const auto n = chain.states().size();
    const auto mu = testgen::random_initial(rng, n);
    const auto target = testgen::random_set(rng, n);
    const std::size_t k = testgen::uniform_int(rng, 0, 6);
    const auto r = time_bounded_reach(chain, mu, target, avoid_set(chain, target), StepWindow{0, k, false},
                                      DecisivenessEvidence::finite_chain(), Estimator::exact(), exact_options(1e-30));
    const Rational oracle =
        bounded_event_probability<Rational>(chain, mu, f_eventually(f_set(target), BoundKind::Le, k), k);
    REQUIRE(r.exact_lo.has_value());
    CHECK(*r.exact_lo == oracle);
    CHECK(*r.exact_hi == oracle);
  }
  const auto chain = fork_chain();
  const auto empty = time_bounded_reach(chain, Distribution::dirac(state(0)), StateSet::of({1}), avoid_set(chain, StateSet::of({1})),
                                        StepWindow{0, 0, true}, DecisivenessEvidence::finite_chain(),
                                        Estimator::exact(), exact_options());
  CHECK(empty.lo == 0);
  CHECK(empty.hi == 0);
}

TEST_CASE("Monte-Carlo estimates are reproducible and calibrated") {
  const auto chain = fork_chain();
  const auto mu = Distribution::dirac(state(0));
  const auto target = StateSet::of({1});
  const auto avoid = avoid_set(chain, target);
  SchemeOptions o;
  o.eps = 0.2;
  auto run = [&](std::uint64_t seed, unsigned threads) {
    return approx_reach(chain, mu, target, avoid, DecisivenessEvidence::finite_chain(),
                        Estimator::monte_carlo(2000, 0.95, seed, threads), o);
  };
  const auto a = run(5, 1);
  const auto b = run(5, 1);
  CHECK(to_json(a).dump() == to_json(b).dump());
  const auto c = run(5, 2);
  CHECK(to_json(c).dump() == to_json(run(5, 2)).dump());

  std::size_t covered = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) covered += run(seed, 1).contains(0.5) ? 1 : 0;
  CHECK(covered >= 186);
}

TEST_CASE("Hoeffding half-width") {
  CHECK(hoeffding_half_width(10000, 0.95) == doctest::Approx(std::sqrt(std::log(2 / 0.05) / 20000)));
}

TEST_CASE("property: omega intervals converge to the exact Muller probability") {
  testgen::Rng rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    const auto chain = testgen::random_chain(rng, {1, 10, 3, 0.2});
    const auto prod = product(chain, testgen::random_automaton(rng));
    const auto mu = testgen::random_initial(rng, chain.states().size());
    SchemeOptions o;
    o.eps = 1e-6;
    const auto r = quant_omega_attractor(prod, mu, all_states(prod.chain()), DecisivenessEvidence::finite_chain(),
                                         Estimator::exact(), o);
    const double oracle = muller_probability_exact(prod, lift_initial(prod, mu)).get_d();
    CHECK(r.status == Status::Converged);
    CHECK(r.lo <= oracle + 1e-12);
    CHECK(oracle <= r.hi + 1e-12);
  }
}

TEST_CASE("unfair chain with assumed decisiveness diverges from the true value") {
  const auto chain = unfair_chain();
  const auto target = StateSet::of({0});
  ExplorationScope scope{{state(0)}, 30};
  const auto avoid = avoid_set(chain, target, scope);
  const auto twice = avoid_set(chain, avoid.set, scope);
  SchemeOptions o;
  o.eps = 1e-3;
  o.budget = 2000;
  const auto r = approx_repeated(chain, Distribution::dirac(state(0)), target, avoid, twice,
                                 DecisivenessEvidence::assumed("unverified"), Estimator::floating(), o);
  CHECK(r.tainted());
  // P(G F b) is 0 but the interval keeps 1.
  CHECK(r.hi == doctest::Approx(1.0));
  CHECK_FALSE(r.contains(0.0));
}

TEST_CASE("monte carlo needs a tail to stop short of the horizon") {
  const auto walk = random_walk(Rational(2, 3));
  auto estimator = Estimator::monte_carlo(2000, 0.99, 1, 1);
  estimator.tail = [](StateId s) { return walk_ruin_tail(Rational(2, 3), s); };
  SchemeOptions o;
  o.eps = 0.2;
  o.budget = 2000;
  const auto r = approx_reach(walk, Distribution::dirac(state(1)), StateSet::of({0}), avoid_set(walk, StateSet::of({0})),
                              DecisivenessEvidence::not_required("tail closes truncated runs"), estimator, o);
  CHECK(r.contains(0.5));
  CHECK(r.status == Status::Converged);
}
