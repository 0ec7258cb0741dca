// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "decisive/abstraction/abstraction.hpp"
#include "decisive/core/families.hpp"
#include "decisive/core/measures.hpp"
#include "decisive/omega/product.hpp"
#include "decisive/qualitative/attractor_graph.hpp"
#include "decisive/qualitative/avoid.hpp"
#include "decisive/quantitative/omega.hpp"
#include "decisive/quantitative/scheme.hpp"
#include "decisive/sta/pipeline.hpp"
#include "decisive/sta/thick_graph.hpp"
#include "support.hpp"

using namespace decisive;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// x_i = P_i(F {0}) on the walk truncated at n with n absorbing, by the
// Thomas algorithm on -q x_{i-1} + x_i - p x_{i+1} = 0.
double truncated_ruin(double p, std::size_t n, std::size_t from) {
  const double q = 1.0 - p;
  std::vector<double> c(n + 1, 0.0), d(n + 1, 0.0), x(n + 1, 0.0);
  d[0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double denom = 1.0 + q * c[i - 1];
    c[i] = -p / denom;
    d[i] = q * d[i - 1] / denom;
  }
  for (std::size_t i = n; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x[from];
}

// Every (lo_n, hi_n) brackets the oracle and the sequences are adjacent.
std::size_t trace_violations(const ApproxResult& r, const Rational& oracle) {
  std::size_t bad = r.trace.empty() ? 1 : 0;
  for (std::size_t n = 0; n < r.trace.size(); ++n) {
    const auto& [lo, hi] = r.trace[n];
    if (!(lo <= oracle) || !(oracle <= hi)) ++bad;
    if (n > 0 && (r.trace[n - 1].first > lo || hi > r.trace[n - 1].second)) ++bad;
  }
  return bad;
}

SchemeOptions traced(double eps = 1e-9, std::size_t budget = 400) {
  SchemeOptions o;
  o.eps = eps;
  o.budget = budget;
  o.record_trace = true;
  return o;
}

Rational weighted(const Distribution& mu, const MarkovChain& chain, const std::vector<Rational>& values) {
  Rational total = 0;
  for (const auto& e : mu.entries()) total += e.prob * values[chain.index_of(e.state)];
  return total;
}

Outcome gamblers_ruin() {
  const auto start = std::chrono::steady_clock::now();
  const auto walk = random_walk(Rational(1, 3));
  SchemeOptions o;
  o.eps = 1e-3;
  const auto r = approx_reach(walk, Distribution::dirac(state(1)), StateSet::of({0}),
                              avoid_set(walk, StateSet::of({0})),
                              DecisivenessEvidence::finite_attractor(StateSet::of({0}), "drift towards 0", false),
                              Estimator::floating(), o);
  const double elapsed = seconds_since(start);
  const double oracle = truncated_ruin(1.0 / 3.0, 10000, 1);
  // The double-precision oracle may round a few ulps above 1.
  const bool brackets = r.lo <= oracle + 1e-12 && oracle <= r.hi + 1e-12;
  const bool pass = r.status == Status::Converged && r.contains(1.0) && brackets && elapsed < 5.0;
  return {pass, "[" + fmt(r.lo) + ", " + fmt(r.hi) + "] " + to_string(r.status) + " in " + fmt(elapsed) +
                    " s; truncated oracle " + fmt(oracle)};
}

Outcome non_decisive_walk() {
  const auto walk = random_walk(Rational(2, 3));
  SchemeOptions o;
  o.eps = 1e-3;
  o.budget = 10000;
  const auto r = approx_reach(walk, Distribution::dirac(state(1)), StateSet::of({0}),
                              avoid_set(walk, StateSet::of({0})), DecisivenessEvidence::assumed("walk with p=2/3"),
                              Estimator::floating(), o);
  const double closed_form = Rational(Rational(1, 3) / Rational(2, 3)).get_d();
  const double oracle = truncated_ruin(2.0 / 3.0, 10000, 1);
  const bool pass = r.status != Status::Converged && r.lo >= 0.499 && r.lo <= 0.501 &&
                    std::abs(closed_form - oracle) < 1e-12;
  return {pass, to_string(r.status) + " after " + std::to_string(r.iterations) + " iterations, p_n^Yes = " +
                    fmt(r.lo) + ", residual gap " + fmt(r.gap()) + "; oracle " + fmt(closed_form) + " / " + fmt(oracle)};
}

Outcome finite_exactness() {
  const auto start = std::chrono::steady_clock::now();
  testgen::Rng rng(1003);
  const auto evidence = DecisivenessEvidence::finite_chain();
  std::size_t violations = 0;
  std::size_t iterations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto chain = testgen::random_chain(rng, {1, 20, 3, 0.2});
    const auto n = chain.states().size();
    const auto mu = testgen::random_initial(rng, n);
    const auto target = testgen::random_set(rng, n);
    const auto avoid = avoid_set(chain, target);
    const auto reach = approx_reach(chain, mu, target, avoid, evidence, Estimator::exact(), traced());
    violations += trace_violations(reach, exact_reachability_from(chain, mu, target));
    const auto repeated = approx_repeated(chain, mu, target, avoid, avoid_set(chain, avoid.set), evidence,
                                          Estimator::exact(), traced());
    violations += trace_violations(repeated, weighted(mu, chain, exact_repeated_finite<Rational>(chain, target)));
    iterations += reach.trace.size() + repeated.trace.size();
  }
  const double elapsed = seconds_since(start);
  return {violations == 0 && elapsed < 30.0, std::to_string(violations) + " violations over " +
                                                 std::to_string(iterations) + " iterations in " + fmt(elapsed) + " s"};
}

Outcome muller_decomposition() {
  testgen::Rng rng(1004);
  std::size_t mismatches = 0;
  std::size_t unconverged = 0;
  std::size_t largest = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto chain = testgen::random_chain(rng, {1, 10, 3, 0.2});
    const auto prod = product(chain, testgen::random_automaton(rng));
    largest = std::max(largest, prod.chain().states().size());
    const auto mu = testgen::random_initial(rng, chain.states().size());
    const auto lifted = lift_initial(prod, mu);
    const auto graph = attractor_graph(prod, all_states(prod.chain()));
    std::vector<StateId> good;
    for (auto c : good_bsccs(graph, prod.automaton())) {
      for (auto s : graph.bscc_states(c)) good.push_back(s);
    }
    const Rational exact = muller_probability_exact(prod, lifted);
    if (exact_reachability_from(prod.chain(), lifted, StateSet::of(good)) != exact) ++mismatches;
    SchemeOptions o;
    o.eps = 1e-6;
    const auto r = quant_omega_attractor(prod, mu, all_states(prod.chain()), DecisivenessEvidence::finite_chain(),
                                         Estimator::exact(), o);
    const double value = exact.get_d();
    if (r.status != Status::Converged || r.gap() > 1e-6 || r.lo > value + 1e-12 || value > r.hi + 1e-12) {
      ++unconverged;
    }
  }
  return {mismatches == 0 && unconverged == 0,
          std::to_string(mismatches) + " decomposition mismatches, " + std::to_string(unconverged) +
              " intervals off by more than 1e-6; products up to " + std::to_string(largest) + " states"};
}

struct WalkWitness {
  bool found = false;
  std::string report;
  std::string detail;
};

WalkWitness walk_witness(const Rational& p, std::size_t samples, std::uint64_t seed) {
  const auto walk = random_walk(p);
  AbstractionHandle handle(walk, three_state_abstraction(Rational(1, 2)), AlphaMap::walk_to_three_state());
  auto estimate = [&](const Distribution& mu, const StateSet& target) {
    auto e = Estimator::monte_carlo(samples, 0.99, seed, 1);
    if (target.is_explicit() && target.members() == std::vector<StateId>{state(0)}) {
      e.tail = [p](StateId s) { return walk_ruin_tail(p, s); };
    }
    SchemeOptions o;
    o.eps = 0.02;
    o.budget = 2000;
    return approx_reach(walk, mu, target, avoid_set(walk, target, {mu.support(), 20}),
                        DecisivenessEvidence::not_required("truncated runs stay inside the interval"), e, o);
  };
  const auto cex =
      soundness_witness_search(handle, Distribution::dirac(state(1)), default_catalogue(handle), estimate);
  WalkWitness out;
  out.found = cex.has_value();
  if (cex) {
    out.report = to_json(cex->concrete).dump();
    out.detail = "abstract P(F " + cex->abstract_target.description() + ") = " + format_rational(cex->abstract_value) +
                 ", concrete [" + fmt(cex->concrete.lo) + ", " + fmt(cex->concrete.hi) + "]";
  }
  return out;
}

constexpr std::size_t kWitnessSamples = 200000;

Outcome abstraction_dichotomy() {
  const auto unsound = walk_witness(Rational(2, 3), kWitnessSamples, 5);
  const auto sound = walk_witness(Rational(1, 3), kWitnessSamples, 5);

  AbstractionHandle handle(random_walk(Rational(1, 3)), three_state_abstraction(Rational(1, 2)),
                           AlphaMap::walk_to_three_state());
  ExplorationScope scope;
  scope.depth = 20;
  const auto report = check_abstraction(handle, 32, scope);
  const auto complete = certify_complete(handle);
  const bool pass = unsound.found && !sound.found && report.holds && complete.holds;
  return {pass, "p=2/3: " + (unsound.found ? unsound.detail : std::string("no counterexample")) +
                    "; p=1/3: " + (sound.found ? sound.detail : std::string("no counterexample")) +
                    "; check_abstraction " + (report.holds ? "holds" : "fails (" + report.detail + ")") +
                    "; certify_complete " + (complete.holds ? "holds" : "fails (" + complete.reason + ")")};
}

MarkovChain expected_pacman_graph() {
  // (l0,r0) -> (l1,r1), (l3,r3) with 1/2 each; then back to (l0,r0).
  const Rational half(1, 2);
  return MarkovChain::finite(
      {"b"}, {state(0), state(1), state(2), state(3), state(4)},
      {Distribution::from_entries({{state(1), half}, {state(3), half}}), Distribution::dirac(state(2)),
       Distribution::dirac(state(0)), Distribution::dirac(state(4)), Distribution::dirac(state(0))},
      {0, 0, 1, 0, 0});
}

constexpr std::size_t kPacmanSamples = 1000000;

ApproxResult pacman_estimate(std::uint64_t seed) {
  const auto model = sta::pacman();
  const auto graph = sta::thick_graph(model);
  std::vector<StateId> l2;
  for (std::size_t i = 0; i < graph.states().size(); ++i) {
    if (graph.states()[i].location == 2) l2.push_back(state(static_cast<std::int64_t>(i)));
  }
  SchemeOptions o;
  o.eps = 0.01;
  return sta::sta_reach_estimate(model, graph, sta::initial_atoms(model), StateSet::of(l2),
                                 Estimator::monte_carlo(kPacmanSamples, 0.99, seed, 1), o, sta::pacman_tail);
}

Outcome pacman_golden() {
  const auto model = sta::pacman();
  const auto graph = sta::thick_graph(model);
  const bool iso = sta::isomorphic(graph.chain(), expected_pacman_graph());
  std::string refusal = "no refusal";
  bool refused = false;
  try {
    const auto always = MullerAutomaton::build({"b"}, {"q"}, 0, {{0, 0, 0}, {0, 1, 0}}, {1});
    sta::sta_check_qualitative(model, always);
  } catch (const Error& e) {
    refusal = e.what();
    refused = e.kind() == ErrorKind::Refused && refusal.rfind("thick graph unsound: STA class General", 0) == 0;
  }
  const auto r = pacman_estimate(6);
  const bool below_one = r.hi < 1.0;
  return {iso && refused && below_one,
          "thick graph " + std::to_string(graph.states().size()) + " states vs 5, isomorphic: " + (iso ? "yes" : "no") +
              "; refusal: " + refusal + "; P(F l2) in [" + fmt(r.lo) + ", " + fmt(r.hi) + "] at 99% with " +
              std::to_string(kPacmanSamples) + " samples"};
}

// Property suites, 1000 cases each.

bool decomposition_case(testgen::Rng& rng) {
  const auto chain = testgen::random_chain(rng, {1, 20, 3, 0.2});
  const auto n = chain.states().size();
  const auto mu = testgen::random_initial(rng, n);
  std::vector<StateSet> sets;
  const std::size_t length = testgen::uniform_int(rng, 1, 5);
  for (std::size_t i = 0; i < length; ++i) sets.push_back(testgen::random_set(rng, n, n));
  const Rational whole = cylinder_probability(chain, mu, sets);
  // prefix_j = μ(A_0) Π_{i<=j} Ω(ν_{i-1})(A_i), with ν the successive conditionals.
  Rational prefix = mu.measure(sets[0]);
  if (prefix == 0) return whole == 0;
  Distribution nu = conditional(mu, sets[0]);
  for (std::size_t j = 0; j < length; ++j) {
    if (j > 0) {
      const auto moved = step_transform(chain, nu);
      const Rational m = moved.measure(sets[j]);
      prefix *= m;
      if (m == 0) return whole == 0;
      nu = conditional(moved, sets[j]);
    }
    Rational rest = 1;
    if (j + 1 < length) {
      rest = cylinder_probability(chain, step_transform(chain, nu), std::vector<StateSet>(sets.begin() + j + 1, sets.end()));
    }
    if (prefix * rest != whole) return false;
  }
  return true;
}

bool avoid_set_case(testgen::Rng& rng) {
  const auto chain = testgen::random_chain(rng, {1, 20, 3, 0.2});
  const auto n = chain.states().size();
  const auto target = testgen::random_set(rng, n);
  const auto avoid = avoid_set(chain, target).set;
  const auto reach = exact_reachability_finite<Rational>(chain, target);
  std::vector<StateId> inside;
  std::vector<StateId> outside;
  for (std::size_t i = 0; i < n; ++i) {
    const StateId s = chain.states()[i];
    (avoid.contains(s) ? inside : outside).push_back(s);
    // Item 2 on Dirac points, item 3 on the complement.
    if (avoid.contains(s) != (reach[i] == 0)) return false;
  }
  if (!inside.empty() && exact_reachability_from(chain, Distribution::uniform(inside), target) != 0) return false;
  const auto mu = testgen::random_initial(rng, n);
  if (mu.measure(set_complement(avoid)) > 0 && exact_reachability_from(chain, mu, target) == 0) return false;
  // Item 4: B̃ is a sink, and F B̃ and G F B̃ have the same probability.
  if (sink_violation(chain, avoid, chain.states())) return false;
  const Rational eventually = exact_reachability_from(chain, mu, avoid);
  if (eventually != weighted(mu, chain, exact_repeated_finite<Rational>(chain, avoid))) return false;
  // Item 5: F B ∨ F B̃ = F B ∨ (¬B U B̃), the right side split into disjoint events.
  const Rational either = exact_reachability_from(chain, mu, set_union(target, avoid));
  const Rational split = exact_reachability_from(chain, mu, target) +
                         weighted(mu, chain, exact_until_finite<Rational>(chain, set_complement(target), avoid));
  return either == split;
}

bool commutation_case(testgen::Rng& rng) {
  const auto r = testgen::random_refinement(rng);
  const auto target = testgen::random_set(rng, r.abstract.states().size());
  return avoid_set(r.concrete, testgen::preimage(r.alpha, target)).set ==
         testgen::preimage(r.alpha, avoid_set(r.abstract, target).set);
}

bool dirac_case(testgen::Rng& rng) {
  const auto r = testgen::random_refinement(rng);
  const auto alpha = AlphaMap::table(r.alpha);
  for (const auto& [c, a] : r.alpha) {
    if (!(pushforward(alpha, Distribution::dirac(c)) == Distribution::dirac(a))) return false;
  }
  const auto mu = testgen::random_initial(rng, r.concrete.states().size());
  const auto nu = pushforward(alpha, mu);
  for (auto a : r.abstract.states()) {
    if (nu.probability(a) != mu.measure(testgen::preimage(r.alpha, StateSet::of({a.value})))) return false;
  }
  return true;
}

bool adjacency_case(testgen::Rng& rng) {
  const auto chain = testgen::random_chain(rng, {1, 20, 3, 0.2});
  const auto n = chain.states().size();
  const auto mu = testgen::random_initial(rng, n);
  const auto target = testgen::random_set(rng, n);
  const auto r = approx_reach(chain, mu, target, avoid_set(chain, target), DecisivenessEvidence::finite_chain(),
                              Estimator::exact(), traced(1e-6, 200));
  return trace_violations(r, exact_reachability_from(chain, mu, target)) == 0;
}

Outcome property_suite() {
  const std::vector<std::pair<std::string, std::function<bool(testgen::Rng&)>>> suites{
      {"decomposition", decomposition_case}, {"avoid-set items 2-5", avoid_set_case},
      {"commutation", commutation_case},     {"pushforward Dirac law", dirac_case},
      {"adjacency", adjacency_case}};
  bool pass = true;
  std::string detail;
  std::uint64_t seed = 1007;
  for (const auto& [name, run] : suites) {
    testgen::Rng rng(seed++);
    std::size_t failed = 0;
    for (int k = 0; k < 1000; ++k) failed += run(rng) ? 0 : 1;
    pass = pass && failed == 0;
    if (!detail.empty()) detail += ", ";
    detail += name + " " + std::to_string(1000 - failed) + "/1000";
  }
  return {pass, detail};
}

Outcome unfair_guard() {
  // Probability of returning to b in one cycle: 1 - Π_{n>=1} (1 - 3^-n).
  long double survive = 1.0L;
  long double power = 1.0L;
  for (int n = 1; n <= 80; ++n) {
    power /= 3.0L;
    survive *= 1.0L - power;
  }
  const double cycle = static_cast<double>(1.0L - survive);

  const auto chain = unfair_chain();
  const auto b = StateSet::of({0});
  ExplorationScope scope{{state(0)}, 30};
  SchemeOptions o;
  o.eps = 1e-3;
  o.budget = 2000;
  const auto per_cycle = approx_reach(chain, Distribution::dirac(state(1)), b, avoid_set(chain, b, scope),
                                      DecisivenessEvidence::assumed("unverified"), Estimator::floating(), o);
  const auto avoid = avoid_set(chain, b, scope);
  const auto r = approx_repeated(chain, Distribution::dirac(state(0)), b, avoid, avoid_set(chain, avoid.set, scope),
                                 DecisivenessEvidence::assumed("unverified"), Estimator::floating(), o);
  const double oracle = 0.0;  // P(G F b): the cycle probabilities are summable.
  const double discrepancy = r.lo > oracle ? r.lo - oracle : oracle - r.hi;
  const bool cycle_matches = std::abs(per_cycle.lo - cycle) < 1e-9;
  const bool pass = r.tainted() && !r.contains(oracle) && std::abs(r.hi - 1.0) < 1e-9 && cycle_matches;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.13f", cycle);
  return {pass, std::string("tainted=") + (r.tainted() ? "yes" : "no") + ", interval [" + fmt(r.lo) + ", " + fmt(r.hi) +
                    "] vs oracle 0 (discrepancy " + fmt(std::abs(discrepancy)) + "); per-cycle return " +
                    buf + " vs scheme " + fmt(per_cycle.lo)};
}

ApproxResult exponential_window(double rate, double horizon, std::uint64_t seed) {
  const auto model = sta::exponential_jump(rate);
  SchemeOptions o;
  o.eps = 0.1;
  return sta::sta_time_bounded(model, sta::initial_atoms(model), {1}, sta::TimeWindow{0.0, horizon},
                               Estimator::monte_carlo(4000, 0.95, seed, 1), o);
}

Outcome time_bounded() {
  bool pass = true;
  std::string detail;
  for (auto [rate, horizon] : {std::pair{1.0, 1.0}, std::pair{2.0, 0.5}}) {
    const double truth = 1.0 - std::exp(-rate * horizon);
    std::size_t covered = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) covered += exponential_window(rate, horizon, seed).contains(truth);
    const double coverage = covered / 200.0;
    pass = pass && coverage >= 0.93;
    if (!detail.empty()) detail += "; ";
    detail += "(" + fmt(rate) + ", " + fmt(horizon) + "): coverage " + fmt(coverage) + " of " + fmt(truth);
  }
  return {pass, detail};
}

Outcome reproducibility() {
  const auto w1 = walk_witness(Rational(2, 3), kWitnessSamples, 5);
  const auto w2 = walk_witness(Rational(2, 3), kWitnessSamples, 5);
  const bool same5 = w1.found && w1.report == w2.report;
  const bool same6 = to_json(pacman_estimate(6)).dump() == to_json(pacman_estimate(6)).dump();
  bool same9 = true;
  for (std::uint64_t seed : {3u, 11u}) {
    same9 = same9 && to_json(exponential_window(1.0, 1.0, seed)).dump() ==
                         to_json(exponential_window(1.0, 1.0, seed)).dump();
    same9 = same9 && to_json(exponential_window(2.0, 0.5, seed)).dump() ==
                         to_json(exponential_window(2.0, 0.5, seed)).dump();
  }
  return {same5 && same6 && same9, std::string("criterion 5 ") + (same5 ? "identical" : "differs") + ", criterion 6 " +
                                       (same6 ? "identical" : "differs") + ", criterion 9 " +
                                       (same9 ? "identical" : "differs")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"gambler's ruin convergence", gamblers_ruin},
      {"non-decisiveness diagnosis", non_decisive_walk},
      {"finite exactness", finite_exactness},
      {"Muller decomposition", muller_decomposition},
      {"abstraction dichotomy", abstraction_dichotomy},
      {"pacman golden tests", pacman_golden},
      {"property suite", property_suite},
      {"unfair-chain guard", unfair_guard},
      {"time-bounded analytic check", time_bounded},
      {"reproducibility", reproducibility},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("threw: ") + e.what()};
    }
    std::printf("criterion %zu (%s): %s  %s  [%.1f s]\n", i + 1, criteria[i].first.c_str(), out.pass ? "PASS" : "FAIL",
                out.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
    failed += out.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
