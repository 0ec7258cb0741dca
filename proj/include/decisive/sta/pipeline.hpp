#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "decisive/abstraction/abstraction.hpp"
#include "decisive/omega/muller.hpp"
#include "decisive/qualitative/verdict.hpp"
#include "decisive/quantitative/result.hpp"
#include "decisive/quantitative/scheme.hpp"
#include "decisive/sta/thick_graph.hpp"

namespace decisive::sta {

// One configuration of a finite initial mixture.
struct Atom {
  Configuration config;
  Rational weight = 1;
};

// "l0:x=0,y=0.5@1/2;l1:x=1@1/2". Omitted clocks are 0; the weight defaults
// to 1; weights must sum to 1. An empty string is the initial configuration.
std::vector<Atom> parse_atoms(const StaModel& sta, const std::string& text);
std::vector<Atom> initial_atoms(const StaModel& sta);

std::vector<Configuration> configurations(const std::vector<Atom>& atoms);
// α_#(μ) on the thick graph.
Distribution abstract_initial(const ThickGraph& graph, const std::vector<Atom>& atoms);

// Upper bound on the probability of reaching the target from a
// configuration; closes off truncated sample paths.
using ConfigTail = std::function<double(const Configuration&)>;

struct StaVerdict {
  Classification cls;
  OmegaVerdict omega;
  std::vector<std::string> evidence_chain;
};

// Almost-sure satisfaction of the Muller condition, decided on the product
// of the thick graph with the automaton. Refused for the General class.
StaVerdict sta_check_qualitative(const StaModel& sta, const MullerAutomaton& dma,
                                 const std::vector<Atom>& atoms = {});

nlohmann::json to_json(const StaVerdict& verdict);

// P(Inf ∈ F) by simulation: good BSCCs come from the abstract product and
// sampled runs are classified through α. The estimator must be Monte Carlo.
ApproxResult sta_approx_quantitative(const StaModel& sta, const std::vector<Atom>& atoms, const MullerAutomaton& dma,
                                     const Estimator& estimator, const SchemeOptions& options,
                                     const ConfigTail& tail = {});

// Closed time window.
struct TimeWindow {
  double lo = 0.0;
  double hi = 0.0;
};

// F_I B for a set of locations, observed at jump epochs. Reactive models
// carry non-Zeno evidence; otherwise `declared_non_zeno` must hold the
// justification. Runs whose time reaches sup I + 1 are "No".
ApproxResult sta_time_bounded(const StaModel& sta, const std::vector<Atom>& atoms,
                              const std::vector<std::size_t>& locations, TimeWindow window,
                              const Estimator& estimator, const SchemeOptions& options,
                              const std::optional<std::string>& declared_non_zeno = std::nullopt);

// P(F α^{-1}(target)) by simulation for a set of thick-graph states.
ApproxResult sta_reach_estimate(const StaModel& sta, const ThickGraph& graph, const std::vector<Atom>& atoms,
                                const StateSet& target, const Estimator& estimator, const SchemeOptions& options,
                                const ConfigTail& tail = {});

// Abstract targets reached almost surely in the thick graph but with a
// concrete upper bound below 1. The default catalogue is used when empty.
std::optional<AbstractWitness> sta_witness_search(const StaModel& sta, const ThickGraph& graph,
                                                  const std::vector<Atom>& atoms, std::vector<StateSet> catalogue,
                                                  const Estimator& estimator, const SchemeOptions& options,
                                                  const ConfigTail& tail = {});

// Upper bound on P(F l2) in the pacman automaton: each return to l0 halves
// the expected distance of y to 1, so 2(1 - y) bounds the sum of the
// right-loop probabilities from l0.
double pacman_tail(const Configuration& config);

}  // namespace decisive::sta
