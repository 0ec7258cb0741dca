#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "decisive/core/distribution.hpp"
#include "decisive/core/markov_chain.hpp"
#include "decisive/qualitative/avoid.hpp"
#include "decisive/qualitative/evidence.hpp"
#include "decisive/quantitative/result.hpp"

namespace decisive {

// Absorption class of a state at step n: undecided, "No", or the k-th
// "Yes" class (k >= 1).
using ClassId = int;
inline constexpr ClassId kUndecided = -1;
inline constexpr ClassId kNo = 0;
inline constexpr ClassId kYes = 1;

struct Classifier {
  std::function<ClassId(StateId, std::size_t)> fn;
  bool time_dependent = false;  // otherwise cached per state
  std::size_t yes_classes = 1;
  std::vector<std::string> class_names;
};

// How the terms P(... U<=n ...) are obtained.
struct Estimator {
  enum class Kind { Exact, Float, MonteCarlo };

  Kind kind = Kind::Float;
  std::size_t samples = 100000;
  double confidence = 0.99;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  // Upper bound on the probability of reaching a "Yes" state from a given
  // state; used to close off truncated sample paths.
  std::function<double(StateId)> tail;
  double tail_cutoff = 1e-9;

  static Estimator exact() {
    Estimator e;
    e.kind = Kind::Exact;
    return e;
  }
  static Estimator floating() { return Estimator{}; }
  static Estimator monte_carlo(std::size_t samples, double confidence, std::uint64_t seed, unsigned threads = 1);
};

std::string to_string(Estimator::Kind kind);

struct SchemeOptions {
  double eps = 1e-6;
  std::size_t budget = 10000;
  std::size_t stall_window = 50;
  double stall_tolerance = 1e-12;
  bool record_trace = false;
};

// Single forward frontier: mass moves until absorbed in a "Yes" or "No"
// class. lo_n is the absorbed Yes mass, hi_n is 1 minus the absorbed No
// mass. In floating mode entries below the prune threshold are dropped and
// stay inside the gap.
ApproxResult run_scheme(const MarkovChain& chain, const Distribution& mu, const Classifier& classify,
                        const Estimator& estimator, const SchemeOptions& options);

// [P(F<=n B), 1 - P(!B U<=n B̃)].
ApproxResult approx_reach(const MarkovChain& chain, const Distribution& mu, const StateSet& target,
                          const AvoidSet& avoid, const DecisivenessEvidence& evidence, const Estimator& estimator,
                          const SchemeOptions& options);

// B' U B: the No class is B̃ ∪ ¬B'.
ApproxResult approx_until(const MarkovChain& chain, const Distribution& mu, const StateSet& allowed,
                          const StateSet& target, const AvoidSet& avoid, const DecisivenessEvidence& evidence,
                          const Estimator& estimator, const SchemeOptions& options);

// [P(F<=n B̃̃), 1 - P(F<=n B̃)].
ApproxResult approx_repeated(const MarkovChain& chain, const Distribution& mu, const StateSet& target,
                             const AvoidSet& avoid, const AvoidSet& double_avoid,
                             const DecisivenessEvidence& evidence, const Estimator& estimator,
                             const SchemeOptions& options);

// Closed time window [lo, hi] in steps; the time coordinate is the step count.
struct StepWindow {
  std::size_t lo = 0;
  std::size_t hi = 0;
  bool empty = false;
};

// F_I B on a discrete-time chain whose clock is the step counter. States
// past sup I form the time attractor and are "No".
ApproxResult time_bounded_reach(const MarkovChain& chain, const Distribution& mu, const StateSet& target,
                                const AvoidSet& avoid, StepWindow window, const DecisivenessEvidence& evidence,
                                const Estimator& estimator, const SchemeOptions& options);

}  // namespace decisive
