#pragma once

#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "decisive/core/distribution.hpp"
#include "decisive/core/explorer.hpp"
#include "decisive/core/markov_chain.hpp"
#include "decisive/core/path_formula.hpp"

namespace decisive {

template <class T>
SparseDistribution<T> row_as(const MarkovChain& chain, StateId s) {
  return chain.successors(s).template convert<T>();
}

// Ω(μ): one application of the kernel.
template <class T>
SparseDistribution<T> step_transform(const MarkovChain& chain, const SparseDistribution<T>& mu) {
  DistributionBuilder<T> next;
  for (const auto& e : mu.entries()) {
    const auto row = row_as<T>(chain, e.state);
    for (const auto& f : row.entries()) next.add(f.state, e.prob * f.prob);
  }
  return next.build();
}

// μ restricted to A (not renormalized).
template <class T>
SparseDistribution<T> restrict_to(const SparseDistribution<T>& mu, const StateSet& set) {
  std::vector<typename SparseDistribution<T>::Entry> kept;
  for (const auto& e : mu.entries()) {
    if (set.contains(e.state)) kept.push_back(e);
  }
  return SparseDistribution<T>::from_entries(std::move(kept));
}

template <class T>
T cylinder_probability(const MarkovChain& chain, const SparseDistribution<T>& mu, const std::vector<StateSet>& sets) {
  if (sets.empty()) fail(ErrorKind::InvalidArgument, "cylinder needs at least one set");
  SparseDistribution<T> nu = restrict_to(mu, sets.front());
  for (std::size_t i = 1; i < sets.size() && !nu.empty(); ++i) {
    nu = restrict_to(step_transform(chain, nu), sets[i]);
  }
  return nu.mass();
}

// μ_A(B) = μ(A ∩ B) / μ(A).
template <class T>
SparseDistribution<T> conditional(const SparseDistribution<T>& mu, const StateSet& set) {
  const auto kept = restrict_to(mu, set);
  const T mass = kept.mass();
  if (Numeric<T>::is_zero(mass)) fail(ErrorKind::ZeroMass, "conditioning on a set of measure zero");
  std::vector<typename SparseDistribution<T>::Entry> entries;
  for (const auto& e : kept.entries()) entries.push_back({e.state, T(e.prob / mass)});
  return SparseDistribution<T>::from_entries(std::move(entries));
}

// Probability of a bounded path formula by forward propagation over
// (state, residual obligation) pairs. Mass is absorbed as soon as the
// residual is decided.
template <class T>
T bounded_event_probability(const MarkovChain& chain, const SparseDistribution<T>& mu, const PathFormula& phi,
                            std::size_t horizon) {
  const std::size_t depth = temporal_depth(phi);
  if (depth > horizon) {
    fail(ErrorKind::InvalidArgument, "formula inspects " + std::to_string(depth) + " steps, horizon is " +
                                         std::to_string(horizon));
  }
  FormulaProgression progression;
  const int root = progression.compile(phi);
  ExploredChain<T> explored(chain);
  std::map<std::pair<std::size_t, int>, T> frontier;
  for (const auto& e : mu.entries()) frontier[{explored.index(e.state), root}] += e.prob;
  T accepted = Numeric<T>::zero();
  for (std::size_t position = 0; position <= depth + 1 && !frontier.empty(); ++position) {
    std::map<std::pair<std::size_t, int>, T> next;
    for (const auto& [key, weight] : frontier) {
      const int residual = progression.progress(key.second, explored.state(key.first));
      if (residual == FormulaProgression::kTrue) {
        accepted += weight;
      } else if (residual != FormulaProgression::kFalse) {
        for (const auto& [j, p] : explored.row(key.first)) next[{j, residual}] += weight * p;
      }
    }
    frontier = std::move(next);
  }
  if (!frontier.empty()) fail(ErrorKind::InvalidArgument, "formula residual undecided past its depth");
  return accepted;
}

// x_s = P_s(B' U B) for every state of a finite chain, aligned with
// chain.states(). Solves the linear system on the states that can reach B
// through B' (outside B), by sparse elimination without pivoting: the
// restricted matrix I - P is a nonsingular M-matrix there.
template <class T>
std::vector<T> exact_until_finite(const MarkovChain& chain, const StateSet& allowed, const StateSet& target);

template <class T>
std::vector<T> exact_reachability_finite(const MarkovChain& chain, const StateSet& target) {
  return exact_until_finite<T>(chain, StateSet::everything(), target);
}

// P_μ(F B) on a finite chain.
template <class T>
T exact_reachability_from(const MarkovChain& chain, const SparseDistribution<T>& mu, const StateSet& target) {
  const auto values = exact_reachability_finite<T>(chain, target);
  T total = Numeric<T>::zero();
  for (const auto& e : mu.entries()) total += e.prob * values[chain.index_of(e.state)];
  return total;
}

extern template std::vector<Rational> exact_until_finite<Rational>(const MarkovChain&, const StateSet&,
                                                                   const StateSet&);
extern template std::vector<double> exact_until_finite<double>(const MarkovChain&, const StateSet&, const StateSet&);

}  // namespace decisive
