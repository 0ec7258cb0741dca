#pragma once

#include <optional>
#include <string>
#include <vector>

#include "decisive/core/markov_chain.hpp"
#include "decisive/core/state_set.hpp"

namespace decisive {

// Where a countable chain may be explored: seeds plus a depth. The depth
// defaults to the closure certificate carried by the query set.
struct ExplorationScope {
  std::vector<StateId> seeds;
  std::optional<std::size_t> depth;
};

// B̃ = {s : B is unreachable from s}.
struct AvoidSet {
  enum class Provenance { ExactFiniteGraph, BoundedExploration, ChainCertificate, UserSupplied };

  StateSet set;
  Provenance provenance = Provenance::ExactFiniteGraph;
  std::optional<std::size_t> depth;
  std::string note;
};

std::string to_string(AvoidSet::Provenance provenance);

// Exact on finite chains. On countable chains, needs either an
// irreducibility certificate on the chain or a depth (scope or set
// certificate); otherwise CertificateRequired.
AvoidSet avoid_set(const MarkovChain& chain, const StateSet& target, const ExplorationScope& scope = {});

// avoid_set(avoid_set(B)).
AvoidSet double_avoid_set(const MarkovChain& chain, const StateSet& target, const ExplorationScope& scope = {});

// A user-provided avoid-set. The sink property and disjointness from B are
// validated on finite chains, on explicit candidates, and on the explored
// region of countable chains; a violation is InvalidArgument.
AvoidSet user_avoid_set(const MarkovChain& chain, const StateSet& target, StateSet candidate,
                        const ExplorationScope& scope = {}, std::string note = {});

// First state of `states` with a successor outside `set`, if any.
std::optional<StateId> sink_violation(const MarkovChain& chain, const StateSet& set, const std::vector<StateId>& states);

struct AttractorCheck {
  bool holds = false;
  // False when only a necessary condition was checked on a bounded region.
  bool conclusive = false;
  std::string justification;
};

// P_μ(F A) = 1 for μ supported on `from` (every state when empty). Finite
// chains are decided exactly; countable chains get the bounded necessary
// condition, and sufficiency stays the caller's obligation.
AttractorCheck check_attractor(const MarkovChain& chain, const StateSet& attractor,
                               const std::vector<StateId>& from = {}, const ExplorationScope& scope = {});

bool is_attractor(const MarkovChain& chain, const StateSet& attractor, const std::vector<StateId>& from = {},
                  const ExplorationScope& scope = {});

// Bottom SCCs of a finite chain, each sorted, ordered by least state.
std::vector<std::vector<StateId>> bsccs(const MarkovChain& chain);

// x_s = P_s(G F B) on a finite chain, aligned with chain.states().
template <class T>
std::vector<T> exact_repeated_finite(const MarkovChain& chain, const StateSet& target);

}  // namespace decisive
