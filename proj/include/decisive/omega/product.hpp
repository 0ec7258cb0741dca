#pragma once

#include <utility>

#include "decisive/core/distribution.hpp"
#include "decisive/core/markov_chain.hpp"
#include "decisive/omega/muller.hpp"

namespace decisive {

// T ⋉ M over pair states encoded as s * |Q| + q. The product is labelled by
// automaton location: proposition i of the product holds in (s, q) iff i = q.
class ProductChain {
 public:
  ProductChain(MarkovChain factor, MullerAutomaton dma);

  const MarkovChain& chain() const { return chain_; }
  const MarkovChain& factor() const { return factor_; }
  const MullerAutomaton& automaton() const { return dma_; }

  StateId encode(StateId s, std::size_t q) const;
  std::pair<StateId, std::size_t> decode(StateId pair) const;
  std::string name(StateId pair) const;

 private:
  MarkovChain factor_;
  MullerAutomaton dma_;
  MarkovChain chain_;
};

ProductChain product(const MarkovChain& chain, const MullerAutomaton& dma);

// μ × δ_{q0}.
template <class T>
SparseDistribution<T> lift_initial(const ProductChain& prod, const SparseDistribution<T>& mu) {
  std::vector<typename SparseDistribution<T>::Entry> entries;
  for (const auto& e : mu.entries()) entries.push_back({prod.encode(e.state, prod.automaton().initial()), e.prob});
  return SparseDistribution<T>::from_entries(std::move(entries));
}

// P(Inf ∈ F) on a finite product, as the sum over product BSCCs whose
// location projection is in F of the exact probability to reach them.
Rational muller_probability_exact(const ProductChain& prod, const Distribution& mu);

}  // namespace decisive
