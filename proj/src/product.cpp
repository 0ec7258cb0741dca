#include "decisive/omega/product.hpp"

#include "decisive/core/graph.hpp"
#include "decisive/core/measures.hpp"
#include "decisive/error.hpp"

namespace decisive {

ProductChain::ProductChain(MarkovChain factor, MullerAutomaton dma)
    : factor_(std::move(factor)), dma_(dma.over_alphabet(factor_.ap())), chain_(factor_) {
  const auto width = static_cast<std::int64_t>(dma_.size());
  const MarkovChain base = factor_;
  const MullerAutomaton automaton = dma_;
  auto step = [base, automaton, width](StateId pair) {
    const StateId s{pair.value / width};
    const auto q = static_cast<std::size_t>(pair.value % width);
    const std::size_t next = automaton.next(q, base.label(s));
    std::vector<Distribution::Entry> entries;
    for (const auto& e : base.successors(s).entries()) {
      entries.push_back({StateId{e.state.value * width + static_cast<std::int64_t>(next)}, e.prob});
    }
    return Distribution::from_entries(std::move(entries));
  };
  auto label = [width](StateId pair) { return LabelSet{1} << (pair.value % width); };
  auto name = [base, automaton, width](StateId pair) {
    return "(" + base.name(StateId{pair.value / width}) + "," +
           automaton.locations()[static_cast<std::size_t>(pair.value % width)] + ")";
  };

  if (factor_.is_finite()) {
    std::vector<StateId> states;
    std::vector<Distribution> rows;
    std::vector<LabelSet> labels;
    std::vector<std::string> names;
    for (auto s : factor_.states()) {
      if (s.value < 0) fail(ErrorKind::InvalidModel, "product encoding needs nonnegative state ids");
      for (std::size_t q = 0; q < dma_.size(); ++q) {
        const StateId pair{s.value * width + static_cast<std::int64_t>(q)};
        states.push_back(pair);
        rows.push_back(step(pair));
        labels.push_back(label(pair));
        names.push_back(name(pair));
      }
    }
    chain_ = MarkovChain::finite(dma_.locations(), std::move(states), std::move(rows), std::move(labels),
                                 std::move(names));
  } else {
    auto valid = [base, width](StateId pair) {
      return pair.value >= 0 && base.has_state(StateId{pair.value / width});
    };
    chain_ = MarkovChain::lazy(dma_.locations(), step, label, valid, name);
  }
}

StateId ProductChain::encode(StateId s, std::size_t q) const {
  if (s.value < 0 || q >= dma_.size()) fail(ErrorKind::InvalidArgument, "cannot encode pair state");
  return StateId{s.value * static_cast<std::int64_t>(dma_.size()) + static_cast<std::int64_t>(q)};
}

std::pair<StateId, std::size_t> ProductChain::decode(StateId pair) const {
  const auto width = static_cast<std::int64_t>(dma_.size());
  return {StateId{pair.value / width}, static_cast<std::size_t>(pair.value % width)};
}

std::string ProductChain::name(StateId pair) const { return chain_.name(pair); }

ProductChain product(const MarkovChain& chain, const MullerAutomaton& dma) { return ProductChain(chain, dma); }

Rational muller_probability_exact(const ProductChain& prod, const Distribution& mu) {
  const MarkovChain& chain = prod.chain();
  if (!chain.is_finite()) fail(ErrorKind::InvalidArgument, "exact Muller probability needs a finite product");
  const auto& states = chain.states();
  std::vector<StateId> good;
  for (const auto& component : bottom_components(support_graph(chain))) {
    LocationMask mask = 0;
    for (auto i : component) mask |= LocationMask{1} << prod.decode(states[i]).second;
    if (prod.automaton().accepts(mask)) {
      for (auto i : component) good.push_back(states[i]);
    }
  }
  if (good.empty()) return Rational(0);
  return exact_reachability_from<Rational>(chain, mu, StateSet::of(std::move(good)));
}

}  // namespace decisive
