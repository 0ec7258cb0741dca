#include "decisive/core/markov_chain.hpp"

#include <sstream>

#include "decisive/error.hpp"

namespace decisive {

struct MarkovChain::Impl {
  bool finite = true;
  std::vector<std::string> ap;
  // Finite representation.
  std::vector<StateId> states;
  std::unordered_map<StateId, std::size_t> index;
  std::vector<Distribution> rows;
  std::vector<LabelSet> labels;
  std::vector<std::string> names;
  // Lazy representation.
  SuccessorFn successors;
  LabelFn label;
  ValidFn valid;
  NameFn name;
  ChainCertificate certificate;
};

std::string format_distribution(const Distribution& d) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& e : d.entries()) {
    if (!first) out << ", ";
    first = false;
    out << e.state.value << ": " << format_rational(e.prob);
  }
  out << '}';
  return out.str();
}

MarkovChain MarkovChain::finite(std::vector<std::string> ap, std::vector<StateId> states,
                                std::vector<Distribution> rows, std::vector<LabelSet> labels,
                                std::vector<std::string> names) {
  if (ap.size() > kMaxPropositions) fail(ErrorKind::InvalidModel, "too many atomic propositions");
  if (rows.size() != states.size()) fail(ErrorKind::InvalidModel, "one kernel row per state is required");
  if (labels.empty()) labels.assign(states.size(), 0);
  if (labels.size() != states.size()) fail(ErrorKind::InvalidModel, "one label set per state is required");
  if (!names.empty() && names.size() != states.size()) fail(ErrorKind::InvalidModel, "one name per state is required");

  auto impl = std::make_shared<Impl>();
  impl->finite = true;
  impl->ap = std::move(ap);
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!impl->index.emplace(states[i], i).second) {
      fail(ErrorKind::InvalidModel, "duplicate state " + std::to_string(states[i].value));
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].require_probability("kernel row of state " + std::to_string(states[i].value));
    for (const auto& e : rows[i].entries()) {
      if (!impl->index.count(e.state)) {
        fail(ErrorKind::InvalidModel, "state " + std::to_string(states[i].value) + " has undeclared successor " +
                                          std::to_string(e.state.value));
      }
    }
  }
  impl->states = std::move(states);
  impl->rows = std::move(rows);
  impl->labels = std::move(labels);
  impl->names = std::move(names);
  return MarkovChain(std::move(impl));
}

MarkovChain MarkovChain::lazy(std::vector<std::string> ap, SuccessorFn successors, LabelFn label, ValidFn valid,
                              NameFn name, ChainCertificate certificate) {
  if (ap.size() > kMaxPropositions) fail(ErrorKind::InvalidModel, "too many atomic propositions");
  auto impl = std::make_shared<Impl>();
  impl->finite = false;
  impl->ap = std::move(ap);
  impl->successors = std::move(successors);
  impl->label = label ? std::move(label) : LabelFn([](StateId) { return LabelSet{0}; });
  impl->valid = valid ? std::move(valid) : ValidFn([](StateId) { return true; });
  impl->name = std::move(name);
  impl->certificate = std::move(certificate);
  return MarkovChain(std::move(impl));
}

bool MarkovChain::is_finite() const { return impl_->finite; }

const std::vector<StateId>& MarkovChain::states() const {
  if (!impl_->finite) fail(ErrorKind::InvalidArgument, "states() requires a finite chain");
  return impl_->states;
}

std::size_t MarkovChain::index_of(StateId s) const {
  if (!impl_->finite) fail(ErrorKind::InvalidArgument, "index_of() requires a finite chain");
  auto it = impl_->index.find(s);
  if (it == impl_->index.end()) fail(ErrorKind::UnknownState, "unknown state " + std::to_string(s.value));
  return it->second;
}

bool MarkovChain::has_state(StateId s) const {
  if (impl_->finite) return impl_->index.count(s) > 0;
  return impl_->valid(s);
}

Distribution MarkovChain::successors(StateId s) const {
  if (impl_->finite) return impl_->rows[index_of(s)];
  if (!impl_->valid(s)) fail(ErrorKind::UnknownState, "unknown state " + std::to_string(s.value));
  return impl_->successors(s);
}

const Distribution& MarkovChain::row(std::size_t index) const {
  if (!impl_->finite) fail(ErrorKind::InvalidArgument, "row() requires a finite chain");
  return impl_->rows.at(index);
}

LabelSet MarkovChain::label(StateId s) const {
  if (impl_->finite) return impl_->labels[index_of(s)];
  if (!impl_->valid(s)) fail(ErrorKind::UnknownState, "unknown state " + std::to_string(s.value));
  return impl_->label(s);
}

std::string MarkovChain::name(StateId s) const {
  if (impl_->finite) {
    const auto i = index_of(s);
    return impl_->names.empty() ? std::to_string(s.value) : impl_->names[i];
  }
  return impl_->name ? impl_->name(s) : std::to_string(s.value);
}

const std::vector<std::string>& MarkovChain::ap() const { return impl_->ap; }

std::optional<std::size_t> MarkovChain::ap_index(const std::string& proposition) const {
  for (std::size_t i = 0; i < impl_->ap.size(); ++i) {
    if (impl_->ap[i] == proposition) return i;
  }
  return std::nullopt;
}

const ChainCertificate& MarkovChain::certificate() const { return impl_->certificate; }

StateSet all_states(const MarkovChain& chain) { return StateSet::of(chain.states()); }

}  // namespace decisive
