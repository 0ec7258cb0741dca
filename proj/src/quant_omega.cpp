#include "decisive/quantitative/omega.hpp"

#include <algorithm>

#include "decisive/error.hpp"

namespace decisive {

ClassId ProductClassification::classify(StateId s) const {
  auto it = good_class.find(s);
  if (it != good_class.end()) return it->second;
  if (no.try_contains(s).value_or(false)) return kNo;
  return kUndecided;
}

std::vector<std::string> ProductClassification::class_names(const ProductChain& prod) const {
  std::vector<std::string> names;
  for (auto c : good) {
    std::string name = "{";
    bool first = true;
    for (auto s : graph.bscc_states(c)) {
      name += (first ? "" : ",") + prod.name(s);
      first = false;
    }
    names.push_back(name + "}");
  }
  return names;
}

ProductClassification classify_product(const ProductChain& prod, const StateSet& attractor,
                                       const ExplorationScope& scope) {
  ProductClassification out;
  out.graph = attractor_graph(prod, attractor, scope);
  out.good = good_bsccs(out.graph, prod.automaton());
  std::vector<StateId> yes;
  for (std::size_t k = 0; k < out.good.size(); ++k) {
    for (auto s : out.graph.bscc_states(out.good[k])) {
      yes.push_back(s);
      out.good_class[s] = static_cast<ClassId>(k + 1);
    }
  }
  out.yes = StateSet::of(yes);
  if (prod.chain().is_finite()) {
    out.no = avoid_set(prod.chain(), out.yes).set;
    out.no_provenance = "exact avoid-set of the good BSCCs";
  } else {
    // A bad BSCC of the attractor graph only leads back to itself.
    std::vector<StateId> bad;
    for (std::size_t c = 0; c < out.graph.bsccs.size(); ++c) {
      if (std::find(out.good.begin(), out.good.end(), c) != out.good.end()) continue;
      for (auto s : out.graph.bscc_states(c)) bad.push_back(s);
    }
    out.no = StateSet::of(bad);
    out.no_provenance = "bad BSCCs of the attractor graph";
  }
  return out;
}

ApproxResult quant_omega_attractor(const ProductChain& prod, const Distribution& mu, const StateSet& attractor,
                                   const DecisivenessEvidence& evidence, const Estimator& estimator,
                                   const SchemeOptions& options, const ExplorationScope& scope) {
  const ProductClassification table = classify_product(prod, attractor, scope);
  Classifier classify;
  classify.fn = [&table](StateId s, std::size_t) { return table.classify(s); };
  classify.yes_classes = std::max<std::size_t>(1, table.good.size());
  classify.class_names = table.class_names(prod);
  ApproxResult out = run_scheme(prod.chain(), lift_initial(prod, mu), classify, estimator, options);
  if (table.good.empty()) out.class_lo.clear();
  out.property = "Inf in F";
  out.evidence = evidence;
  out.notes.push_back("attractor graph: " + std::to_string(table.graph.vertices.size()) + " states, " +
                      std::to_string(table.graph.bsccs.size()) + " BSCCs, " + std::to_string(table.good.size()) +
                      " good");
  out.notes.push_back("No set: " + table.no_provenance);
  return out;
}

ApproxResult quant_omega_abstraction(const AbstractionHandle& handle, const ProductChain& concrete,
                                     const ProductChain& abstract, const Distribution& mu,
                                     const Estimator& estimator, const SchemeOptions& options) {
  if (handle.soundness() != Soundness::Certified && handle.soundness() != Soundness::AssumedOverride) {
    fail(ErrorKind::Refused, "abstraction pipeline needs a sound product abstraction (soundness " +
                                 to_string(handle.soundness()) + ")");
  }
  if (!abstract.chain().is_finite()) fail(ErrorKind::InvalidArgument, "abstract product must be finite");
  const ProductClassification table = classify_product(abstract, all_states(abstract.chain()));
  const AlphaMap& alpha = handle.alpha();
  Classifier classify;
  classify.fn = [&table, &alpha](StateId s, std::size_t) { return table.classify(alpha(s)); };
  classify.yes_classes = std::max<std::size_t>(1, table.good.size());
  classify.class_names = table.class_names(abstract);
  ApproxResult out = run_scheme(concrete.chain(), lift_initial(concrete, mu), classify, estimator, options);
  if (table.good.empty()) out.class_lo.clear();
  out.property = "Inf in F";
  out.evidence = handle.decisiveness_evidence();
  out.notes.push_back("abstract product: " + std::to_string(table.good.size()) + " good BSCCs of " +
                      std::to_string(table.graph.bsccs.size()));
  out.notes.push_back("concrete classified through " + alpha.name());
  return out;
}

}  // namespace decisive
