#pragma once

#include <unordered_map>

#include "decisive/abstraction/abstraction.hpp"
#include "decisive/omega/product.hpp"
#include "decisive/qualitative/attractor_graph.hpp"
#include "decisive/quantitative/scheme.hpp"

namespace decisive {

// Good/bad classification of a product through its attractor graph. Each
// good BSCC is its own "Yes" class; "No" is a sink set from which no good
// BSCC can be reached.
struct ProductClassification {
  AttractorGraph graph;
  std::vector<std::size_t> good;
  StateSet yes;
  StateSet no;
  std::string no_provenance;
  std::unordered_map<StateId, ClassId> good_class;  // good BSCC vertex → class (1-based)

  ClassId classify(StateId s) const;
  std::vector<std::string> class_names(const ProductChain& prod) const;
};

ProductClassification classify_product(const ProductChain& prod, const StateSet& attractor,
                                       const ExplorationScope& scope = {});

// P(Inf ∈ F) as the reachability probability of the good BSCCs of the
// attractor graph.
ApproxResult quant_omega_attractor(const ProductChain& prod, const Distribution& mu, const StateSet& attractor,
                                   const DecisivenessEvidence& evidence, const Estimator& estimator,
                                   const SchemeOptions& options, const ExplorationScope& scope = {});

// The good BSCCs are computed on the finite abstract product; the concrete
// product is classified through α_M. `handle` relates the two products and
// must be certified sound or explicitly assumed.
ApproxResult quant_omega_abstraction(const AbstractionHandle& handle, const ProductChain& concrete,
                                     const ProductChain& abstract, const Distribution& mu,
                                     const Estimator& estimator, const SchemeOptions& options);

}  // namespace decisive
