#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "decisive/core/distribution.hpp"
#include "decisive/core/markov_chain.hpp"
#include "decisive/omega/product.hpp"
#include "decisive/qualitative/avoid.hpp"
#include "decisive/qualitative/evidence.hpp"
#include "decisive/quantitative/result.hpp"

namespace decisive {

// Members of α^{-1}(s), possibly cut at an enumeration bound.
struct Fiber {
  std::vector<StateId> states;
  bool complete = true;
};

// α : concrete states → abstract states, with fiber enumeration.
class AlphaMap {
 public:
  using Map = std::function<StateId(StateId)>;
  using Enumerate = std::function<Fiber(StateId, std::size_t)>;

  AlphaMap(Map map, Enumerate fibers, std::string name);

  static AlphaMap identity(const MarkovChain& chain);
  // Explicit table over a finite concrete chain.
  static AlphaMap table(std::map<StateId, StateId> table, std::string name = "table");
  // 0 ↦ s0, 1 ↦ s1, n ≥ 2 ↦ s2.
  static AlphaMap walk_to_three_state();

  StateId operator()(StateId s) const { return map_(s); }
  // At most `bound` members of α^{-1}(s).
  Fiber fiber(StateId abstract, std::size_t bound) const { return fibers_(abstract, bound); }
  const std::string& name() const { return name_; }

  // α^{-1}(A); explicit when every fiber of an explicit A is finite.
  StateSet preimage(const StateSet& abstract, std::size_t bound = 4096) const;

 private:
  Map map_;
  Enumerate fibers_;
  std::string name_;
};

// α_#(μ).
Distribution pushforward(const AlphaMap& alpha, const Distribution& mu);

enum class Soundness { Unknown, Certified, WitnessedUnsound, AssumedOverride };
std::string to_string(Soundness soundness);

struct Counterexample {
  StateSet abstract_target;
  Distribution mu;
  Rational abstract_value;
  ApproxResult concrete;
};

// Concrete chain, abstract DMC and α. The certification flags are only
// written by the checking operations below, or by an explicit override.
class AbstractionHandle {
 public:
  AbstractionHandle(MarkovChain concrete, MarkovChain abstract, AlphaMap alpha);

  const MarkovChain& concrete() const { return concrete_; }
  const MarkovChain& abstract_chain() const { return abstract_; }
  const AlphaMap& alpha() const { return alpha_; }

  bool is_abstraction() const { return is_abstraction_; }
  bool is_complete() const { return complete_; }
  Soundness soundness() const { return soundness_; }
  const std::vector<std::string>& evidence_chain() const { return evidence_; }
  const std::optional<Counterexample>& counterexample() const { return counterexample_; }

  // Marks the handle as an abstraction and sound on the caller's word.
  // Results derived from it are tainted.
  void assume(std::string note);
  bool tainted() const { return assumed_; }

  // Evidence to hand to downstream pipelines.
  DecisivenessEvidence decisiveness_evidence() const;

 private:
  friend struct AbstractionChecks;

  MarkovChain concrete_;
  MarkovChain abstract_;
  AlphaMap alpha_;
  bool is_abstraction_ = false;
  bool complete_ = false;
  bool assumed_ = false;
  Soundness soundness_ = Soundness::Unknown;
  std::vector<std::string> evidence_;
  std::optional<Counterexample> counterexample_;
};

nlohmann::json to_json(const AbstractionHandle& handle);

struct AbstractionReport {
  bool holds = false;
  bool bounded = false;  // some fiber was cut at the bound
  std::size_t pairs_checked = 0;
  std::optional<std::pair<StateId, StateId>> offending;  // (concrete state, abstract successor)
  std::string detail;
};

// κ2(s, s') > 0 iff every state of α^{-1}(s) moves into α^{-1}(s') with
// positive probability. Abstract states come from the finite abstract
// chain or from the scope.
AbstractionReport check_abstraction(AbstractionHandle& handle, std::size_t fiber_bound,
                                    const ExplorationScope& abstract_scope = {});

struct CertificationReport {
  bool holds = false;
  std::string reason;
};

// Finite abstract chain, or a countable one with a verified finite attractor.
CertificationReport certify_complete(AbstractionHandle& handle,
                                     const std::optional<DecisivenessEvidence>& abstract_attractor = std::nullopt);

// Uniform reachability bounds on the fibers of a finite abstract attractor.
struct FiberBound {
  StateId abstract_state;
  StateSet abstract_target;
  bool unreachable = false;  // the second alternative: probability 0
  Rational p;
  std::size_t k = 0;
};

struct DaggerEvidence {
  std::vector<StateId> abstract_attractor;
  std::vector<FiberBound> bounds;
  // Concrete states from which α^{-1}(A2) must be reached almost surely;
  // checked numerically when the concrete chain is countable.
  std::vector<StateId> attractor_probes;
  std::string justification;
  std::size_t fiber_samples = 16;
};

// Bounds for every state of A2 and every target in the catalogue: k is the
// abstract distance and p the least exact F<=k probability over the sampled
// Dirac points of the fiber.
DaggerEvidence derive_dagger_evidence(const AbstractionHandle& handle, const std::vector<StateId>& abstract_attractor,
                                      const std::vector<StateSet>& catalogue, std::vector<StateId> attractor_probes,
                                      std::string justification, std::size_t fiber_samples = 16);

struct DaggerValidation {
  bool ok = false;
  bool exhaustive = false;  // every fiber of A2 was enumerated completely
  std::size_t checks = 0;
  std::string detail;
};

DaggerValidation validate_dagger(const AbstractionHandle& handle, const DaggerEvidence& evidence);

// Evidence that the concrete chain is decisive w.r.t. α-closed sets.
struct SoundnessEvidence {
  enum class Kind { FiniteConcrete, Dagger, Declared };
  Kind kind = Kind::Declared;
  std::optional<DaggerEvidence> dagger;
  std::optional<DecisivenessEvidence> declared;

  static SoundnessEvidence finite_concrete();
  static SoundnessEvidence from_dagger(DaggerEvidence evidence);
  static SoundnessEvidence from_declared(DecisivenessEvidence evidence);
};

CertificationReport certify_sound_via_decisiveness(AbstractionHandle& handle, const SoundnessEvidence& evidence);

// Singletons plus the non-empty abstract avoid-sets of singletons.
std::vector<StateSet> default_catalogue(const AbstractionHandle& handle);

// Concrete P(F target) from a concrete distribution.
using ConcreteEstimate = std::function<ApproxResult(const Distribution& mu, const StateSet& target)>;

// Searches for B with abstract P(F B) = 1 and a concrete upper bound < 1.
std::optional<Counterexample> soundness_witness_search(AbstractionHandle& handle, const Distribution& mu,
                                                       const std::vector<StateSet>& catalogue,
                                                       const ConcreteEstimate& estimate);

// Same catalogue for a bare finite chain.
std::vector<StateSet> default_catalogue(const MarkovChain& abstract);

struct AbstractWitness {
  StateSet abstract_target;
  Distribution abstract_mu;
  Rational abstract_value;
  ApproxResult concrete;
};

// Concrete P(F α^{-1}(target)) for an abstract target.
using AbstractTargetEstimate = std::function<ApproxResult(const StateSet& abstract_target)>;

// Witness search when the concrete side is not a Markov chain object (e.g.
// an STA): abstract values are exact on the finite abstract chain.
std::optional<AbstractWitness> witness_search(const MarkovChain& abstract, const Distribution& abstract_mu,
                                              const std::vector<StateSet>& catalogue,
                                              const AbstractTargetEstimate& estimate);

struct TransferredAttractor {
  StateSet set;
  DecisivenessEvidence evidence;
};

// α^{-1}(A2), for a verified attractor A2 of the abstract chain.
TransferredAttractor transfer_attractor(const AbstractionHandle& handle, const StateSet& abstract_attractor);

// α_M(s, q) = (α(s), q) between the two products.
AlphaMap lift_alpha_to_product(const AlphaMap& alpha, const ProductChain& concrete, const ProductChain& abstract);

// Checking operations; the only writers of the handle flags.
struct AbstractionChecks {
  static void set_abstraction(AbstractionHandle& h, bool value, std::string note);
  static void set_complete(AbstractionHandle& h, bool value, std::string note);
  static void set_soundness(AbstractionHandle& h, Soundness value, std::string note);
  static void set_counterexample(AbstractionHandle& h, Counterexample cex);
};

}  // namespace decisive
