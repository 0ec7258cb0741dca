#include "decisive/abstraction/abstraction.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

#include "decisive/core/explorer.hpp"
#include "decisive/core/families.hpp"
#include "decisive/core/measures.hpp"
#include "decisive/error.hpp"
#include "decisive/quantitative/scheme.hpp"

namespace decisive {

AlphaMap::AlphaMap(Map map, Enumerate fibers, std::string name)
    : map_(std::move(map)), fibers_(std::move(fibers)), name_(std::move(name)) {}

AlphaMap AlphaMap::identity(const MarkovChain& chain) {
  return AlphaMap([](StateId s) { return s; },
                  [chain](StateId s, std::size_t) {
                    Fiber f;
                    if (chain.has_state(s)) f.states.push_back(s);
                    return f;
                  },
                  "identity");
}

AlphaMap AlphaMap::table(std::map<StateId, StateId> table, std::string name) {
  auto forward = std::make_shared<const std::map<StateId, StateId>>(std::move(table));
  auto inverse = std::make_shared<std::map<StateId, std::vector<StateId>>>();
  for (const auto& [c, a] : *forward) (*inverse)[a].push_back(c);
  return AlphaMap(
      [forward](StateId s) {
        auto it = forward->find(s);
        if (it == forward->end()) fail(ErrorKind::UnknownState, "alpha is undefined on state " + std::to_string(s.value));
        return it->second;
      },
      [inverse](StateId a, std::size_t bound) {
        Fiber f;
        auto it = inverse->find(a);
        if (it == inverse->end()) return f;
        const auto& all = it->second;
        f.states.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(std::min(bound, all.size())));
        f.complete = f.states.size() == all.size();
        return f;
      },
      std::move(name));
}

AlphaMap AlphaMap::walk_to_three_state() {
  return AlphaMap([](StateId s) { return decisive::walk_to_three_state(s); },
                  [](StateId a, std::size_t bound) {
                    Fiber f;
                    if (a.value == 0 || a.value == 1) {
                      if (bound > 0) f.states.push_back(a);
                      f.complete = bound > 0;
                    } else if (a.value == 2) {
                      for (std::size_t i = 0; i < bound; ++i) f.states.push_back(StateId{2 + static_cast<std::int64_t>(i)});
                      f.complete = false;
                    }
                    return f;
                  },
                  "walk-to-Tf");
}

StateSet AlphaMap::preimage(const StateSet& abstract, std::size_t bound) const {
  if (abstract.is_explicit()) {
    std::vector<StateId> members;
    bool complete = true;
    for (auto a : abstract.members()) {
      Fiber f = fiber(a, bound);
      complete = complete && f.complete;
      members.insert(members.end(), f.states.begin(), f.states.end());
    }
    if (complete) return StateSet::of(std::move(members));
  }
  auto map = map_;
  return StateSet::predicate([map, abstract](StateId s) { return abstract.try_contains(map(s)); },
                             "alpha^-1(" + abstract.description() + ")");
}

Distribution pushforward(const AlphaMap& alpha, const Distribution& mu) {
  DistributionBuilder<Rational> builder;
  for (const auto& e : mu.entries()) builder.add(alpha(e.state), e.prob);
  return builder.build();
}

std::string to_string(Soundness soundness) {
  switch (soundness) {
    case Soundness::Unknown: return "unknown";
    case Soundness::Certified: return "certified";
    case Soundness::WitnessedUnsound: return "witnessed-unsound";
    case Soundness::AssumedOverride: return "assumed";
  }
  return "unknown";
}

AbstractionHandle::AbstractionHandle(MarkovChain concrete, MarkovChain abstract, AlphaMap alpha)
    : concrete_(std::move(concrete)), abstract_(std::move(abstract)), alpha_(std::move(alpha)) {}

void AbstractionHandle::assume(std::string note) {
  assumed_ = true;
  is_abstraction_ = true;
  if (soundness_ != Soundness::WitnessedUnsound) soundness_ = Soundness::AssumedOverride;
  evidence_.push_back("override: " + note);
}

DecisivenessEvidence AbstractionHandle::decisiveness_evidence() const {
  std::string joined;
  for (const auto& e : evidence_) joined += (joined.empty() ? "" : "; ") + e;
  if (soundness_ == Soundness::Certified && !assumed_) return DecisivenessEvidence::sound_abstraction(joined);
  return DecisivenessEvidence::assumed(joined.empty() ? "soundness " + to_string(soundness_) : joined);
}

nlohmann::json to_json(const AbstractionHandle& handle) {
  nlohmann::json doc{{"map", handle.alpha().name()},
                     {"is_abstraction", handle.is_abstraction()},
                     {"complete", handle.is_complete()},
                     {"soundness", to_string(handle.soundness())},
                     {"tainted", handle.tainted()},
                     {"evidence", handle.evidence_chain()}};
  if (const auto& cex = handle.counterexample()) {
    doc["counterexample"] = {{"target", cex->abstract_target.description()},
                             {"mu", format_distribution(cex->mu)},
                             {"abstract_value", format_rational(cex->abstract_value)},
                             {"concrete", to_json(cex->concrete)}};
  }
  return doc;
}

void AbstractionChecks::set_abstraction(AbstractionHandle& h, bool value, std::string note) {
  h.is_abstraction_ = value || h.assumed_;
  h.evidence_.push_back(std::move(note));
}

void AbstractionChecks::set_complete(AbstractionHandle& h, bool value, std::string note) {
  h.complete_ = value;
  h.evidence_.push_back(std::move(note));
}

void AbstractionChecks::set_soundness(AbstractionHandle& h, Soundness value, std::string note) {
  h.soundness_ = value;
  h.evidence_.push_back(std::move(note));
}

void AbstractionChecks::set_counterexample(AbstractionHandle& h, Counterexample cex) {
  h.soundness_ = Soundness::WitnessedUnsound;
  h.evidence_.push_back("counterexample: abstract P(F " + cex.abstract_target.description() +
                        ") = 1, concrete upper bound " + format_decimal(cex.concrete.hi));
  h.counterexample_ = std::move(cex);
}

namespace {

std::vector<StateId> abstract_states(const MarkovChain& abstract, const ExplorationScope& scope) {
  if (abstract.is_finite()) return abstract.states();
  if (scope.seeds.empty() || !scope.depth) {
    fail(ErrorKind::CertificateRequired, "countable abstract chain needs seeds and a depth");
  }
  ExploredChain<Rational> explored(abstract);
  std::vector<StateId> out;
  for (const auto& [i, d] : explored.explore(scope.seeds, scope.depth)) out.push_back(explored.state(i));
  std::sort(out.begin(), out.end());
  return out;
}

std::set<StateId> support_set(const Distribution& d) {
  std::set<StateId> out;
  for (const auto& e : d.entries()) out.insert(e.state);
  return out;
}

// BFS distance from s to the target in a finite chain.
std::optional<std::size_t> distance_to(const MarkovChain& chain, StateId s, const StateSet& target) {
  std::unordered_map<StateId, std::size_t> seen{{s, 0}};
  std::deque<StateId> queue{s};
  while (!queue.empty()) {
    const StateId u = queue.front();
    queue.pop_front();
    if (target.contains(u)) return seen[u];
    for (const auto& e : chain.successors(u).entries()) {
      if (seen.emplace(e.state, seen[u] + 1).second) queue.push_back(e.state);
    }
  }
  return std::nullopt;
}

Rational bounded_reach(const MarkovChain& chain, StateId s, const StateSet& target, std::size_t k) {
  return bounded_event_probability<Rational>(chain, Distribution::dirac(s),
                                             f_eventually(f_set(target), BoundKind::Le, k), k);
}

std::string abstract_name(const MarkovChain& chain, StateId s) {
  return chain.has_state(s) ? chain.name(s) : std::to_string(s.value);
}

}  // namespace

AbstractionReport check_abstraction(AbstractionHandle& handle, std::size_t fiber_bound,
                                    const ExplorationScope& abstract_scope) {
  const auto& concrete = handle.concrete();
  const auto& abstract = handle.abstract_chain();
  const auto& alpha = handle.alpha();
  AbstractionReport report;
  report.holds = true;

  auto offend = [&](StateId c, StateId target, std::string detail) {
    if (!report.holds) return;
    report.holds = false;
    report.offending = std::make_pair(c, target);
    report.detail = std::move(detail);
  };

  for (auto a : abstract_states(abstract, abstract_scope)) {
    const auto edges = support_set(abstract.successors(a));
    const Fiber fiber = alpha.fiber(a, fiber_bound);
    report.bounded = report.bounded || !fiber.complete;
    for (auto c : fiber.states) {
      if (!concrete.has_state(c)) continue;
      if (alpha(c) != a) {
        offend(c, a, "fiber enumeration of " + abstract_name(abstract, a) + " lists state " + concrete.name(c) +
                         " which maps elsewhere");
        continue;
      }
      std::set<StateId> images;
      for (const auto& e : concrete.successors(c).entries()) images.insert(alpha(e.state));
      for (auto b : edges) {
        ++report.pairs_checked;
        if (!images.count(b)) {
          offend(c, b, "state " + concrete.name(c) + " in alpha^-1(" + abstract_name(abstract, a) +
                           ") has no successor in alpha^-1(" + abstract_name(abstract, b) + ")");
        }
      }
      for (auto b : images) {
        if (!edges.count(b)) {
          offend(c, b, "state " + concrete.name(c) + " moves into alpha^-1(" + abstract_name(abstract, b) +
                           ") but " + abstract_name(abstract, a) + " has no such edge");
        }
      }
    }
  }
  if (report.holds) {
    report.detail = "one-step positivity agrees on " + std::to_string(report.pairs_checked) + " pairs";
    if (report.bounded) report.detail += " (fibers cut at " + std::to_string(fiber_bound) + " states)";
  }
  AbstractionChecks::set_abstraction(handle, report.holds, "abstraction check: " + report.detail);
  return report;
}

CertificationReport certify_complete(AbstractionHandle& handle,
                                     const std::optional<DecisivenessEvidence>& abstract_attractor) {
  CertificationReport out;
  if (!handle.is_abstraction()) {
    out.reason = "unknown: not a certified abstraction";
  } else if (handle.abstract_chain().is_finite()) {
    out.holds = true;
    out.reason = "finite abstract chain";
  } else if (abstract_attractor && abstract_attractor->kind == DecisivenessEvidence::Kind::FiniteAttractor &&
             abstract_attractor->verified) {
    out.holds = true;
    out.reason = "abstract chain has a verified finite attractor: " + abstract_attractor->describe();
  } else {
    out.reason = "unknown: countable abstract chain without attractor evidence";
  }
  AbstractionChecks::set_complete(handle, out.holds, "completeness: " + out.reason);
  return out;
}

DaggerEvidence derive_dagger_evidence(const AbstractionHandle& handle, const std::vector<StateId>& abstract_attractor,
                                      const std::vector<StateSet>& catalogue, std::vector<StateId> attractor_probes,
                                      std::string justification, std::size_t fiber_samples) {
  const auto& abstract = handle.abstract_chain();
  if (!abstract.is_finite()) fail(ErrorKind::InvalidArgument, "bound derivation needs a finite abstract chain");
  DaggerEvidence out;
  out.abstract_attractor = abstract_attractor;
  out.attractor_probes = std::move(attractor_probes);
  out.justification = std::move(justification);
  out.fiber_samples = fiber_samples;
  for (auto a : abstract_attractor) {
    const Fiber fiber = handle.alpha().fiber(a, fiber_samples);
    for (const auto& target : catalogue) {
      FiberBound bound{a, target, false, Rational(0), 0};
      const auto k = distance_to(abstract, a, target);
      if (!k) {
        bound.unreachable = true;
      } else {
        bound.k = *k;
        const StateSet preimage = handle.alpha().preimage(target);
        bool first = true;
        for (auto c : fiber.states) {
          const Rational p = bounded_reach(handle.concrete(), c, preimage, *k);
          if (first || p < bound.p) bound.p = p;
          first = false;
        }
      }
      out.bounds.push_back(std::move(bound));
    }
  }
  return out;
}

DaggerValidation validate_dagger(const AbstractionHandle& handle, const DaggerEvidence& evidence) {
  const auto& concrete = handle.concrete();
  const auto& abstract = handle.abstract_chain();
  DaggerValidation out;
  out.exhaustive = true;
  auto reject = [&](std::string why) {
    out.ok = false;
    out.detail = std::move(why);
    return out;
  };
  if (evidence.abstract_attractor.empty()) return reject("empty abstract attractor");
  if (!abstract.is_finite()) return reject("bounds are only validated against a finite abstract chain");

  const StateSet a2 = StateSet::of(evidence.abstract_attractor);
  const AttractorCheck abstract_check = check_attractor(abstract, a2);
  ++out.checks;
  if (!abstract_check.holds) return reject("A2 is not an attractor of the abstract chain: " + abstract_check.justification);

  const StateSet a1 = handle.alpha().preimage(a2);
  if (concrete.is_finite()) {
    const AttractorCheck check = check_attractor(concrete, a1);
    ++out.checks;
    if (!check.holds) return reject("alpha^-1(A2) is not an attractor: " + check.justification);
  } else {
    if (evidence.attractor_probes.empty()) return reject("countable concrete chain: attractor probes required");
    SchemeOptions options;
    options.eps = 1e-9;
    options.budget = 100000;
    const AvoidSet none{StateSet::nothing(), AvoidSet::Provenance::UserSupplied, std::nullopt, "probe"};
    for (auto probe : evidence.attractor_probes) {
      const ApproxResult r = approx_reach(concrete, Distribution::dirac(probe), a1, none,
                                          DecisivenessEvidence::assumed("attractor probe"), Estimator::floating(),
                                          options);
      ++out.checks;
      if (r.status != Status::Converged || r.lo < 1.0 - 1e-6) {
        return reject("alpha^-1(A2) is not reached almost surely from " + concrete.name(probe) + ": P(F A1) in [" +
                      format_decimal(r.lo) + ", " + format_decimal(r.hi) + "], " + to_string(r.status));
      }
    }
    out.exhaustive = false;
  }

  for (const auto& bound : evidence.bounds) {
    if (!std::count(evidence.abstract_attractor.begin(), evidence.abstract_attractor.end(), bound.abstract_state)) {
      return reject("bound for a state outside A2");
    }
    const Fiber fiber = handle.alpha().fiber(bound.abstract_state, evidence.fiber_samples);
    out.exhaustive = out.exhaustive && fiber.complete;
    const StateSet preimage = handle.alpha().preimage(bound.abstract_target);
    for (auto c : fiber.states) {
      ++out.checks;
      if (bound.unreachable) {
        if (distance_to(abstract, bound.abstract_state, bound.abstract_target)) {
          return reject("target " + bound.abstract_target.description() + " declared unreachable but is reachable");
        }
        continue;
      }
      if (sgn(bound.p) <= 0) return reject("bound p must be positive");
      const Rational p = bounded_reach(concrete, c, preimage, bound.k);
      if (p < bound.p) {
        return reject("P(F<=" + std::to_string(bound.k) + " " + preimage.description() + ") from " +
                      concrete.name(c) + " is " + format_rational(p) + " < " + format_rational(bound.p));
      }
    }
  }
  out.ok = true;
  out.detail = std::to_string(out.checks) + " checks passed" +
               (out.exhaustive ? ", fibers enumerated completely" : ", spot-checked on Dirac points");
  return out;
}

SoundnessEvidence SoundnessEvidence::finite_concrete() {
  SoundnessEvidence e;
  e.kind = Kind::FiniteConcrete;
  return e;
}

SoundnessEvidence SoundnessEvidence::from_dagger(DaggerEvidence evidence) {
  SoundnessEvidence e;
  e.kind = Kind::Dagger;
  e.dagger = std::move(evidence);
  return e;
}

SoundnessEvidence SoundnessEvidence::from_declared(DecisivenessEvidence evidence) {
  SoundnessEvidence e;
  e.kind = Kind::Declared;
  e.declared = std::move(evidence);
  return e;
}

CertificationReport certify_sound_via_decisiveness(AbstractionHandle& handle, const SoundnessEvidence& evidence) {
  CertificationReport out;
  if (!handle.is_abstraction()) {
    out.reason = "not a certified abstraction";
    return out;
  }
  switch (evidence.kind) {
    case SoundnessEvidence::Kind::FiniteConcrete:
      if (!handle.concrete().is_finite()) {
        fail(ErrorKind::InvalidArgument, "finite-concrete evidence offered for a countable chain");
      }
      out.holds = true;
      out.reason = "finite concrete chain is decisive w.r.t. every set";
      break;
    case SoundnessEvidence::Kind::Dagger: {
      if (!evidence.dagger) fail(ErrorKind::InvalidArgument, "uniform fiber bound evidence missing");
      const DaggerValidation v = validate_dagger(handle, *evidence.dagger);
      out.holds = v.ok;
      out.reason = (v.ok ? "uniform fiber bounds: " : "uniform fiber bounds rejected: ") + v.detail;
      if (!evidence.dagger->justification.empty()) out.reason += " (" + evidence.dagger->justification + ")";
      break;
    }
    case SoundnessEvidence::Kind::Declared:
      if (!evidence.declared) fail(ErrorKind::InvalidArgument, "declared evidence missing");
      if (evidence.declared->taints()) {
        handle.assume(evidence.declared->note);
        out.reason = "assumed: " + evidence.declared->note;
        return out;
      }
      out.holds = true;
      out.reason = "declared: " + evidence.declared->describe();
      break;
  }
  if (out.holds) AbstractionChecks::set_soundness(handle, Soundness::Certified, "soundness: " + out.reason);
  return out;
}

std::vector<StateSet> default_catalogue(const AbstractionHandle& handle) {
  return default_catalogue(handle.abstract_chain());
}

std::vector<StateSet> default_catalogue(const MarkovChain& abstract) {
  if (!abstract.is_finite()) fail(ErrorKind::InvalidArgument, "default catalogue needs a finite abstract chain");
  std::vector<StateSet> out;
  std::set<std::vector<StateId>> seen;
  auto add = [&](const StateSet& s) {
    if (s.empty() || !seen.insert(s.members()).second) return;
    out.push_back(s);
  };
  for (auto s : abstract.states()) add(StateSet::of({s}));
  for (auto s : abstract.states()) add(avoid_set(abstract, StateSet::of({s})).set);
  return out;
}

std::optional<Counterexample> soundness_witness_search(AbstractionHandle& handle, const Distribution& mu,
                                                       const std::vector<StateSet>& catalogue,
                                                       const ConcreteEstimate& estimate) {
  const auto& abstract = handle.abstract_chain();
  if (!abstract.is_finite()) fail(ErrorKind::InvalidArgument, "witness search needs a finite abstract chain");
  const Distribution image = pushforward(handle.alpha(), mu);
  for (const auto& target : catalogue) {
    const Rational value = exact_reachability_from<Rational>(abstract, image, target);
    if (value != 1) continue;
    ApproxResult concrete = estimate(mu, handle.alpha().preimage(target));
    if (concrete.hi < 1.0) {
      Counterexample cex{target, mu, value, std::move(concrete)};
      AbstractionChecks::set_counterexample(handle, cex);
      return cex;
    }
  }
  return std::nullopt;
}

std::optional<AbstractWitness> witness_search(const MarkovChain& abstract, const Distribution& abstract_mu,
                                              const std::vector<StateSet>& catalogue,
                                              const AbstractTargetEstimate& estimate) {
  if (!abstract.is_finite()) fail(ErrorKind::InvalidArgument, "witness search needs a finite abstract chain");
  for (const auto& target : catalogue) {
    const Rational value = exact_reachability_from<Rational>(abstract, abstract_mu, target);
    if (value != 1) continue;
    ApproxResult concrete = estimate(target);
    if (concrete.hi < 1.0) return AbstractWitness{target, abstract_mu, value, std::move(concrete)};
  }
  return std::nullopt;
}

TransferredAttractor transfer_attractor(const AbstractionHandle& handle, const StateSet& abstract_attractor) {
  if (handle.soundness() != Soundness::Certified && handle.soundness() != Soundness::AssumedOverride) {
    fail(ErrorKind::Refused, "attractor transfer needs a sound abstraction (soundness " +
                                 to_string(handle.soundness()) + ")");
  }
  const AttractorCheck check = check_attractor(handle.abstract_chain(), abstract_attractor);
  if (!check.holds) fail(ErrorKind::Refused, "not an attractor of the abstract chain: " + check.justification);
  TransferredAttractor out{handle.alpha().preimage(abstract_attractor), {}};
  const std::string note = "alpha^-1 of abstract attractor " + abstract_attractor.description();
  if (handle.tainted()) {
    out.evidence = DecisivenessEvidence::assumed(note + " under an assumed abstraction");
  } else if (out.set.is_explicit()) {
    out.evidence = DecisivenessEvidence::finite_attractor(out.set, note, check.conclusive);
  } else {
    out.evidence = DecisivenessEvidence::sound_abstraction(note);
  }
  return out;
}

AlphaMap lift_alpha_to_product(const AlphaMap& alpha, const ProductChain& concrete, const ProductChain& abstract) {
  const std::size_t q_count = concrete.automaton().size();
  if (abstract.automaton().size() != q_count) fail(ErrorKind::InvalidArgument, "products use different automata");
  // Only the encodings are captured, so the products may go out of scope.
  auto decode_c = [q_count](StateId p) {
    const auto q = static_cast<std::int64_t>(q_count);
    std::int64_t s = p.value / q;
    std::int64_t r = p.value % q;
    if (r < 0) {
      r += q;
      --s;
    }
    return std::make_pair(StateId{s}, static_cast<std::size_t>(r));
  };
  auto encode = [q_count](StateId s, std::size_t q) {
    return StateId{s.value * static_cast<std::int64_t>(q_count) + static_cast<std::int64_t>(q)};
  };
  return AlphaMap(
      [alpha, decode_c, encode](StateId p) {
        const auto [s, q] = decode_c(p);
        return encode(alpha(s), q);
      },
      [alpha, decode_c, encode](StateId a, std::size_t bound) {
        const auto [s, q] = decode_c(a);
        Fiber base = alpha.fiber(s, bound);
        Fiber out;
        out.complete = base.complete;
        for (auto c : base.states) out.states.push_back(encode(c, q));
        return out;
      },
      alpha.name() + " x id");
}

}  // namespace decisive
