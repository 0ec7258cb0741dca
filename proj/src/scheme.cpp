#include "decisive/quantitative/scheme.hpp"

#include <algorithm>
#include <deque>

#include "decisive/core/explorer.hpp"
#include "decisive/error.hpp"
#include "decisive/quantitative/monte_carlo.hpp"

namespace decisive {

Estimator Estimator::monte_carlo(std::size_t samples, double confidence, std::uint64_t seed, unsigned threads) {
  Estimator e;
  e.kind = Kind::MonteCarlo;
  e.samples = samples;
  e.confidence = confidence;
  e.seed = seed;
  e.threads = threads;
  return e;
}

std::string to_string(Estimator::Kind kind) {
  switch (kind) {
    case Estimator::Kind::Exact: return "exact";
    case Estimator::Kind::Float: return "float64";
    case Estimator::Kind::MonteCarlo: return "monte-carlo";
  }
  return "unknown";
}

namespace {

double as_double(const Rational& v) { return v.get_d(); }
double as_double(double v) { return v; }

template <class T>
ApproxResult propagate(const MarkovChain& chain, const Distribution& mu, const Classifier& classify,
                       const SchemeOptions& options) {
  using N = Numeric<T>;
  ExploredChain<T> explored(chain);
  std::vector<ClassId> cache;
  constexpr ClassId kUnknown = -2;
  auto class_of = [&](std::size_t i, std::size_t n) {
    if (classify.time_dependent) return classify.fn(explored.state(i), n);
    if (cache.size() <= i) cache.resize(std::max(i + 1, cache.size() * 2), kUnknown);
    if (cache[i] == kUnknown) cache[i] = classify.fn(explored.state(i), n);
    return cache[i];
  };

  std::vector<T> yes(classify.yes_classes, N::zero());
  T no = N::zero();
  std::vector<std::pair<std::size_t, T>> frontier;
  auto absorb = [&](std::size_t i, const T& mass, std::size_t n) {
    const ClassId c = class_of(i, n);
    if (c == kNo) {
      no += mass;
    } else if (c >= kYes) {
      if (static_cast<std::size_t>(c) > yes.size()) fail(ErrorKind::InvalidArgument, "classifier class out of range");
      yes[static_cast<std::size_t>(c - 1)] += mass;
    } else {
      frontier.emplace_back(i, mass);
    }
  };

  for (const auto& e : mu.entries()) absorb(explored.index(e.state), N::from(e.prob), 0);

  ApproxResult out;
  out.eps = options.eps;
  const T eps = N::from(Rational(options.eps));
  std::deque<double> window;
  std::vector<T> scratch;
  std::vector<std::size_t> touched;

  for (std::size_t n = 0;; ++n) {
    T lo = N::zero();
    for (const auto& y : yes) lo += y;
    T hi = N::one() - no;
    if (hi < lo) hi = lo;  // rounding in float mode
    const T gap = hi - lo;
    if (options.record_trace) out.trace.emplace_back(Rational(lo), Rational(hi));
    out.iterations = n;
    out.lo = std::clamp(as_double(lo), 0.0, 1.0);
    out.hi = std::clamp(as_double(hi), 0.0, 1.0);
    if constexpr (N::exact) {
      out.exact_lo = lo;
      out.exact_hi = hi;
    }
    out.class_lo.clear();
    for (const auto& y : yes) out.class_lo.push_back(as_double(y));

    if (gap < eps) {
      out.status = Status::Converged;
      break;
    }
    window.push_back(as_double(gap));
    if (window.size() > options.stall_window) {
      window.pop_front();
      if (window.front() - window.back() < options.stall_tolerance) {
        out.status = Status::Stalled;
        break;
      }
    }
    if (n >= options.budget) {
      out.status = Status::BudgetExhausted;
      break;
    }

    // One step of the undecided mass.
    touched.clear();
    for (const auto& [i, mass] : frontier) {
      const auto& row = explored.row(i);
      if (scratch.size() < explored.size()) scratch.resize(explored.size(), N::zero());
      for (const auto& [j, p] : row) {
        if (N::is_zero(scratch[j])) touched.push_back(j);
        scratch[j] += mass * p;
      }
    }
    frontier.clear();
    for (auto j : touched) {
      T mass = scratch[j];
      scratch[j] = N::zero();
      if constexpr (!N::exact) {
        if (mass < kPruneThreshold) continue;  // dropped mass stays in the gap
      }
      absorb(j, mass, n + 1);
    }
  }
  return out;
}

std::vector<std::string> default_names(const Classifier& classify) {
  if (!classify.class_names.empty()) return classify.class_names;
  std::vector<std::string> names;
  for (std::size_t k = 1; k <= classify.yes_classes; ++k) names.push_back("yes" + std::to_string(k));
  return names;
}

ClassId reach_class(const StateSet& target, const StateSet& avoid, StateId s) {
  if (target.try_contains(s).value_or(false)) return kYes;
  if (avoid.try_contains(s).value_or(false)) return kNo;
  return kUndecided;
}

}  // namespace

ApproxResult run_scheme(const MarkovChain& chain, const Distribution& mu, const Classifier& classify,
                        const Estimator& estimator, const SchemeOptions& options) {
  if (!(options.eps > 0)) fail(ErrorKind::InvalidArgument, "eps must be positive");
  mu.require_probability("initial distribution");
  ApproxResult out;
  switch (estimator.kind) {
    case Estimator::Kind::Exact:
      out = propagate<Rational>(chain, mu, classify, options);
      break;
    case Estimator::Kind::Float:
      out = propagate<double>(chain, mu, classify, options);
      break;
    case Estimator::Kind::MonteCarlo: {
      if (estimator.samples == 0) fail(ErrorKind::InvalidArgument, "sample count must be positive");
      if (!(estimator.confidence > 0 && estimator.confidence < 1)) {
        fail(ErrorKind::InvalidArgument, "confidence must lie in (0, 1)");
      }
      McOptions mc;
      mc.samples = estimator.samples;
      mc.confidence = estimator.confidence;
      mc.seed = estimator.seed;
      mc.threads = estimator.threads;
      mc.horizon = options.budget;
      mc.tail_cutoff = estimator.tail ? estimator.tail_cutoff : -1.0;
      mc.yes_classes = classify.yes_classes;
      const ChainModel model(chain, mu, classify, estimator.tail);
      out = summarize(simulate(model, mc), mc, options);
      break;
    }
  }
  out.class_names = default_names(classify);
  out.notes.push_back("estimator: " + to_string(estimator.kind));
  return out;
}

ApproxResult approx_reach(const MarkovChain& chain, const Distribution& mu, const StateSet& target,
                          const AvoidSet& avoid, const DecisivenessEvidence& evidence, const Estimator& estimator,
                          const SchemeOptions& options) {
  Classifier classify;
  classify.fn = [target, set = avoid.set](StateId s, std::size_t) { return reach_class(target, set, s); };
  classify.class_names = {target.description()};
  ApproxResult out = run_scheme(chain, mu, classify, estimator, options);
  out.property = "F " + target.description();
  out.evidence = evidence;
  out.notes.push_back("avoid-set " + avoid.set.description() + " via " + to_string(avoid.provenance));
  return out;
}

ApproxResult approx_until(const MarkovChain& chain, const Distribution& mu, const StateSet& allowed,
                          const StateSet& target, const AvoidSet& avoid, const DecisivenessEvidence& evidence,
                          const Estimator& estimator, const SchemeOptions& options) {
  Classifier classify;
  classify.fn = [allowed, target, set = avoid.set](StateId s, std::size_t) {
    if (target.try_contains(s).value_or(false)) return kYes;
    if (set.try_contains(s).value_or(false)) return kNo;
    const auto in_allowed = allowed.try_contains(s);
    if (in_allowed && !*in_allowed) return kNo;
    return kUndecided;
  };
  classify.class_names = {target.description()};
  ApproxResult out = run_scheme(chain, mu, classify, estimator, options);
  out.property = allowed.description() + " U " + target.description();
  out.evidence = evidence;
  out.notes.push_back("avoid-set " + avoid.set.description() + " via " + to_string(avoid.provenance));
  return out;
}

ApproxResult approx_repeated(const MarkovChain& chain, const Distribution& mu, const StateSet& target,
                             const AvoidSet& avoid, const AvoidSet& double_avoid,
                             const DecisivenessEvidence& evidence, const Estimator& estimator,
                             const SchemeOptions& options) {
  Classifier classify;
  classify.fn = [yes = double_avoid.set, no = avoid.set](StateId s, std::size_t) { return reach_class(yes, no, s); };
  classify.class_names = {double_avoid.set.description()};
  ApproxResult out = run_scheme(chain, mu, classify, estimator, options);
  out.property = "G F " + target.description();
  out.evidence = evidence;
  out.notes.push_back("avoid-set " + avoid.set.description() + " via " + to_string(avoid.provenance));
  out.notes.push_back("double avoid-set " + double_avoid.set.description() + " via " +
                      to_string(double_avoid.provenance));
  return out;
}

ApproxResult time_bounded_reach(const MarkovChain& chain, const Distribution& mu, const StateSet& target,
                                const AvoidSet& avoid, StepWindow window, const DecisivenessEvidence& evidence,
                                const Estimator& estimator, const SchemeOptions& options) {
  const std::string property =
      window.empty ? "F[] " + target.description()
                   : "F[" + std::to_string(window.lo) + "," + std::to_string(window.hi) + "] " + target.description();
  if (window.empty || window.lo > window.hi) {
    ApproxResult out;
    out.property = property;
    out.lo = out.hi = 0.0;
    if (estimator.kind == Estimator::Kind::Exact) out.exact_lo = out.exact_hi = Rational(0);
    out.status = Status::Converged;
    out.eps = options.eps;
    out.evidence = evidence;
    out.class_lo = {0.0};
    out.notes.push_back("empty time window");
    return out;
  }
  Classifier classify;
  classify.time_dependent = true;
  classify.fn = [target, set = avoid.set, window](StateId s, std::size_t n) {
    if (n > window.hi) return kNo;  // time attractor t > sup I
    if (n >= window.lo && target.try_contains(s).value_or(false)) return kYes;
    if (set.try_contains(s).value_or(false)) return kNo;
    return kUndecided;
  };
  classify.class_names = {target.description()};
  ApproxResult out = run_scheme(chain, mu, classify, estimator, options);
  out.property = property;
  out.evidence = evidence;
  out.notes.push_back("time attractor: steps beyond " + std::to_string(window.hi));
  return out;
}

}  // namespace decisive
