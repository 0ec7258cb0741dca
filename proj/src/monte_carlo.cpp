#include "decisive/quantitative/monte_carlo.hpp"

#include <deque>

#include "decisive/error.hpp"

namespace decisive {

void McHistogram::init(std::size_t horizon, std::size_t classes) {
  yes_at.assign(classes, std::vector<std::uint64_t>(horizon + 1, 0));
  no_at.assign(horizon + 1, 0);
  truncated_at.assign(horizon + 1, 0);
  tail_at.assign(horizon + 1, 0.0);
}

void McHistogram::merge(const McHistogram& other) {
  samples += other.samples;
  for (std::size_t k = 0; k < yes_at.size(); ++k) {
    for (std::size_t n = 0; n < yes_at[k].size(); ++n) yes_at[k][n] += other.yes_at[k][n];
  }
  for (std::size_t n = 0; n < no_at.size(); ++n) {
    no_at[n] += other.no_at[n];
    truncated_at[n] += other.truncated_at[n];
    tail_at[n] += other.tail_at[n];
  }
}

double hoeffding_half_width(std::size_t samples, double confidence) {
  const double delta = 1.0 - confidence;
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(samples)));
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

ApproxResult summarize(const McHistogram& histogram, const McOptions& options, const SchemeOptions& scheme) {
  const double total = static_cast<double>(histogram.samples);
  const double h = hoeffding_half_width(histogram.samples, options.confidence);
  const std::size_t horizon = histogram.no_at.size() - 1;

  ApproxResult out;
  out.eps = scheme.eps;
  out.sampling = SamplingInfo{histogram.samples, options.confidence, options.seed, options.threads, h};

  std::vector<std::uint64_t> yes(histogram.yes_at.size(), 0);
  std::uint64_t yes_total = 0;
  std::uint64_t no = 0;
  std::uint64_t truncated = 0;
  double tails = 0.0;
  std::deque<double> window;
  auto fill = [&](std::size_t n, double lo, double gap) {
    out.iterations = n;
    out.lo = std::clamp(lo - h, 0.0, 1.0);
    out.hi = std::clamp(lo + gap + h, 0.0, 1.0);
    out.class_lo.clear();
    for (auto y : yes) out.class_lo.push_back(std::max(0.0, static_cast<double>(y) / total - h));
  };
  for (std::size_t n = 0; n <= horizon; ++n) {
    for (std::size_t k = 0; k < yes.size(); ++k) {
      yes[k] += histogram.yes_at[k][n];
      yes_total += histogram.yes_at[k][n];
    }
    no += histogram.no_at[n];
    truncated += histogram.truncated_at[n];
    tails += histogram.tail_at[n];
    const double lo = static_cast<double>(yes_total) / total;
    const double undecided = static_cast<double>(histogram.samples - yes_total - no - truncated);
    const double gap = (undecided + tails) / total;
    if (scheme.record_trace) out.trace.emplace_back(Rational(std::max(0.0, lo - h)), Rational(std::min(1.0, lo + gap + h)));
    // Hoeffding slack is already in the interval, so the raw gap is what
    // must fall below eps.
    if (gap < scheme.eps) {
      fill(n, lo, gap);
      out.status = Status::Converged;
      return out;
    }
    window.push_back(gap);
    if (window.size() > scheme.stall_window) window.pop_front();
    if (n == horizon) {
      fill(n, lo, gap);
      const bool stalled = window.size() == scheme.stall_window && horizon >= scheme.stall_window &&
                           window.front() - window.back() < scheme.stall_tolerance;
      out.status = stalled ? Status::Stalled : Status::BudgetExhausted;
    }
  }
  return out;
}

ChainModel::ChainModel(MarkovChain chain, const Distribution& mu, Classifier classify,
                       std::function<double(StateId)> tail)
    : chain_(std::move(chain)), initial_(cumulative(mu)), classify_(std::move(classify)), tail_(std::move(tail)) {}

ChainModel::Cumulative ChainModel::cumulative(const Distribution& d) {
  Cumulative c;
  Rational running = 0;
  for (const auto& e : d.entries()) {
    running += e.prob;
    c.bounds.push_back(running.get_d());
    c.states.push_back(e.state);
  }
  if (c.states.empty()) fail(ErrorKind::ZeroMass, "cannot sample from an empty distribution");
  c.bounds.back() = 1.0;
  return c;
}

StateId ChainModel::pick(const Cumulative& c, Rng& rng) {
  const double u = uniform01(rng);
  const auto it = std::upper_bound(c.bounds.begin(), c.bounds.end(), u);
  return c.states[std::min<std::size_t>(it - c.bounds.begin(), c.states.size() - 1)];
}

StateId ChainModel::initial(Rng& rng) const { return pick(initial_, rng); }

void ChainModel::step(StateId& s, Rng& rng) {
  auto it = rows_.find(s);
  if (it == rows_.end()) it = rows_.emplace(s, cumulative(chain_.successors(s))).first;
  s = pick(it->second, rng);
}

ClassId ChainModel::classify(StateId s, std::size_t n) {
  if (classify_.time_dependent) return classify_.fn(s, n);
  auto it = classes_.find(s);
  if (it == classes_.end()) it = classes_.emplace(s, classify_.fn(s, n)).first;
  return it->second;
}

}  // namespace decisive
