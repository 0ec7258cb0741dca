#include "decisive/sta/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "decisive/error.hpp"

namespace decisive::sta {

namespace {

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void tighten_lo(DelayInterval& in, double value, bool closed) {
  if (value > in.lo || (value == in.lo && !closed)) {
    in.lo = value;
    in.lo_closed = closed;
  }
}

void tighten_hi(DelayInterval& in, double value, bool closed) {
  if (value < in.hi || (value == in.hi && !closed)) {
    in.hi = value;
    in.hi_closed = closed;
  }
}

struct Span {
  double lo;
  double hi;
};

// Disjoint sorted union of the positive-length intervals.
std::vector<Span> merge(const std::vector<std::pair<std::size_t, DelayInterval>>& parts) {
  std::vector<Span> spans;
  for (const auto& [e, in] : parts) {
    if (in.length() > 0) spans.push_back({in.lo, in.hi});
  }
  std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) { return a.lo < b.lo; });
  std::vector<Span> out;
  for (const auto& s : spans) {
    if (!out.empty() && s.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, s.hi);
    } else {
      out.push_back(s);
    }
  }
  return out;
}

double sample_uniform(const std::vector<Span>& spans, std::mt19937_64& rng, const std::string& where) {
  double total = 0.0;
  for (const auto& s : spans) total += s.hi - s.lo;
  if (std::isinf(total)) fail(ErrorKind::InvalidModel, "uniform delay over an unbounded set of delays in " + where);
  double u = uniform(rng) * total;
  for (const auto& s : spans) {
    const double len = s.hi - s.lo;
    if (u < len) return s.lo + u;
    u -= len;
  }
  return spans.back().hi;
}

double sample_exponential(const std::vector<Span>& spans, double rate, std::mt19937_64& rng) {
  // Masses relative to the first span start keep the weights away from
  // underflow.
  const double a0 = spans.front().lo;
  std::vector<double> mass;
  double total = 0.0;
  for (const auto& s : spans) {
    const double m = std::exp(-rate * (s.lo - a0)) * -std::expm1(-rate * (s.hi - s.lo));
    mass.push_back(m);
    total += m;
  }
  double u = uniform(rng) * total;
  std::size_t i = 0;
  while (i + 1 < spans.size() && u >= mass[i]) {
    u -= mass[i];
    ++i;
  }
  const Span& s = spans[i];
  const double v = uniform(rng);
  const double within = -std::expm1(-rate * (s.hi - s.lo));  // 1 for an unbounded span
  const double d = s.lo - std::log1p(-v * within) / rate;
  return std::min(d, s.hi);
}

}  // namespace

bool DelayInterval::contains(double d) const {
  if (d < lo || d > hi) return false;
  if (d == lo && !lo_closed) return false;
  if (d == hi && !hi_closed) return false;
  return true;
}

std::optional<DelayInterval> enabling_delays(const Guard& guard, const std::vector<double>& clocks) {
  DelayInterval in;
  for (const auto& c : guard) {
    const double bound = static_cast<double>(c.constant) - clocks[c.clock];
    switch (c.op) {
      case Cmp::Lt: tighten_hi(in, bound, false); break;
      case Cmp::Le: tighten_hi(in, bound, true); break;
      case Cmp::Eq:
        tighten_lo(in, bound, true);
        tighten_hi(in, bound, true);
        break;
      case Cmp::Ge: tighten_lo(in, bound, true); break;
      case Cmp::Gt: tighten_lo(in, bound, false); break;
    }
  }
  if (in.lo > in.hi) return std::nullopt;
  if (in.lo == in.hi && !(in.lo_closed && in.hi_closed)) return std::nullopt;
  return in;
}

std::vector<std::pair<std::size_t, DelayInterval>> delay_set(const StaModel& sta, const Configuration& config) {
  std::vector<std::pair<std::size_t, DelayInterval>> out;
  for (auto e : sta.edges_from(config.location)) {
    if (auto in = enabling_delays(sta.edges()[e].guard, config.clocks)) out.emplace_back(e, *in);
  }
  return out;
}

Step sample_step(const StaModel& sta, const Configuration& config, std::mt19937_64& rng) {
  const auto parts = delay_set(sta, config);
  const Location& loc = sta.locations()[config.location];
  if (parts.empty()) {
    fail(ErrorKind::DeadlockedConfiguration, "no delay enables an edge in " + format_configuration(sta, config));
  }
  const auto spans = merge(parts);
  Step step;
  if (!spans.empty()) {
    if (loc.kind == DelayKind::Dirac) {
      fail(ErrorKind::InvalidModel, "point delay in " + loc.name + " but the enabling delays have positive length");
    }
    step.delay = loc.kind == DelayKind::Exponential ? sample_exponential(spans, loc.rate, rng)
                                                    : sample_uniform(spans, rng, loc.name);
  } else {
    std::vector<double> points;
    for (const auto& [e, in] : parts) points.push_back(in.lo);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    step.delay = points[std::min(points.size() - 1, static_cast<std::size_t>(uniform(rng) * points.size()))];
  }

  std::uint64_t total = 0;
  std::vector<std::pair<std::size_t, std::uint64_t>> enabled;
  for (const auto& [e, in] : parts) {
    if (in.contains(step.delay)) {
      enabled.emplace_back(e, sta.edges()[e].weight);
      total += sta.edges()[e].weight;
    }
  }
  if (enabled.empty()) {
    // The delay fell on an open end point of a span through rounding.
    fail(ErrorKind::DeadlockedConfiguration, "sampled delay enables no edge in " + format_configuration(sta, config));
  }
  std::uint64_t pick = std::min<std::uint64_t>(total - 1, static_cast<std::uint64_t>(uniform(rng) * total));
  std::size_t chosen = enabled.back().first;
  for (const auto& [e, w] : enabled) {
    if (pick < w) {
      chosen = e;
      break;
    }
    pick -= w;
  }

  const Edge& edge = sta.edges()[chosen];
  step.edge = chosen;
  step.next.location = edge.to;
  step.next.clocks = config.clocks;
  for (std::size_t x = 0; x < step.next.clocks.size(); ++x) step.next.clocks[x] = config.clocks[x] + step.delay;
  // A delay equal to a guard bound puts that clock exactly on the constant;
  // the float sum may miss it by an ulp.
  for (const auto& c : edge.guard) {
    const double bound = static_cast<double>(c.constant) - config.clocks[c.clock];
    if (bound == step.delay) step.next.clocks[c.clock] = static_cast<double>(c.constant);
  }
  for (std::size_t x = 0; x < step.next.clocks.size(); ++x) {
    if (edge.resets >> x & 1) step.next.clocks[x] = 0.0;
  }
  return step;
}

}  // namespace decisive::sta
