#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <random>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "decisive/core/distribution.hpp"
#include "decisive/core/markov_chain.hpp"
#include "decisive/quantitative/result.hpp"
#include "decisive/quantitative/scheme.hpp"

namespace decisive {

using Rng = std::mt19937_64;

struct McOptions {
  std::size_t samples = 100000;
  double confidence = 0.99;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::size_t horizon = 10000;  // maximal path length
  double tail_cutoff = 1e-9;    // stop a path once its tail bound is this small
  std::size_t yes_classes = 1;
};

// Per-step outcome counts over all sampled paths.
struct McHistogram {
  std::size_t samples = 0;
  std::vector<std::vector<std::uint64_t>> yes_at;  // [class][n]
  std::vector<std::uint64_t> no_at;
  std::vector<std::uint64_t> truncated_at;
  std::vector<double> tail_at;  // summed tail bounds of paths truncated at n

  void init(std::size_t horizon, std::size_t classes);
  void merge(const McHistogram& other);
};

double hoeffding_half_width(std::size_t samples, double confidence);

// Turns a histogram into the scheme's interval: the first n with a raw gap
// below eps, or the horizon.
ApproxResult summarize(const McHistogram& histogram, const McOptions& options, const SchemeOptions& scheme);

// Samples paths of a model. A model provides
//   State initial(Rng&), void step(State&, Rng&),
//   ClassId classify(const State&, std::size_t n), double tail(const State&).
// Workers own contiguous sample blocks and a generator seeded from
// (seed, worker), so a fixed (seed, threads) pair reproduces bit for bit.
template <class Model>
McHistogram simulate(const Model& model, const McOptions& options) {
  const unsigned threads =
      static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(options.threads, options.samples)));
  std::vector<McHistogram> parts(threads);
  std::vector<std::exception_ptr> errors(threads);

  auto work = [&](unsigned w) {
    try {
      Model local = model;
      std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32), w};
      Rng rng(seq);
      McHistogram& h = parts[w];
      h.init(options.horizon, options.yes_classes);
      const std::size_t begin = options.samples * w / threads;
      const std::size_t end = options.samples * (w + 1) / threads;
      h.samples = end - begin;
      for (std::size_t i = begin; i < end; ++i) {
        auto state = local.initial(rng);
        for (std::size_t n = 0;; ++n) {
          const ClassId c = local.classify(state, n);
          if (c == kNo) {
            ++h.no_at[n];
            break;
          }
          if (c >= kYes) {
            ++h.yes_at[static_cast<std::size_t>(c - 1)][n];
            break;
          }
          const double u = std::clamp(local.tail(state), 0.0, 1.0);
          if (n == options.horizon || u <= options.tail_cutoff) {
            ++h.truncated_at[n];
            h.tail_at[n] += u;
            break;
          }
          local.step(state, rng);
        }
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  McHistogram total;
  total.init(options.horizon, options.yes_classes);
  for (const auto& part : parts) total.merge(part);
  return total;
}

// Samples a Markov chain from a finite initial distribution.
class ChainModel {
 public:
  using State = StateId;

  ChainModel(MarkovChain chain, const Distribution& mu, Classifier classify, std::function<double(StateId)> tail);

  StateId initial(Rng& rng) const;
  void step(StateId& s, Rng& rng);
  ClassId classify(StateId s, std::size_t n);
  double tail(StateId s) const { return tail_ ? tail_(s) : 1.0; }

 private:
  struct Cumulative {
    std::vector<double> bounds;
    std::vector<StateId> states;
  };
  static Cumulative cumulative(const Distribution& d);
  static StateId pick(const Cumulative& c, Rng& rng);

  MarkovChain chain_;
  Cumulative initial_;
  Classifier classify_;
  std::function<double(StateId)> tail_;
  std::unordered_map<StateId, Cumulative> rows_;
  std::unordered_map<StateId, ClassId> classes_;
};

double uniform01(Rng& rng);

}  // namespace decisive
