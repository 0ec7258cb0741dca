#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "decisive/qualitative/evidence.hpp"
#include "decisive/rational.hpp"

namespace decisive {

enum class Status { Converged, Stalled, BudgetExhausted };

std::string to_string(Status status);

struct SamplingInfo {
  std::size_t samples = 0;
  double confidence = 0.0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  double half_width = 0.0;  // Hoeffding slack folded into [lo, hi]
};

// Interval [lo, hi] from an approximation scheme run.
struct ApproxResult {
  std::string property;
  double lo = 0.0;
  double hi = 1.0;
  // Set by exact-mode runs.
  std::optional<Rational> exact_lo;
  std::optional<Rational> exact_hi;
  std::size_t iterations = 0;
  Status status = Status::BudgetExhausted;
  double eps = 0.0;
  DecisivenessEvidence evidence;
  std::optional<SamplingInfo> sampling;
  // Lower bound per target class (one entry for plain reachability).
  std::vector<double> class_lo;
  std::vector<std::string> class_names;
  // (lo_n, hi_n) for every n, when requested.
  std::vector<std::pair<Rational, Rational>> trace;
  std::vector<std::string> notes;

  double gap() const { return hi - lo; }
  bool tainted() const { return evidence.taints(); }
  bool contains(double value) const { return lo <= value && value <= hi; }
};

nlohmann::json to_json(const ApproxResult& result);
std::string to_text(const ApproxResult& result);

}  // namespace decisive
