#include "decisive/quantitative/result.hpp"

#include <sstream>

namespace decisive {

std::string to_string(Status status) {
  switch (status) {
    case Status::Converged: return "converged";
    case Status::Stalled: return "stalled";
    case Status::BudgetExhausted: return "budget-exhausted";
  }
  return "unknown";
}

nlohmann::json to_json(const ApproxResult& result) {
  nlohmann::json doc;
  doc["property"] = result.property;
  doc["interval"] = {format_decimal(result.lo), format_decimal(result.hi)};
  if (result.exact_lo && result.exact_hi) {
    doc["exact_interval"] = {format_rational(*result.exact_lo), format_rational(*result.exact_hi)};
  }
  doc["iterations"] = result.iterations;
  doc["status"] = to_string(result.status);
  doc["eps"] = format_decimal(result.eps);
  doc["residual"] = format_decimal(result.gap());
  doc["evidence"] = to_json(result.evidence);
  doc["tainted"] = result.tainted();
  if (result.sampling) {
    doc["seed"] = result.sampling->seed;
    doc["sampling"] = {{"samples", result.sampling->samples},
                       {"confidence", format_decimal(result.sampling->confidence)},
                       {"threads", result.sampling->threads},
                       {"half_width", format_decimal(result.sampling->half_width)}};
  } else {
    doc["seed"] = nullptr;
  }
  if (result.class_lo.size() > 1) {
    nlohmann::json parts = nlohmann::json::array();
    for (std::size_t k = 0; k < result.class_lo.size(); ++k) {
      const std::string name = k < result.class_names.size() ? result.class_names[k] : std::to_string(k + 1);
      parts.push_back({{"target", name}, {"lo", format_decimal(result.class_lo[k])}});
    }
    doc["breakdown"] = parts;
  }
  doc["notes"] = result.notes;
  return doc;
}

std::string to_text(const ApproxResult& result) {
  std::ostringstream out;
  out << result.property << ": [" << format_decimal(result.lo) << ", " << format_decimal(result.hi) << "] "
      << to_string(result.status) << " after " << result.iterations << " iterations";
  if (result.sampling) {
    out << " (" << result.sampling->samples << " samples, confidence " << format_decimal(result.sampling->confidence)
        << ", seed " << result.sampling->seed << ")";
  }
  if (result.tainted()) out << " TAINTED";
  out << "\n  evidence: " << result.evidence.describe();
  for (const auto& note : result.notes) out << "\n  " << note;
  return out.str();
}

}  // namespace decisive
