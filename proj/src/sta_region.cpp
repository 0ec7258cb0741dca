#include "decisive/sta/region.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace decisive::sta {

namespace {

// Compacts nonzero classes to 1..k, keeping their order.
void renormalize(Region& r) {
  std::vector<std::int64_t> used;
  for (auto c : r.cls) {
    if (c > 0) used.push_back(c);
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  for (auto& c : r.cls) {
    if (c > 0) c = std::lower_bound(used.begin(), used.end(), c) - used.begin() + 1;
  }
}

}  // namespace

Region region_of(const std::vector<double>& clocks, std::int64_t max_constant) {
  Region r;
  r.ip.resize(clocks.size());
  r.cls.assign(clocks.size(), 0);
  std::vector<double> fracs;
  for (std::size_t x = 0; x < clocks.size(); ++x) {
    const double v = clocks[x];
    if (v > static_cast<double>(max_constant)) {
      r.ip[x] = max_constant + 1;
      continue;
    }
    const double whole = std::floor(v);
    r.ip[x] = static_cast<std::int64_t>(whole);
    if (v - whole > 0) fracs.push_back(v - whole);
  }
  std::sort(fracs.begin(), fracs.end());
  fracs.erase(std::unique(fracs.begin(), fracs.end()), fracs.end());
  for (std::size_t x = 0; x < clocks.size(); ++x) {
    if (r.ip[x] > max_constant) continue;
    const double f = clocks[x] - std::floor(clocks[x]);
    if (f > 0) r.cls[x] = std::lower_bound(fracs.begin(), fracs.end(), f) - fracs.begin() + 1;
  }
  return r;
}

bool is_above(const Region& r, std::size_t x, std::int64_t max_constant) { return r.ip[x] > max_constant; }

bool is_punctual(const Region& r, std::int64_t max_constant) {
  for (std::size_t x = 0; x < r.ip.size(); ++x) {
    if (!is_above(r, x, max_constant) && r.cls[x] == 0) return true;
  }
  return false;
}

bool is_memoryless(const Region& r, std::int64_t max_constant) {
  for (std::size_t x = 0; x < r.ip.size(); ++x) {
    if (is_above(r, x, max_constant)) continue;
    if (r.ip[x] != 0 || r.cls[x] != 0) return false;
  }
  return true;
}

bool is_unbounded(const Region& r, std::int64_t max_constant) {
  for (std::size_t x = 0; x < r.ip.size(); ++x) {
    if (!is_above(r, x, max_constant)) return false;
  }
  return true;
}

Region time_successor(const Region& r, std::int64_t max_constant) {
  Region next = r;
  const std::size_t n = r.ip.size();
  if (is_punctual(r, max_constant)) {
    for (std::size_t x = 0; x < n; ++x) {
      if (is_above(r, x, max_constant)) continue;
      if (r.cls[x] == 0) {
        if (r.ip[x] == max_constant) {
          next.ip[x] = max_constant + 1;
          next.cls[x] = 0;
        } else {
          next.cls[x] = 1;
        }
      } else {
        next.cls[x] = r.cls[x] + 1;
      }
    }
  } else {
    std::int64_t top = 0;
    for (std::size_t x = 0; x < n; ++x) {
      if (!is_above(r, x, max_constant)) top = std::max(top, r.cls[x]);
    }
    if (top == 0) return next;  // all clocks above M
    for (std::size_t x = 0; x < n; ++x) {
      if (!is_above(r, x, max_constant) && r.cls[x] == top) {
        next.ip[x] += 1;
        next.cls[x] = 0;
      }
    }
  }
  renormalize(next);
  return next;
}

Region reset(const Region& r, std::uint64_t clocks, std::int64_t /*max_constant*/) {
  Region next = r;
  for (std::size_t x = 0; x < r.ip.size(); ++x) {
    if (clocks >> x & 1) {
      next.ip[x] = 0;
      next.cls[x] = 0;
    }
  }
  renormalize(next);
  return next;
}

bool satisfies(const Guard& guard, const Region& r, std::int64_t max_constant) {
  for (const auto& c : guard) {
    const std::size_t x = c.clock;
    const std::int64_t k = c.constant;
    bool ok = false;
    if (is_above(r, x, max_constant)) {
      ok = c.op == Cmp::Gt || c.op == Cmp::Ge;
    } else if (r.cls[x] == 0) {
      const std::int64_t v = r.ip[x];
      switch (c.op) {
        case Cmp::Lt: ok = v < k; break;
        case Cmp::Le: ok = v <= k; break;
        case Cmp::Eq: ok = v == k; break;
        case Cmp::Ge: ok = v >= k; break;
        case Cmp::Gt: ok = v > k; break;
      }
    } else {
      const std::int64_t v = r.ip[x];
      switch (c.op) {
        case Cmp::Lt:
        case Cmp::Le: ok = v < k; break;
        case Cmp::Eq: ok = false; break;
        case Cmp::Ge:
        case Cmp::Gt: ok = v >= k; break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

std::vector<Region> delay_regions(const Region& r, std::int64_t max_constant) {
  std::vector<Region> out{r};
  while (!is_unbounded(out.back(), max_constant)) out.push_back(time_successor(out.back(), max_constant));
  return out;
}

std::string describe(const Region& r, const std::vector<std::string>& clocks, std::int64_t max_constant) {
  std::string out;
  auto add = [&out](const std::string& part) {
    if (!out.empty()) out += " && ";
    out += part;
  };
  for (std::size_t x = 0; x < r.ip.size(); ++x) {
    if (is_above(r, x, max_constant)) {
      add(clocks[x] + ">" + std::to_string(max_constant));
    } else if (r.cls[x] == 0) {
      add(clocks[x] + "=" + std::to_string(r.ip[x]));
    } else {
      add(std::to_string(r.ip[x]) + "<" + clocks[x] + "<" + std::to_string(r.ip[x] + 1));
    }
  }
  // Fractional ordering among clocks with a nonzero fractional part.
  std::map<std::int64_t, std::vector<std::string>> by_class;
  for (std::size_t x = 0; x < r.ip.size(); ++x) {
    if (!is_above(r, x, max_constant) && r.cls[x] > 0) by_class[r.cls[x]].push_back("{" + clocks[x] + "}");
  }
  if (by_class.size() > 1 || (by_class.size() == 1 && by_class.begin()->second.size() > 1)) {
    std::string order;
    for (const auto& [c, names] : by_class) {
      std::string group;
      for (const auto& name : names) group += (group.empty() ? "" : "=") + name;
      order += (order.empty() ? "" : "<") + group;
    }
    add(order);
  }
  return out.empty() ? "true" : out;
}

std::vector<double> sample_in_region(const Region& r, std::int64_t max_constant, std::mt19937_64& rng) {
  std::int64_t classes = 0;
  for (std::size_t x = 0; x < r.ip.size(); ++x) {
    if (!is_above(r, x, max_constant)) classes = std::max(classes, r.cls[x]);
  }
  // Class k gets a fractional part inside ((k - 1/2 ± 1/4) / classes), so
  // ranks are preserved.
  std::uniform_real_distribution<double> jitter(-0.25, 0.25);
  std::vector<double> frac(static_cast<std::size_t>(classes) + 1, 0.0);
  for (std::int64_t k = 1; k <= classes; ++k) {
    frac[static_cast<std::size_t>(k)] = (static_cast<double>(k) - 0.5 + jitter(rng)) / static_cast<double>(classes);
  }
  std::uniform_real_distribution<double> above(0.0, 3.0);
  std::vector<double> v(r.ip.size());
  for (std::size_t x = 0; x < r.ip.size(); ++x) {
    if (is_above(r, x, max_constant)) {
      v[x] = static_cast<double>(max_constant) + 1e-3 + above(rng);
    } else {
      v[x] = static_cast<double>(r.ip[x]) + frac[static_cast<std::size_t>(r.cls[x])];
    }
  }
  return v;
}

}  // namespace decisive::sta
