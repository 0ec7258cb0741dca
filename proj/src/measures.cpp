#include "decisive/core/measures.hpp"

#include <deque>
#include <map>
#include <set>

namespace decisive {

template <class T>
std::vector<T> exact_until_finite(const MarkovChain& chain, const StateSet& allowed, const StateSet& target) {
  const auto& states = chain.states();
  const std::size_t n = states.size();
  std::vector<char> in_target(n), in_allowed(n);
  for (std::size_t i = 0; i < n; ++i) {
    in_target[i] = target.contains(states[i]);
    in_allowed[i] = in_target[i] || allowed.contains(states[i]);
  }

  // Backward closure from the target through allowed states.
  std::vector<std::vector<std::size_t>> predecessors(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& e : chain.row(i).entries()) predecessors[chain.index_of(e.state)].push_back(i);
  }
  std::vector<char> reaches(n, 0);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (in_target[i]) {
      reaches[i] = 1;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    const auto j = queue.front();
    queue.pop_front();
    for (auto i : predecessors[j]) {
      if (!reaches[i] && in_allowed[i]) {
        reaches[i] = 1;
        queue.push_back(i);
      }
    }
  }

  std::vector<long> local(n, -1);
  std::vector<std::size_t> unknowns;
  for (std::size_t i = 0; i < n; ++i) {
    if (reaches[i] && !in_target[i]) {
      local[i] = static_cast<long>(unknowns.size());
      unknowns.push_back(i);
    }
  }

  const std::size_t m = unknowns.size();
  std::vector<std::map<std::size_t, T>> rows(m);
  std::vector<std::set<std::size_t>> column_rows(m);
  std::vector<T> rhs(m, Numeric<T>::zero());
  for (std::size_t r = 0; r < m; ++r) {
    rows[r][r] = Numeric<T>::one();
    column_rows[r].insert(r);
    for (const auto& e : chain.row(unknowns[r]).entries()) {
      const auto j = chain.index_of(e.state);
      const T p = Numeric<T>::from(e.prob);
      if (in_target[j]) {
        rhs[r] += p;
      } else if (local[j] >= 0) {
        const auto c = static_cast<std::size_t>(local[j]);
        rows[r][c] -= p;
        column_rows[c].insert(r);
      }
    }
  }

  for (std::size_t k = 0; k < m; ++k) {
    const T pivot = rows[k].at(k);
    if (Numeric<T>::is_zero(pivot)) fail(ErrorKind::InvalidModel, "singular reachability system");
    std::vector<std::size_t> below;
    for (auto r : column_rows[k]) {
      if (r > k) below.push_back(r);
    }
    for (auto r : below) {
      const T factor = rows[r].at(k) / pivot;
      rows[r].erase(k);
      column_rows[k].erase(r);
      for (const auto& [c, v] : rows[k]) {
        if (c == k) continue;
        auto [it, inserted] = rows[r].try_emplace(c, Numeric<T>::zero());
        it->second -= factor * v;
        if (inserted) column_rows[c].insert(r);
        if (Numeric<T>::is_zero(it->second)) {
          rows[r].erase(it);
          column_rows[c].erase(r);
        }
      }
      rhs[r] -= factor * rhs[k];
    }
  }

  std::vector<T> x(m, Numeric<T>::zero());
  for (std::size_t k = m; k-- > 0;) {
    T acc = rhs[k];
    for (const auto& [c, v] : rows[k]) {
      if (c > k) acc -= v * x[c];
    }
    x[k] = acc / rows[k].at(k);
  }

  std::vector<T> values(n, Numeric<T>::zero());
  for (std::size_t i = 0; i < n; ++i) {
    if (in_target[i]) {
      values[i] = Numeric<T>::one();
    } else if (local[i] >= 0) {
      values[i] = x[static_cast<std::size_t>(local[i])];
    }
  }
  return values;
}

template std::vector<Rational> exact_until_finite<Rational>(const MarkovChain&, const StateSet&, const StateSet&);
template std::vector<double> exact_until_finite<double>(const MarkovChain&, const StateSet&, const StateSet&);

}  // namespace decisive
