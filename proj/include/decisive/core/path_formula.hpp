#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "decisive/core/state_set.hpp"

namespace decisive {

enum class BoundKind { Le, Eq, Ge, Unbounded };

struct FormulaNode;
using PathFormula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  enum class Kind { True, False, Set, Until, And, Or, Not };
  Kind kind = Kind::True;
  StateSet set;
  PathFormula left;
  PathFormula right;
  BoundKind bound = BoundKind::Unbounded;
  std::size_t k = 0;
};

PathFormula f_true();
PathFormula f_false();
PathFormula f_set(StateSet set);
PathFormula f_until(PathFormula left, PathFormula right, BoundKind bound = BoundKind::Unbounded, std::size_t k = 0);
PathFormula f_and(PathFormula a, PathFormula b);
PathFormula f_or(PathFormula a, PathFormula b);
PathFormula f_not(PathFormula a);
// F⋈k φ = true U⋈k φ and G⋈k φ = ¬F⋈k ¬φ.
PathFormula f_eventually(PathFormula a, BoundKind bound = BoundKind::Unbounded, std::size_t k = 0);
PathFormula f_globally(PathFormula a, BoundKind bound = BoundKind::Unbounded, std::size_t k = 0);

// Number of positions past the current one that the formula inspects.
// Throws UnboundedFormula for unbounded or ≥-bounded operators.
std::size_t temporal_depth(const PathFormula& f);

std::string to_string(const PathFormula& f);

// Hash-consed formula progression: progress(f, s) is the obligation on the
// suffix after reading state s at the current position.
class FormulaProgression {
 public:
  static constexpr int kTrue = 0;
  static constexpr int kFalse = 1;

  FormulaProgression();
  int compile(const PathFormula& f);
  int progress(int f, StateId s);
  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    FormulaNode::Kind kind;
    int left = -1;
    int right = -1;
    std::size_t set_slot = 0;
    BoundKind bound = BoundKind::Unbounded;
    std::size_t k = 0;
  };
  using Key = std::tuple<int, int, int, std::size_t, int, std::size_t>;

  int intern(Node node);
  int make_and(int a, int b);
  int make_or(int a, int b);
  int make_not(int a);
  int make_until(int left, int right, BoundKind bound, std::size_t k);

  std::vector<Node> nodes_;
  std::map<Key, int> index_;
  std::vector<StateSet> sets_;
  std::map<std::uint64_t, std::size_t> set_slots_;
  std::map<std::pair<int, std::int64_t>, int> memo_;
};

}  // namespace decisive
