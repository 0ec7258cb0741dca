#include "decisive/core/path_formula.hpp"

#include <algorithm>
#include <sstream>

#include "decisive/error.hpp"

namespace decisive {

namespace {

PathFormula make(FormulaNode node) { return std::make_shared<const FormulaNode>(std::move(node)); }

const char* bound_text(BoundKind bound) {
  switch (bound) {
    case BoundKind::Le: return "<=";
    case BoundKind::Eq: return "=";
    case BoundKind::Ge: return ">=";
    case BoundKind::Unbounded: return "";
  }
  return "";
}

PathFormula constant(FormulaNode::Kind kind) {
  FormulaNode node;
  node.kind = kind;
  return make(std::move(node));
}

}  // namespace

PathFormula f_true() { return constant(FormulaNode::Kind::True); }
PathFormula f_false() { return constant(FormulaNode::Kind::False); }

PathFormula f_set(StateSet set) {
  FormulaNode node;
  node.kind = FormulaNode::Kind::Set;
  node.set = std::move(set);
  return make(std::move(node));
}

PathFormula f_until(PathFormula left, PathFormula right, BoundKind bound, std::size_t k) {
  FormulaNode node;
  node.kind = FormulaNode::Kind::Until;
  node.left = std::move(left);
  node.right = std::move(right);
  node.bound = bound;
  node.k = k;
  return make(std::move(node));
}

PathFormula f_and(PathFormula a, PathFormula b) {
  FormulaNode node;
  node.kind = FormulaNode::Kind::And;
  node.left = std::move(a);
  node.right = std::move(b);
  return make(std::move(node));
}

PathFormula f_or(PathFormula a, PathFormula b) {
  FormulaNode node;
  node.kind = FormulaNode::Kind::Or;
  node.left = std::move(a);
  node.right = std::move(b);
  return make(std::move(node));
}

PathFormula f_not(PathFormula a) {
  FormulaNode node;
  node.kind = FormulaNode::Kind::Not;
  node.left = std::move(a);
  return make(std::move(node));
}

PathFormula f_eventually(PathFormula a, BoundKind bound, std::size_t k) {
  return f_until(f_true(), std::move(a), bound, k);
}

PathFormula f_globally(PathFormula a, BoundKind bound, std::size_t k) {
  return f_not(f_eventually(f_not(std::move(a)), bound, k));
}

std::size_t temporal_depth(const PathFormula& f) {
  switch (f->kind) {
    case FormulaNode::Kind::True:
    case FormulaNode::Kind::False:
    case FormulaNode::Kind::Set:
      return 0;
    case FormulaNode::Kind::Not:
      return temporal_depth(f->left);
    case FormulaNode::Kind::And:
    case FormulaNode::Kind::Or:
      return std::max(temporal_depth(f->left), temporal_depth(f->right));
    case FormulaNode::Kind::Until:
      if (f->bound == BoundKind::Unbounded || f->bound == BoundKind::Ge) {
        fail(ErrorKind::UnboundedFormula, "formula " + to_string(f) + " has no finite horizon");
      }
      return f->k + std::max(temporal_depth(f->left), temporal_depth(f->right));
  }
  return 0;
}

std::string to_string(const PathFormula& f) {
  std::ostringstream out;
  switch (f->kind) {
    case FormulaNode::Kind::True: out << "true"; break;
    case FormulaNode::Kind::False: out << "false"; break;
    case FormulaNode::Kind::Set: out << f->set.description(); break;
    case FormulaNode::Kind::Not: out << "!" << to_string(f->left); break;
    case FormulaNode::Kind::And: out << "(" << to_string(f->left) << " & " << to_string(f->right) << ")"; break;
    case FormulaNode::Kind::Or: out << "(" << to_string(f->left) << " | " << to_string(f->right) << ")"; break;
    case FormulaNode::Kind::Until:
      out << "(" << to_string(f->left) << " U" << bound_text(f->bound);
      if (f->bound != BoundKind::Unbounded) out << f->k;
      out << " " << to_string(f->right) << ")";
      break;
  }
  return out.str();
}

FormulaProgression::FormulaProgression() {
  intern({FormulaNode::Kind::True});
  intern({FormulaNode::Kind::False});
}

int FormulaProgression::intern(Node node) {
  const Key key{static_cast<int>(node.kind), node.left, node.right, node.set_slot, static_cast<int>(node.bound),
                node.k};
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(node);
  index_.emplace(key, id);
  return id;
}

int FormulaProgression::make_and(int a, int b) {
  if (a == kFalse || b == kFalse) return kFalse;
  if (a == kTrue) return b;
  if (b == kTrue) return a;
  if (a == b) return a;
  if (a > b) std::swap(a, b);
  return intern({FormulaNode::Kind::And, a, b});
}

int FormulaProgression::make_or(int a, int b) {
  if (a == kTrue || b == kTrue) return kTrue;
  if (a == kFalse) return b;
  if (b == kFalse) return a;
  if (a == b) return a;
  if (a > b) std::swap(a, b);
  return intern({FormulaNode::Kind::Or, a, b});
}

int FormulaProgression::make_not(int a) {
  if (a == kTrue) return kFalse;
  if (a == kFalse) return kTrue;
  if (nodes_[a].kind == FormulaNode::Kind::Not) return nodes_[a].left;
  return intern({FormulaNode::Kind::Not, a});
}

int FormulaProgression::make_until(int left, int right, BoundKind bound, std::size_t k) {
  Node node{FormulaNode::Kind::Until, left, right};
  node.bound = bound;
  node.k = k;
  return intern(node);
}

int FormulaProgression::compile(const PathFormula& f) {
  temporal_depth(f);  // rejects unbounded operators up front
  switch (f->kind) {
    case FormulaNode::Kind::True: return kTrue;
    case FormulaNode::Kind::False: return kFalse;
    case FormulaNode::Kind::Set: {
      auto [it, inserted] = set_slots_.try_emplace(f->set.id(), sets_.size());
      if (inserted) sets_.push_back(f->set);
      Node node{FormulaNode::Kind::Set};
      node.set_slot = it->second;
      return intern(node);
    }
    case FormulaNode::Kind::Not: return make_not(compile(f->left));
    case FormulaNode::Kind::And: return make_and(compile(f->left), compile(f->right));
    case FormulaNode::Kind::Or: return make_or(compile(f->left), compile(f->right));
    case FormulaNode::Kind::Until: return make_until(compile(f->left), compile(f->right), f->bound, f->k);
  }
  return kFalse;
}

int FormulaProgression::progress(int f, StateId s) {
  if (f == kTrue || f == kFalse) return f;
  const auto memo_key = std::make_pair(f, s.value);
  if (auto it = memo_.find(memo_key); it != memo_.end()) return it->second;
  const Node node = nodes_[f];
  int result = kFalse;
  switch (node.kind) {
    case FormulaNode::Kind::True: result = kTrue; break;
    case FormulaNode::Kind::False: result = kFalse; break;
    case FormulaNode::Kind::Set: result = sets_[node.set_slot].contains(s) ? kTrue : kFalse; break;
    case FormulaNode::Kind::Not: result = make_not(progress(node.left, s)); break;
    case FormulaNode::Kind::And: {
      const int a = progress(node.left, s);
      result = a == kFalse ? kFalse : make_and(a, progress(node.right, s));
      break;
    }
    case FormulaNode::Kind::Or: {
      const int a = progress(node.left, s);
      result = a == kTrue ? kTrue : make_or(a, progress(node.right, s));
      break;
    }
    case FormulaNode::Kind::Until: {
      const int now = progress(node.right, s);
      if (node.bound == BoundKind::Le) {
        if (node.k == 0) {
          result = now;
        } else {
          const int rest = make_and(progress(node.left, s), make_until(node.left, node.right, BoundKind::Le, node.k - 1));
          result = make_or(now, rest);
        }
      } else {
        // Eq: the right operand must hold exactly k positions ahead.
        if (node.k == 0) {
          result = now;
        } else {
          result = make_and(progress(node.left, s), make_until(node.left, node.right, BoundKind::Eq, node.k - 1));
        }
      }
      break;
    }
  }
  memo_.emplace(memo_key, result);
  return result;
}

}  // namespace decisive
