#include "nmodal/propcore.hpp"

#include <algorithm>
#include <stdexcept>

namespace nmodal {

int PropFormula::var() const {
  if (kind() != Kind::Var) throw std::logic_error("var: not a variable");
  return node_->var;
}

PropFormula PropFormula::left() const {
  if (!node_->a) throw std::logic_error("left: leaf");
  return PropFormula(node_->a);
}

PropFormula PropFormula::right() const {
  if (!node_->b) throw std::logic_error("right: not binary");
  return PropFormula(node_->b);
}

PropFormula PropFormula::bot() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Bot;
  return PropFormula(std::move(n));
}

PropFormula PropFormula::var(int id) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->var = id;
  return PropFormula(std::move(n));
}

PropFormula PropFormula::neg(PropFormula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->a = f.node_;
  return PropFormula(std::move(n));
}

PropFormula PropFormula::conj(PropFormula l, PropFormula r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->a = l.node_;
  n->b = r.node_;
  return PropFormula(std::move(n));
}

PropFormula PropFormula::disj(PropFormula l, PropFormula r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->a = l.node_;
  n->b = r.node_;
  return PropFormula(std::move(n));
}

PropFormula PropFormula::imp(PropFormula l, PropFormula r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Imp;
  n->a = l.node_;
  n->b = r.node_;
  return PropFormula(std::move(n));
}

int PropFormula::max_var() const {
  switch (kind()) {
    case Kind::Bot:
      return -1;
    case Kind::Var:
      return node_->var;
    case Kind::Not:
      return left().max_var();
    default:
      return std::max(left().max_var(), right().max_var());
  }
}

bool PropFormula::eval(const std::vector<bool>& assignment) const {
  switch (kind()) {
    case Kind::Bot:
      return false;
    case Kind::Var:
      return assignment.at(static_cast<std::size_t>(node_->var));
    case Kind::Not:
      return !left().eval(assignment);
    case Kind::And:
      return left().eval(assignment) && right().eval(assignment);
    case Kind::Or:
      return left().eval(assignment) || right().eval(assignment);
    case Kind::Imp:
      return !left().eval(assignment) || right().eval(assignment);
  }
  throw std::logic_error("eval: bad kind");
}

bool operator==(const PropFormula& a, const PropFormula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case PropFormula::Kind::Bot:
      return true;
    case PropFormula::Kind::Var:
      return a.var() == b.var();
    case PropFormula::Kind::Not:
      return a.left() == b.left();
    default:
      return a.left() == b.left() && a.right() == b.right();
  }
}

int AbstractionMap::var_for(const Formula& f) {
  std::string key = to_string(f);
  auto it = by_key_.find(key);
  if (it != by_key_.end()) return it->second;
  int id = static_cast<int>(keys_.size());
  by_key_.emplace(std::move(key), id);
  keys_.push_back(to_string(f));
  return id;
}

PropFormula abstraction(const Formula& f, AbstractionMap& vars) {
  switch (f.kind()) {
    case FKind::Bot:
      return PropFormula::bot();
    case FKind::Atom:
    case FKind::Box:
      return PropFormula::var(vars.var_for(f));
    case FKind::Not:
      return PropFormula::neg(abstraction(f.left(), vars));
    case FKind::And:
      return PropFormula::conj(abstraction(f.left(), vars),
                               abstraction(f.right(), vars));
    case FKind::Or:
      return PropFormula::disj(abstraction(f.left(), vars),
                               abstraction(f.right(), vars));
    case FKind::Imp:
      return PropFormula::imp(abstraction(f.left(), vars),
                              abstraction(f.right(), vars));
  }
  throw std::logic_error("abstraction: bad kind");
}

PropFormula abstraction(const Formula& f) {
  AbstractionMap vars;
  return abstraction(f, vars);
}

std::optional<std::vector<bool>> falsifying_assignment(const PropFormula& f) {
  int n = f.max_var() + 1;
  if (n > 25)
    throw std::runtime_error("propositional search limit exceeded (" +
                             std::to_string(n) + " variables)");
  std::vector<bool> a(static_cast<std::size_t>(n), false);
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] = (mask >> i) & 1;
    if (!f.eval(a)) return a;
  }
  return std::nullopt;
}

bool is_tautology(const PropFormula& f) {
  return !falsifying_assignment(f).has_value();
}

bool tautological_consequence(const std::vector<Formula>& xs,
                              const Formula& phi) {
  AbstractionMap vars;
  PropFormula goal = abstraction(phi, vars);
  if (xs.empty()) return is_tautology(goal);
  PropFormula premise = abstraction(xs.front(), vars);
  for (std::size_t i = 1; i < xs.size(); ++i)
    premise = PropFormula::conj(premise, abstraction(xs[i], vars));
  return is_tautology(PropFormula::imp(premise, goal));
}

}  // namespace nmodal
