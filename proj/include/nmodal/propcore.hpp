#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nmodal/formula.hpp"

namespace nmodal {

// Propositional formula over numbered variables. Produced by abstracting
// modal formulas: atoms and boxed formulas collapse to fresh variables.
class PropFormula {
public:
  enum class Kind : std::uint8_t { Bot, Var, Not, And, Or, Imp };

  Kind kind() const { return node_->kind; }
  int var() const;
  PropFormula left() const;
  PropFormula right() const;

  static PropFormula bot();
  static PropFormula var(int id);
  static PropFormula neg(PropFormula f);
  static PropFormula conj(PropFormula l, PropFormula r);
  static PropFormula disj(PropFormula l, PropFormula r);
  static PropFormula imp(PropFormula l, PropFormula r);

  // Highest variable id occurring, or -1.
  int max_var() const;
  bool eval(const std::vector<bool>& assignment) const;

  friend bool operator==(const PropFormula& a, const PropFormula& b);
  friend bool operator!=(const PropFormula& a, const PropFormula& b) {
    return !(a == b);
  }

private:
  struct Node {
    Kind kind;
    int var = -1;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
  };
  explicit PropFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Variable table for the abstraction map: one fresh variable per
// propositionally atomic formula (atom or boxed formula), keyed by the
// source formula's printed form so the assignment is stable across runs.
class AbstractionMap {
public:
  int var_for(const Formula& f);
  int var_count() const { return static_cast<int>(keys_.size()); }
  const std::string& key_of(int v) const { return keys_.at(v); }

private:
  std::unordered_map<std::string, int> by_key_;
  std::vector<std::string> keys_;
};

// The mapping I: bot to bot, propositionally atomic formulas (atoms and
// boxes) to fresh variables, homomorphic on ~, &, |, ->.
PropFormula abstraction(const Formula& f, AbstractionMap& vars);
PropFormula abstraction(const Formula& f);

// Complete search over all assignments; an assignment making f false,
// or nullopt when f is a tautology.
std::optional<std::vector<bool>> falsifying_assignment(const PropFormula& f);

bool is_tautology(const PropFormula& f);

// phi is a tautological consequence of xs: the implication from the
// conjunction of abstractions of xs to the abstraction of phi is a
// tautology (same abstraction map across all formulas).
bool tautological_consequence(const std::vector<Formula>& xs,
                              const Formula& phi);

}  // namespace nmodal
