#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nmodal {

enum class FKind : std::uint8_t { Bot, Atom, Not, And, Or, Imp, Box };

// Immutable modal formula over bot, atoms, ~, &, |, ->, [].
// <> never appears in the AST; the parser expands <>A to ~[]~A.
// Value semantics over a shared node; structural equality.
class Formula {
public:
  Formula() : Formula(bot()) {}

  FKind kind() const { return node_->kind; }
  bool is(FKind k) const { return node_->kind == k; }
  bool is_binary() const {
    return is(FKind::And) || is(FKind::Or) || is(FKind::Imp);
  }

  // Atom only.
  const std::string& atom_name() const;
  // Child of Not/Box, left operand of a binary connective.
  Formula left() const;
  // Right operand of a binary connective.
  Formula right() const;

  std::size_t hash() const { return node_->hash; }

  static Formula bot();
  static Formula atom(std::string name);
  static Formula neg(Formula f);
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula imp(Formula l, Formula r);
  static Formula box(Formula f);
  // Parsed form of <>f.
  static Formula dia(Formula f);

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) {
    return !(a == b);
  }

private:
  struct Node {
    FKind kind;
    std::string name;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
    std::size_t hash;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(FKind k, std::string name, const Formula* l,
                      const Formula* r);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t off);
  std::size_t offset;
};

// Grammar (ASCII): atoms [a-z][a-z0-9_]*; "bot" or "_|_"; ~ or ! ; [] ; <> ;
// & ; | ; -> (right-associative); unary binds tightest, then &, |, ->.
Formula parse(std::string_view text);

// Minimal-parentheses printer for the same grammar; parse(to_string(f)) == f.
std::string to_string(const Formula& f);

// Sub(f): f plus all proper subformulas, deduplicated, post-order (every
// proper subformula precedes any formula containing it).
std::vector<Formula> subformulas(const Formula& f);

// ~B in the complement sense: C when B is ~C, otherwise ~B.
Formula complement(const Formula& b);

// Sub(f) followed by the complements of its members, deduplicated.
std::vector<Formula> closure(const Formula& f);

// Replaces every [] with <> (i.e. Box X becomes ~[]~X), homomorphic elsewhere.
Formula chi(const Formula& f);

// Sorted, deduplicated atom names occurring in f.
std::vector<std::string> atom_names(const Formula& f);

int node_count(const Formula& f);
int box_count(const Formula& f);

}  // namespace nmodal
