#include "nmodal/formula.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>
#include <utility>

namespace nmodal {

namespace {

std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t node_hash(FKind k, const std::string& name, std::size_t ha,
                      std::size_t hb) {
  std::size_t h = static_cast<std::size_t>(k) + 0x51;
  h = hash_combine(h, std::hash<std::string>{}(name));
  h = hash_combine(h, ha);
  h = hash_combine(h, hb);
  return h;
}

}  // namespace

Formula Formula::make(FKind k, std::string name, const Formula* l,
                      const Formula* r) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->name = std::move(name);
  if (l != nullptr) n->a = l->node_;
  if (r != nullptr) n->b = r->node_;
  n->hash = node_hash(k, n->name, n->a ? n->a->hash : 0x33,
                      n->b ? n->b->hash : 0x77);
  return Formula(std::move(n));
}

Formula Formula::bot() { return make(FKind::Bot, "", nullptr, nullptr); }

Formula Formula::atom(std::string name) {
  return make(FKind::Atom, std::move(name), nullptr, nullptr);
}

Formula Formula::neg(Formula f) { return make(FKind::Not, "", &f, nullptr); }

Formula Formula::conj(Formula l, Formula r) {
  return make(FKind::And, "", &l, &r);
}

Formula Formula::disj(Formula l, Formula r) {
  return make(FKind::Or, "", &l, &r);
}

Formula Formula::imp(Formula l, Formula r) {
  return make(FKind::Imp, "", &l, &r);
}

Formula Formula::box(Formula f) { return make(FKind::Box, "", &f, nullptr); }

Formula Formula::dia(Formula f) { return neg(box(neg(std::move(f)))); }

const std::string& Formula::atom_name() const {
  if (!is(FKind::Atom)) throw std::logic_error("atom_name: not an atom");
  return node_->name;
}

Formula Formula::left() const {
  if (!node_->a) throw std::logic_error("left: leaf formula");
  return Formula(node_->a);
}

Formula Formula::right() const {
  if (!node_->b) throw std::logic_error("right: not a binary formula");
  return Formula(node_->b);
}

bool operator==(const Formula& a, const Formula& b) {
  const Formula::Node* x = a.node_.get();
  const Formula::Node* y = b.node_.get();
  if (x == y) return true;
  if (x->hash != y->hash || x->kind != y->kind || x->name != y->name)
    return false;
  if ((x->a == nullptr) != (y->a == nullptr)) return false;
  if ((x->b == nullptr) != (y->b == nullptr)) return false;
  if (x->a && Formula(x->a) != Formula(y->a)) return false;
  if (x->b && Formula(x->b) != Formula(y->b)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Parser

ParseError::ParseError(const std::string& msg, std::size_t off)
    : std::runtime_error(msg + " at offset " + std::to_string(off)),
      offset(off) {}

namespace {

enum class Tok { Atom, Bot, Not, Box, Dia, And, Or, Imp, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

class Lexer {
public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_ws();
      std::size_t off = pos_;
      if (pos_ >= s_.size()) {
        out.push_back({Tok::End, "", off});
        break;
      }
      char c = s_[pos_];
      if (c == '~' || c == '!') {
        ++pos_;
        out.push_back({Tok::Not, std::string(1, c), off});
      } else if (c == '(') {
        ++pos_;
        out.push_back({Tok::LParen, "(", off});
      } else if (c == ')') {
        ++pos_;
        out.push_back({Tok::RParen, ")", off});
      } else if (c == '&') {
        ++pos_;
        out.push_back({Tok::And, "&", off});
      } else if (c == '|') {
        ++pos_;
        out.push_back({Tok::Or, "|", off});
      } else if (c == '-') {
        if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') {
          pos_ += 2;
          out.push_back({Tok::Imp, "->", off});
        } else {
          throw ParseError("expected '->'", off);
        }
      } else if (c == '[') {
        if (pos_ + 1 < s_.size() && s_[pos_ + 1] == ']') {
          pos_ += 2;
          out.push_back({Tok::Box, "[]", off});
        } else {
          throw ParseError("expected '[]'", off);
        }
      } else if (c == '<') {
        if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') {
          pos_ += 2;
          out.push_back({Tok::Dia, "<>", off});
        } else {
          throw ParseError("expected '<>'", off);
        }
      } else if (c == '_') {
        if (s_.substr(pos_, 3) == "_|_") {
          pos_ += 3;
          out.push_back({Tok::Bot, "_|_", off});
        } else {
          throw ParseError("expected '_|_'", off);
        }
      } else if (std::islower(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::islower(static_cast<unsigned char>(s_[pos_])) ||
                std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
                s_[pos_] == '_'))
          ++pos_;
        std::string name(s_.substr(start, pos_ - start));
        out.push_back({name == "bot" ? Tok::Bot : Tok::Atom, name, off});
      } else {
        throw ParseError("unexpected character '" + std::string(1, c) + "'",
                         off);
      }
    }
    return out;
  }

private:
  void skip_ws() {
    while (pos_ < s_.size() &&
           std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula run() {
    Formula f = parse_imp();
    if (peek().kind != Tok::End)
      throw ParseError("unexpected trailing input", peek().offset);
    return f;
  }

private:
  const Token& peek() const { return toks_[i_]; }
  Token next() { return toks_[i_++]; }

  Formula parse_imp() {
    Formula l = parse_or();
    if (peek().kind == Tok::Imp) {
      next();
      return Formula::imp(std::move(l), parse_imp());  // right-associative
    }
    return l;
  }

  Formula parse_or() {
    Formula l = parse_and();
    while (peek().kind == Tok::Or) {
      next();
      l = Formula::disj(std::move(l), parse_and());
    }
    return l;
  }

  Formula parse_and() {
    Formula l = parse_unary();
    while (peek().kind == Tok::And) {
      next();
      l = Formula::conj(std::move(l), parse_unary());
    }
    return l;
  }

  Formula parse_unary() {
    Token t = next();
    switch (t.kind) {
      case Tok::Not:
        return Formula::neg(parse_unary());
      case Tok::Box:
        return Formula::box(parse_unary());
      case Tok::Dia:
        return Formula::dia(parse_unary());
      case Tok::LParen: {
        Formula f = parse_imp();
        if (peek().kind != Tok::RParen)
          throw ParseError("expected ')'", peek().offset);
        next();
        return f;
      }
      case Tok::Atom:
        return Formula::atom(t.text);
      case Tok::Bot:
        return Formula::bot();
      default:
        throw ParseError("expected a formula", t.offset);
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

Formula parse(std::string_view text) {
  return Parser(Lexer(text).run()).run();
}

// ---------------------------------------------------------------------------
// Printer

namespace {

// Precedence levels: -> is 1, | is 2, & is 3, unary is 4, leaves are 5.
int precedence(FKind k) {
  switch (k) {
    case FKind::Imp:
      return 1;
    case FKind::Or:
      return 2;
    case FKind::And:
      return 3;
    case FKind::Not:
    case FKind::Box:
      return 4;
    default:
      return 5;
  }
}

void print_rec(const Formula& f, int min_prec, std::string& out) {
  int prec = precedence(f.kind());
  bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (f.kind()) {
    case FKind::Bot:
      out += "bot";
      break;
    case FKind::Atom:
      out += f.atom_name();
      break;
    case FKind::Not:
      out += '~';
      print_rec(f.left(), 4, out);
      break;
    case FKind::Box:
      out += "[]";
      print_rec(f.left(), 4, out);
      break;
    case FKind::And:
      print_rec(f.left(), 3, out);
      out += " & ";
      print_rec(f.right(), 4, out);
      break;
    case FKind::Or:
      print_rec(f.left(), 2, out);
      out += " | ";
      print_rec(f.right(), 3, out);
      break;
    case FKind::Imp:
      print_rec(f.left(), 2, out);
      out += " -> ";
      print_rec(f.right(), 1, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print_rec(f, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Subformula machinery

namespace {

void collect_post_order(const Formula& f,
                        std::unordered_set<Formula, FormulaHash>& seen,
                        std::vector<Formula>& out) {
  if (seen.count(f)) return;
  switch (f.kind()) {
    case FKind::Bot:
    case FKind::Atom:
      break;
    case FKind::Not:
    case FKind::Box:
      collect_post_order(f.left(), seen, out);
      break;
    default:
      collect_post_order(f.left(), seen, out);
      collect_post_order(f.right(), seen, out);
      break;
  }
  if (seen.insert(f).second) out.push_back(f);
}

}  // namespace

std::vector<Formula> subformulas(const Formula& f) {
  std::unordered_set<Formula, FormulaHash> seen;
  std::vector<Formula> out;
  collect_post_order(f, seen, out);
  return out;
}

Formula complement(const Formula& b) {
  return b.is(FKind::Not) ? b.left() : Formula::neg(b);
}

std::vector<Formula> closure(const Formula& f) {
  std::vector<Formula> out = subformulas(f);
  std::unordered_set<Formula, FormulaHash> seen(out.begin(), out.end());
  std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) {
    Formula c = complement(out[i]);
    if (seen.insert(c).second) out.push_back(c);
  }
  return out;
}

Formula chi(const Formula& f) {
  switch (f.kind()) {
    case FKind::Bot:
    case FKind::Atom:
      return f;
    case FKind::Not:
      // ~[]~B is <>B, which chi maps to []chi(B)
      if (f.left().is(FKind::Box) && f.left().left().is(FKind::Not))
        return Formula::box(chi(f.left().left().left()));
      return Formula::neg(chi(f.left()));
    case FKind::And:
      return Formula::conj(chi(f.left()), chi(f.right()));
    case FKind::Or:
      return Formula::disj(chi(f.left()), chi(f.right()));
    case FKind::Imp:
      return Formula::imp(chi(f.left()), chi(f.right()));
    case FKind::Box:
      return Formula::dia(chi(f.left()));
  }
  throw std::logic_error("chi: bad kind");
}

std::vector<std::string> atom_names(const Formula& f) {
  std::vector<std::string> out;
  for (const Formula& s : subformulas(f))
    if (s.is(FKind::Atom)) out.push_back(s.atom_name());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int node_count(const Formula& f) {
  switch (f.kind()) {
    case FKind::Bot:
    case FKind::Atom:
      return 1;
    case FKind::Not:
    case FKind::Box:
      return 1 + node_count(f.left());
    default:
      return 1 + node_count(f.left()) + node_count(f.right());
  }
}

int box_count(const Formula& f) {
  switch (f.kind()) {
    case FKind::Bot:
    case FKind::Atom:
      return 0;
    case FKind::Not:
      return box_count(f.left());
    case FKind::Box:
      return 1 + box_count(f.left());
    default:
      return box_count(f.left()) + box_count(f.right());
  }
}

}  // namespace nmodal
