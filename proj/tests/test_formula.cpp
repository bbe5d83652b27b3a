#include <doctest.h>

#include <set>

#include "nmodal/formula.hpp"
#include "nmodal/gen.hpp"

using namespace nmodal;

TEST_CASE("parse atoms, bot and connectives") {
  CHECK(parse("p").is(FKind::Atom));
  CHECK(parse("p").atom_name() == "p");
  CHECK(parse("foo_bar9").atom_name() == "foo_bar9");
  CHECK(parse("bot").is(FKind::Bot));
  CHECK(parse("_|_").is(FKind::Bot));
  CHECK(parse("~p") == Formula::neg(Formula::atom("p")));
  CHECK(parse("!p") == Formula::neg(Formula::atom("p")));
  CHECK(parse("[]p") == Formula::box(Formula::atom("p")));
  CHECK(parse("p & q") ==
        Formula::conj(Formula::atom("p"), Formula::atom("q")));
  CHECK(parse("p | q") ==
        Formula::disj(Formula::atom("p"), Formula::atom("q")));
  CHECK(parse("p -> q") ==
        Formula::imp(Formula::atom("p"), Formula::atom("q")));
}

TEST_CASE("diamond is an abbreviation, never a node") {
  Formula d = parse("<>p");
  CHECK(d.is(FKind::Not));
  CHECK(d == Formula::neg(Formula::box(Formula::neg(Formula::atom("p")))));
  CHECK(d == Formula::dia(Formula::atom("p")));
  CHECK(to_string(d) == "~[]~p");
}

TEST_CASE("precedence and associativity") {
  // unary > & > | > ->, -> right-associative
  CHECK(parse("~p & q") ==
        Formula::conj(parse("~p"), parse("q")));
  CHECK(parse("p & q | r") == Formula::disj(parse("p & q"), parse("r")));
  CHECK(parse("p | q & r") == Formula::disj(parse("p"), parse("q & r")));
  CHECK(parse("p -> q -> r") ==
        Formula::imp(parse("p"), Formula::imp(parse("q"), parse("r"))));
  CHECK(parse("p & q -> r") == Formula::imp(parse("p & q"), parse("r")));
  CHECK(parse("[]p -> [][]p") ==
        Formula::imp(Formula::box(parse("p")),
                     Formula::box(Formula::box(parse("p")))));
  CHECK(parse("[]p & q") == Formula::conj(parse("[]p"), parse("q")));
  CHECK(parse("[](p & q)") == Formula::box(parse("p & q")));
}

TEST_CASE("printer emits minimal parentheses and round-trips") {
  CHECK(to_string(parse("p & q | r")) == "p & q | r");
  CHECK(to_string(parse("(p | q) & r")) == "(p | q) & r");
  CHECK(to_string(parse("p -> q -> r")) == "p -> q -> r");
  CHECK(to_string(parse("(p -> q) -> r")) == "(p -> q) -> r");
  CHECK(to_string(parse("~(p & q)")) == "~(p & q)");
  CHECK(to_string(parse("[](p -> p)")) == "[](p -> p)");
  CHECK(to_string(parse("~[]bot")) == "~[]bot");
  CHECK(to_string(Formula::bot()) == "bot");
}

TEST_CASE("round-trip property over random formulas") {
  GenOptions opts;
  opts.max_nodes = 12;
  FormulaGen gen(12345, opts);
  for (int i = 0; i < 300; ++i) {
    Formula f = gen.next();
    Formula g = parse(to_string(f));
    CHECK(g == f);
    CHECK(to_string(g) == to_string(f));
  }
}

TEST_CASE("parse errors carry offsets") {
  auto offset_of = [](const std::string& s) -> long {
    try {
      parse(s);
    } catch (const ParseError& e) {
      return static_cast<long>(e.offset);
    }
    return -1;
  };
  CHECK(offset_of("p ->") == 4);
  CHECK(offset_of("") == 0);
  CHECK(offset_of("(p") == 2);
  CHECK(offset_of(")p") == 0);
  CHECK(offset_of("p q") == 2);   // trailing junk
  CHECK(offset_of("p @ q") == 2); // unknown character
  CHECK(offset_of("P") == 0);     // atoms are lowercase
  CHECK(offset_of("[]") == 2);
  CHECK_THROWS_AS(parse("p &&& q"), ParseError);
}

TEST_CASE("subformulas: post-order, first occurrence, deduplicated") {
  Formula a = parse("[]p -> [][]p");
  auto subs = subformulas(a);
  REQUIRE(subs.size() == 4);
  CHECK(subs[0] == parse("p"));
  CHECK(subs[1] == parse("[]p"));
  CHECK(subs[2] == parse("[][]p"));
  CHECK(subs[3] == a);

  // shared subtrees appear once
  Formula b = parse("(p & q) -> (p & q)");
  auto bs = subformulas(b);
  CHECK(bs.size() == 4);  // p, q, p&q, root
}

TEST_CASE("complement strips one negation") {
  CHECK(complement(parse("p")) == parse("~p"));
  CHECK(complement(parse("~p")) == parse("p"));
  CHECK(complement(parse("~~p")) == parse("~p"));
  CHECK(complement(parse("[]p")) == parse("~[]p"));
}

TEST_CASE("closure adds complements") {
  auto cl = closure(parse("[]p"));
  std::set<std::string> printed;
  for (const auto& f : cl) printed.insert(to_string(f));
  CHECK(printed ==
        std::set<std::string>{"p", "[]p", "~p", "~[]p"});
}

TEST_CASE("chi swaps box and diamond") {
  CHECK(chi(parse("p")) == parse("p"));
  CHECK(chi(Formula::bot()) == Formula::bot());
  CHECK(chi(parse("[]p")) == parse("~[]~p"));
  CHECK(chi(parse("<>p")) == parse("[]p"));
  CHECK(chi(parse("p -> []q")) == parse("p -> ~[]~q"));
  CHECK(chi(parse("[]p & <>q")) == parse("~[]~p & []q"));
  CHECK(chi(parse("~[]bot")) == parse("~~[]~bot"));
  // chi commutes with propositional structure
  CHECK(chi(parse("~(p | q)")) == parse("~(p | q)"));
}

TEST_CASE("node_count, box_count, atom_names") {
  CHECK(node_count(parse("p")) == 1);
  CHECK(node_count(parse("[]p -> [][]p")) == 6);
  CHECK(box_count(parse("[]p -> [][]p")) == 3);
  CHECK(box_count(parse("p & q")) == 0);
  CHECK(atom_names(parse("q & p | q")) ==
        std::vector<std::string>{"p", "q"});
  CHECK(atom_names(Formula::bot()).empty());
}

TEST_CASE("structural equality and hashing") {
  Formula a = parse("(p -> q) & ~r");
  Formula b = parse("(p->q)&~r");
  CHECK(a == b);
  CHECK(FormulaHash{}(a) == FormulaHash{}(b));
  CHECK_FALSE(parse("p & q") == parse("q & p"));
}
