#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "nmodal/decide.hpp"
#include "nmodal/formula.hpp"
#include "nmodal/gen.hpp"
#include "nmodal/propcore.hpp"
#include "nmodal/semantics.hpp"

using namespace nmodal;

namespace {

// Independent world-type oracle: enumerate every boolean assignment over
// Sub(A) as a map, keep the coherent (and, for NF/NRF, 4-closed) ones.
// Shares no code with world_types beyond the subformula list.
std::set<std::vector<bool>> reference_types(const Formula& a, LogicId logic) {
  auto subs = subformulas(a);
  const std::size_t n = subs.size();
  REQUIRE(n <= 16);
  std::set<std::vector<bool>> out;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    std::map<std::string, bool> val;
    for (std::size_t i = 0; i < n; ++i)
      val[to_string(subs[i])] = (mask >> i) & 1;
    auto value_of = [&](auto&& self, const Formula& f) -> bool {
      switch (f.kind()) {
        case FKind::Bot: return false;
        case FKind::Atom:
        case FKind::Box: return val.at(to_string(f));
        case FKind::Not: return !self(self, f.left());
        case FKind::And:
          return self(self, f.left()) && self(self, f.right());
        case FKind::Or:
          return self(self, f.left()) || self(self, f.right());
        case FKind::Imp:
          return !self(self, f.left()) || self(self, f.right());
      }
      return false;
    };
    bool coherent = true;
    for (const Formula& s : subs)
      if (val.at(to_string(s)) != value_of(value_of, s)) coherent = false;
    if (!coherent) continue;
    if (has_four_axiom(logic)) {
      bool closed = true;
      for (const Formula& s : subs)
        if (s.is(FKind::Box) && s.left().is(FKind::Box) &&
            val.at(to_string(s.left())) && !val.at(to_string(s)))
          closed = false;
      if (!closed) continue;
    }
    std::vector<bool> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = val.at(to_string(subs[i]));
    out.insert(bits);
  }
  return out;
}

std::set<std::vector<bool>> as_bitvecs(const std::vector<TypeBits>& types,
                                       std::size_t n) {
  std::set<std::vector<bool>> out;
  for (TypeBits t : types) {
    std::vector<bool> bits(n);
    for (std::size_t i = 0; i < n; ++i)
      bits[i] = type_bit(t, static_cast<int>(i));
    out.insert(bits);
  }
  return out;
}

void check_integrity(LogicId logic, const Formula& a, const Verdict& v) {
  REQUIRE_FALSE(v.valid);
  REQUIRE(v.countermodel.has_value());
  CHECK_FALSE(forces(*v.countermodel, v.refuting_world, a));
  CHECK(check_conditions(v.countermodel->frame(), logic, a).ok());
}

}  // namespace

TEST_CASE("world_types against the reference enumeration") {
  for (const char* text :
       {"p", "bot", "[]p -> [][]p", "~[]bot", "[](p -> q) -> ([]p -> []q)",
        "[]p & ~[]~q", "[][]bot -> []bot", "p -> [](p | ~q)"}) {
    Formula a = parse(text);
    auto subs = subformulas(a);
    for (LogicId logic : kAllLogics) {
      CAPTURE(text);
      CAPTURE(to_string(logic));
      auto got = as_bitvecs(world_types(a, logic), subs.size());
      CHECK(got == reference_types(a, logic));
    }
  }
}

TEST_CASE("world_types pinned counts") {
  CHECK(world_types(parse("p"), LogicId::N).size() == 2);
  CHECK(world_types(parse("bot"), LogicId::N).size() == 1);
  CHECK(world_types(parse("bot"), LogicId::NRF).size() == 1);
  // 8 free combinations over {p, []p, [][]p}; 4-closure strikes the two
  // with []p true and [][]p false
  CHECK(world_types(parse("[]p -> [][]p"), LogicId::NF).size() == 6);
  CHECK(world_types(parse("[]p -> [][]p"), LogicId::N).size() == 8);
}

TEST_CASE("decide: known verdicts") {
  // the 4-axiom separates NF/NRF from N/NR
  CHECK(decide(LogicId::NF, parse("[]p -> [][]p")).valid);
  CHECK(decide(LogicId::NRF, parse("[]p -> [][]p")).valid);
  CHECK_FALSE(decide(LogicId::N, parse("[]p -> [][]p")).valid);
  CHECK_FALSE(decide(LogicId::NR, parse("[]p -> [][]p")).valid);
  // the Rosser rule separates NR/NRF from N/NF
  CHECK(decide(LogicId::NR, parse("~[]bot")).valid);
  CHECK(decide(LogicId::NRF, parse("~[]bot")).valid);
  CHECK_FALSE(decide(LogicId::N, parse("~[]bot")).valid);
  CHECK_FALSE(decide(LogicId::NF, parse("~[]bot")).valid);
  // necessitation holds everywhere
  for (LogicId logic : kAllLogics)
    CHECK(decide(logic, parse("[](p -> p)")).valid);
  // the K axiom fails everywhere
  for (LogicId logic : kAllLogics)
    CHECK_FALSE(
        decide(logic, parse("[](p -> q) -> ([]p -> []q)")).valid);
}

TEST_CASE("decide: countermodels are certified") {
  for (LogicId logic : kAllLogics) {
    for (const char* text :
         {"[](p -> q) -> ([]p -> []q)", "p", "[]p -> p", "[]p | ~p",
          "[]~p -> ~[]p"}) {
      Formula a = parse(text);
      Verdict v = decide(logic, a);
      if (!v.valid) check_integrity(logic, a, v);
    }
  }
}

TEST_CASE("decide(N, ~[]bot): one-world countermodel with empty relation") {
  Verdict v = decide(LogicId::N, parse("~[]bot"));
  REQUIRE_FALSE(v.valid);
  check_integrity(LogicId::N, parse("~[]bot"), v);
  CHECK(v.countermodel->frame().world_count() == 1);
  CHECK(v.countermodel->frame().edges(Formula::bot()).empty());
  CHECK(forces(*v.countermodel, v.refuting_world, parse("[]bot")));
}

TEST_CASE("truth lemma on extracted models") {
  // For []p -> [][]p the full type set already meets (w1) and (w2), so it
  // is a legitimate input to extract_model; the truth lemma then says the
  // truth of every subformula at world i equals its bit in type i.
  for (LogicId logic : {LogicId::N, LogicId::NR, LogicId::NF, LogicId::NRF}) {
    Formula a = parse("[]p -> [][]p");
    SubTable st = make_subtable(a);
    std::vector<TypeBits> types = world_types(st, logic);
    NModel m = extract_model(types, st, logic);
    REQUIRE(m.frame().world_count() == static_cast<int>(types.size()));
    for (std::size_t i = 0; i < types.size(); ++i)
      for (std::size_t c = 0; c < st.subs.size(); ++c) {
        CAPTURE(to_string(logic));
        CAPTURE(i);
        CAPTURE(to_string(st.subs[c]));
        CHECK(forces(m, static_cast<int>(i), st.subs[c]) ==
              type_bit(types[i], static_cast<int>(c)));
      }
    // and the extracted frame meets the logic's conditions
    CHECK(check_conditions(m.frame(), logic, a).ok());
  }
}

TEST_CASE("extract_model: the documented one-world example") {
  Formula a = parse("~[]bot");
  SubTable st = make_subtable(a);
  auto types = world_types(st, LogicId::N);
  REQUIRE(types.size() == 2);
  // pick v with v([]bot) = true
  int box_pos = st.index_of(parse("[]bot"));
  REQUIRE(box_pos >= 0);
  std::vector<TypeBits> s;
  for (TypeBits t : types)
    if (type_bit(t, box_pos)) s.push_back(t);
  REQUIRE(s.size() == 1);
  NModel m = extract_model(s, st, LogicId::N);
  CHECK(m.frame().world_count() == 1);
  CHECK(m.frame().edges(Formula::bot()).empty());
  CHECK(forces(m, m.frame().worlds()[0], parse("[]bot")));
}

TEST_CASE("extract_model rejects witness violations") {
  Formula a = parse("[]p");
  SubTable st = make_subtable(a);
  int p_pos = st.index_of(parse("p"));
  int box_pos = st.index_of(parse("[]p"));
  auto types = world_types(st, LogicId::N);
  // v([]p)=false, v(p)=true: (w1) demands a type with p false
  std::vector<TypeBits> bad;
  for (TypeBits t : types)
    if (!type_bit(t, box_pos) && type_bit(t, p_pos)) bad.push_back(t);
  REQUIRE(bad.size() == 1);
  CHECK_THROWS_AS(extract_model(bad, st, LogicId::N), std::invalid_argument);

  // under NR, v([]p)=true, v(p)=false violates (w2)
  std::vector<TypeBits> bad2;
  for (TypeBits t : types)
    if (type_bit(t, box_pos) && !type_bit(t, p_pos)) bad2.push_back(t);
  REQUIRE(bad2.size() == 1);
  CHECK_THROWS_AS(extract_model(bad2, st, LogicId::NR), std::invalid_argument);
  // ...but is fine under N, where (w2) does not apply
  NModel ok = extract_model(bad2, st, LogicId::N);
  CHECK(ok.frame().world_count() == 1);

  CHECK_THROWS_AS(extract_model({}, st, LogicId::N), std::invalid_argument);
}

TEST_CASE("box-free formulas: decide equals the tautology test") {
  GenOptions opts;
  opts.max_nodes = 10;
  opts.max_box_depth = 0;  // no boxes at all
  FormulaGen gen(5150, opts);
  for (int i = 0; i < 200; ++i) {
    Formula a = gen.next();
    REQUIRE(box_count(a) == 0);
    for (LogicId logic : kAllLogics) {
      Verdict v = decide(logic, a);
      CHECK(v.valid == is_tautology(abstraction(a)));
      if (!v.valid) check_integrity(logic, a, v);
    }
  }
}

TEST_CASE("oracle: documented examples") {
  // N, ~[]bot, 1 world: the very first model (empty relation) refutes
  OracleResult r1 = brute_force_decide(LogicId::N, parse("~[]bot"), 1);
  CHECK(r1.found_countermodel);
  CHECK(r1.models_enumerated == 1);
  CHECK(r1.refuting_world == 0);

  // NR, ~[]bot, 2 worlds: no serial model refutes, search is complete
  OracleResult r2 = brute_force_decide(LogicId::NR, parse("~[]bot"), 2);
  CHECK_FALSE(r2.found_countermodel);
  CHECK(r2.exhausted_worlds == 2);
  CHECK(r2.threshold == 2);
  CHECK(r2.complete);

  // N, [](bot -> bot), 1 world: valid but the type count is 2, so a
  // 1-world search is only a bounded answer
  OracleResult r3 =
      brute_force_decide(LogicId::N, parse("[](bot -> bot)"), 1);
  CHECK_FALSE(r3.found_countermodel);
  CHECK(r3.exhausted_worlds == 1);
  CHECK(r3.threshold == 2);
  CHECK_FALSE(r3.complete);
}

TEST_CASE("oracle: budget guard") {
  OracleOptions opts;
  opts.budget = 100;
  CHECK_THROWS_AS(
      brute_force_decide(LogicId::N, parse("[](p -> p)"), 4, opts),
      BudgetExceeded);
  try {
    brute_force_decide(LogicId::N, parse("[](p -> p)"), 4, opts);
  } catch (const BudgetExceeded& e) {
    CHECK(e.exhausted_worlds == 2);  // 4 + 64 models fit, 4096 do not
    CHECK(e.enumerated == 100);
  }
}

TEST_CASE("oracle countermodels are certified and minimal-index") {
  for (LogicId logic : kAllLogics) {
    Formula a = parse("[](p -> q) -> ([]p -> []q)");
    OracleResult r = brute_force_decide(logic, a, 3);
    REQUIRE(r.found_countermodel);
    CHECK_FALSE(forces(*r.countermodel, r.refuting_world, a));
    CHECK(check_conditions(r.countermodel->frame(), logic, a).ok());
  }
}

TEST_CASE("decide agrees with the oracle on a focused sample") {
  const char* texts[] = {
      "~[]bot",      "[]p -> [][]p", "[](p -> p)", "[]p -> p",
      "[]p | ~[]p",  "~[]~p -> []p", "[]p -> ~[]~p", "[][]bot",
      "[]bot | ~[]bot", "p -> []p",
  };
  for (LogicId logic : kAllLogics)
    for (const char* text : texts) {
      CAPTURE(to_string(logic));
      CAPTURE(text);
      Formula a = parse(text);
      Verdict v = decide(logic, a);
      OracleOptions opts;
      opts.budget = 2'000'000;
      int bound = feasible_world_bound(a, oracle_completeness_threshold(
                                              a, logic), opts.budget);
      if (bound < 1) bound = 1;
      OracleResult r = brute_force_decide(logic, a, bound, opts);
      if (r.found_countermodel) CHECK_FALSE(v.valid);
      if (!r.found_countermodel && r.complete) CHECK(v.valid);
      if (!v.valid) check_integrity(logic, a, v);
    }
}

TEST_CASE("rule closure and lattice containment on a random corpus") {
  GenOptions opts;
  opts.max_nodes = 8;
  opts.atoms = {"p", "q"};
  opts.max_subformulas = 10;
  FormulaGen gen(31337, opts);
  for (int i = 0; i < 120; ++i) {
    Formula a = gen.next();
    bool n = decide(LogicId::N, a).valid;
    bool nr = decide(LogicId::NR, a).valid;
    bool nf = decide(LogicId::NF, a).valid;
    bool nrf = decide(LogicId::NRF, a).valid;
    // lattice: N below NR and NF, both below NRF
    CHECK((!n || nf));
    CHECK((!n || nr));
    CHECK((!nf || nrf));
    CHECK((!nr || nrf));
    // necessitation closure
    if (n) CHECK(decide(LogicId::N, Formula::box(a)).valid);
    if (nrf) CHECK(decide(LogicId::NRF, Formula::box(a)).valid);
    // Rosser closure
    Formula na = Formula::neg(a);
    if (decide(LogicId::NR, na).valid)
      CHECK(decide(LogicId::NR, Formula::neg(Formula::box(a))).valid);
    if (decide(LogicId::NRF, na).valid)
      CHECK(decide(LogicId::NRF, Formula::neg(Formula::box(a))).valid);
  }
}

TEST_CASE("chi duality in NR on a random corpus") {
  GenOptions opts;
  opts.max_nodes = 10;
  opts.atoms = {"p", "q"};
  opts.max_subformulas = 12;
  FormulaGen gen(2718, opts);
  for (int i = 0; i < 60; ++i) {
    Formula a = gen.next();
    CAPTURE(to_string(a));
    CHECK(decide(LogicId::NR, a).valid ==
          decide(LogicId::NR, chi(a)).valid);
  }
}

TEST_CASE("4-axiom scheme valid in NF/NRF for random bodies") {
  GenOptions opts;
  opts.max_nodes = 6;
  opts.atoms = {"p", "q"};
  FormulaGen gen(161803, opts);
  for (int i = 0; i < 40; ++i) {
    Formula b = gen.next();
    Formula ax = Formula::imp(Formula::box(b),
                              Formula::box(Formula::box(b)));
    if (static_cast<int>(subformulas(ax).size()) > 14) continue;
    CHECK(decide(LogicId::NF, ax).valid);
    CHECK(decide(LogicId::NRF, ax).valid);
  }
  // and invalid for p in N/NR
  Formula axp = parse("[]p -> [][]p");
  CHECK_FALSE(decide(LogicId::N, axp).valid);
  CHECK_FALSE(decide(LogicId::NR, axp).valid);
}

TEST_CASE("verdict JSON") {
  Verdict valid = decide(LogicId::NR, parse("~[]bot"));
  CHECK(verdict_to_json(LogicId::NR, parse("~[]bot"), valid) ==
        R"({"logic":"NR","formula":"~[]bot","verdict":"valid"})");

  Verdict invalid = decide(LogicId::N, parse("~[]bot"));
  std::string j = verdict_to_json(LogicId::N, parse("~[]bot"), invalid);
  CHECK(j.find("\"verdict\":\"invalid\"") != std::string::npos);
  CHECK(j.find("\"refuting_world\":0") != std::string::npos);
  CHECK(j.find("\"countermodel\":{\"worlds\":[0]") != std::string::npos);
}

TEST_CASE("oversized inputs raise the decision limit guard") {
  // seventeen conjoined atoms: 33 distinct subformulas
  Formula big = Formula::atom("a1");
  for (int i = 2; i <= 17; ++i)
    big = Formula::conj(big, Formula::atom("a" + std::to_string(i)));
  CHECK_THROWS_AS(decide(LogicId::N, big), DecisionLimitExceeded);
}
