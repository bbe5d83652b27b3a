#include "nmodal/proofs.hpp"

#include <cctype>
#include <sstream>

#include "nmodal/propcore.hpp"

namespace nmodal {

std::string to_string(Just j) {
  switch (j) {
    case Just::Taut: return "taut";
    case Just::Ax4: return "ax4";
    case Just::MP: return "mp";
    case Just::Nec: return "nec";
    case Just::Ros: return "ros";
  }
  return "?";
}

const Formula& conclusion(const Proof& p) {
  if (p.lines.empty())
    throw std::invalid_argument("conclusion: empty proof");
  return p.lines.back().formula;
}

namespace {

bool is_ax4_instance(const Formula& f) {
  // []B -> [][]B
  if (!f.is(FKind::Imp)) return false;
  const Formula lhs = f.left(), rhs = f.right();
  return lhs.is(FKind::Box) && rhs.is(FKind::Box) &&
         rhs.left().is(FKind::Box) && rhs.left().left() == lhs.left();
}

CheckResult bad_ref(int line, Just j, int ref) {
  return CheckResult::reject(
      line, "line " + std::to_string(line) + ": " + to_string(j) +
                ": reference " + std::to_string(ref) +
                " is not a strictly earlier line");
}

}  // namespace

CheckResult check_proof(LogicId logic, const Proof& p) {
  if (p.lines.empty())
    return CheckResult::reject(-1, "empty proof");
  for (int i = 0; i < static_cast<int>(p.lines.size()); ++i) {
    const ProofLine& ln = p.lines[static_cast<std::size_t>(i)];
    const std::string where = "line " + std::to_string(i) + ": ";
    auto ref = [&](int r) {
      return p.lines[static_cast<std::size_t>(r)].formula;
    };
    switch (ln.just) {
      case Just::Taut:
        if (!is_tautology(abstraction(ln.formula)))
          return CheckResult::reject(
              i, where + "taut: not a propositional tautology");
        break;
      case Just::Ax4:
        if (!has_four_axiom(logic))
          return CheckResult::reject(
              i, where + "ax4: axiom Ax4 unavailable in N/NR");
        if (!is_ax4_instance(ln.formula))
          return CheckResult::reject(
              i, where + "ax4: not an instance of []B -> [][]B");
        break;
      case Just::MP: {
        if (ln.ref1 < 0 || ln.ref1 >= i) return bad_ref(i, Just::MP, ln.ref1);
        if (ln.ref2 < 0 || ln.ref2 >= i) return bad_ref(i, Just::MP, ln.ref2);
        Formula want = Formula::imp(ref(ln.ref1), ln.formula);
        if (!(ref(ln.ref2) == want))
          return CheckResult::reject(
              i, where + "mp: line " + std::to_string(ln.ref2) +
                     " is not (line " + std::to_string(ln.ref1) +
                     " -> this line)");
        break;
      }
      case Just::Nec:
        if (ln.ref1 < 0 || ln.ref1 >= i) return bad_ref(i, Just::Nec, ln.ref1);
        if (!(ln.formula == Formula::box(ref(ln.ref1))))
          return CheckResult::reject(
              i, where + "nec: this line is not [](line " +
                     std::to_string(ln.ref1) + ")");
        break;
      case Just::Ros: {
        if (!has_rosser_rule(logic))
          return CheckResult::reject(
              i, where + "ros: rule Ros unavailable in N/NF");
        if (ln.ref1 < 0 || ln.ref1 >= i) return bad_ref(i, Just::Ros, ln.ref1);
        Formula prem = ref(ln.ref1);
        if (!prem.is(FKind::Not))
          return CheckResult::reject(
              i, where + "ros: line " + std::to_string(ln.ref1) +
                     " is not a negation ~C");
        if (!(ln.formula == Formula::neg(Formula::box(prem.left()))))
          return CheckResult::reject(
              i, where + "ros: this line is not ~[]C for line " +
                     std::to_string(ln.ref1) + " = ~C");
        break;
      }
    }
  }
  return CheckResult::ok();
}

Proof parse_proof(std::string_view text) {
  Proof p;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    std::string line(raw);
    if (std::size_t hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);

    const int line_no = static_cast<int>(p.lines.size());
    std::size_t semi = line.find(';');
    if (semi == std::string::npos)
      throw ProofFormatError(line_no, "missing ';' between formula and rule");

    ProofLine pl;
    try {
      pl.formula = parse(line.substr(0, semi));
    } catch (const ParseError& err) {
      throw ProofFormatError(line_no,
                             std::string("bad formula: ") + err.what());
    }

    std::istringstream just(line.substr(semi + 1));
    std::string rule;
    just >> rule;
    int want_refs = 0;
    if (rule == "taut") {
      pl.just = Just::Taut;
    } else if (rule == "ax4") {
      pl.just = Just::Ax4;
    } else if (rule == "mp") {
      pl.just = Just::MP;
      want_refs = 2;
    } else if (rule == "nec") {
      pl.just = Just::Nec;
      want_refs = 1;
    } else if (rule == "ros") {
      pl.just = Just::Ros;
      want_refs = 1;
    } else {
      throw ProofFormatError(line_no, "unknown rule '" + rule + "'");
    }
    if (want_refs >= 1 && !(just >> pl.ref1))
      throw ProofFormatError(line_no, "rule " + rule + " needs a line index");
    if (want_refs == 2 && !(just >> pl.ref2))
      throw ProofFormatError(line_no,
                             "rule " + rule + " needs two line indices");
    std::string extra;
    if (just >> extra)
      throw ProofFormatError(line_no,
                             "unexpected trailing token '" + extra + "'");
    p.lines.push_back(std::move(pl));
  }
  return p;
}

}  // namespace nmodal
