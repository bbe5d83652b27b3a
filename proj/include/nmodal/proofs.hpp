#ifndef NMODAL_PROOFS_HPP
#define NMODAL_PROOFS_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nmodal/formula.hpp"
#include "nmodal/logic.hpp"

namespace nmodal {

// Hilbert-style proofs. A proof is a sequence of lines, each a formula
// with a justification:
//
//   taut     -- propositional tautology (checked semantically)
//   ax4      -- instance of []B -> [][]B          (NF, NRF only)
//   mp i j   -- modus ponens: line j is (line i -> this line)
//   nec i    -- necessitation: this line is [](line i)
//   ros i    -- line i is ~C, this line is ~[]C   (NR, NRF only)
//
// Line references are 0-based and must point strictly earlier.

enum class Just { Taut, Ax4, MP, Nec, Ros };

std::string to_string(Just j);

struct ProofLine {
  Formula formula;
  Just just = Just::Taut;
  int ref1 = -1;
  int ref2 = -1;
};

struct Proof {
  std::vector<ProofLine> lines;
};

// Formula established by the proof (its last line). Throws on empty proofs.
const Formula& conclusion(const Proof& p);

struct CheckResult {
  bool accepted = false;
  int line = -1;          // offending line when rejected
  std::string reason;     // empty when accepted

  static CheckResult ok() { return CheckResult{true, -1, ""}; }
  static CheckResult reject(int line, std::string reason) {
    return CheckResult{false, line, std::move(reason)};
  }
};

// Verify every line of `p` against the rules of `logic`. Rejections name
// the line, the rule, and the violated side-condition.
CheckResult check_proof(LogicId logic, const Proof& p);

// Raised by parse_proof on malformed input; `line` is the 0-based
// position among non-blank, non-comment lines (-1 if not line-specific).
struct ProofFormatError : std::runtime_error {
  int line;
  ProofFormatError(int line_no, const std::string& what)
      : std::runtime_error(what), line(line_no) {}
};

// Parse the text proof format: one `<formula> ; <justification>` per line,
// `#` starts a comment, blank lines ignored.
Proof parse_proof(std::string_view text);

}  // namespace nmodal

#endif  // NMODAL_PROOFS_HPP
