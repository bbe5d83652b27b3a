#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nmodal/formula.hpp"
#include "nmodal/logic.hpp"
#include "nmodal/semantics.hpp"

namespace nmodal {

// Sub(A) with structural bookkeeping for world-type computations.
// Subformulas are in post-order, so children precede parents and A is last.
struct SubTable {
  Formula root;
  std::vector<Formula> subs;
  // Per subformula: kind and child positions within subs (-1 when absent).
  struct NodeRef {
    FKind kind;
    int left = -1;
    int right = -1;
  };
  std::vector<NodeRef> refs;
  std::vector<int> free_bits;  // positions of atoms and boxes
  std::vector<int> box_subs;   // positions i with subs[i] = []B; body = refs[i].left
  // Pairs (position of [][]B, position of []B) for the 4-closure.
  std::vector<std::pair<int, int>> four_pairs;

  int index_of(const Formula& f) const;  // -1 when absent
};

SubTable make_subtable(const Formula& a);

// A world type: one truth bit per member of Sub(A), position-aligned with
// SubTable::subs. Atoms and boxes are free; other connectives are
// determined by boolean coherence.
using TypeBits = std::uint32_t;

inline bool type_bit(TypeBits t, int sub_index) {
  return (t >> sub_index) & 1u;
}

// All boolean-coherent assignments over Sub(A), ascending; for NF/NRF only
// those closed under []B true implies [][]B true (for [][]B in Sub(A)).
std::vector<TypeBits> world_types(const SubTable& st, LogicId logic);
std::vector<TypeBits> world_types(const Formula& a, LogicId logic);

struct Verdict {
  bool valid = false;
  std::optional<NModel> countermodel;
  int refuting_world = -1;
};

struct DecisionLimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Decision procedure by world-type elimination. Starting from all world
// types, repeatedly delete any type v for which a required witness is
// missing from the surviving set:
//   (w1) all logics:  v makes []B false => some survivor makes B false;
//   (w2) NR/NRF:      v makes []B true  => some survivor makes B true.
// A is a theorem exactly when no survivor makes A false; otherwise a
// countermodel is extracted from a witness-closed subset of the survivors
// and verified before being returned.
Verdict decide(LogicId logic, const Formula& a);

// JSON rendering of a verdict:
//   {"logic":"NR","formula":"~[]bot","verdict":"valid"}
//   {"logic":"N","formula":"~[]bot","verdict":"invalid",
//    "countermodel":{...},"refuting_world":0}
std::string verdict_to_json(LogicId logic, const Formula& a,
                            const Verdict& v);

// Canonical model over a witness-closed set of world types: worlds are the
// members of types; an atom holds where its bit is set; the relation
// indexed by B relates v to u when v makes []B false or u makes B true
// (for N, the leaner witness-style relation). Throws std::invalid_argument
// if types violates (w1), or (w2) for NR/NRF.
NModel extract_model(const std::vector<TypeBits>& types, const SubTable& st,
                     LogicId logic);

struct BudgetExceeded : std::runtime_error {
  BudgetExceeded(int exhausted, std::uint64_t n);
  int exhausted_worlds;        // largest world count fully enumerated
  std::uint64_t enumerated;
};

struct OracleOptions {
  std::uint64_t budget = 10'000'000;  // models enumerated before refusing
};

struct OracleResult {
  bool found_countermodel = false;
  // True when every world count up to the completeness threshold was
  // exhausted, so "no countermodel found" certifies validity.
  bool complete = false;
  int exhausted_worlds = 0;
  int threshold = 0;
  std::uint64_t models_enumerated = 0;
  std::optional<NModel> countermodel;
  int refuting_world = -1;
};

// Smallest world count whose exhaustion certifies validity: the minimum of
// the world-type count and 1 + (#box subformulas, doubled when the logic
// has the Rosser rule), from the witness-closure construction.
int oracle_completeness_threshold(const Formula& a, LogicId logic);

// Largest world count <= max_worlds whose cumulative enumeration fits the
// budget (valuations x relations for each world count).
int feasible_world_bound(const Formula& a, int max_worlds,
                         std::uint64_t budget);

// Exhaustive model search: for k = 1..max_worlds, enumerate every model
// with k worlds, relations only for boxed subformulas of a and valuations
// only for its atoms, keep those passing check_conditions, and return the
// first one refuting a (lowest enumeration index). Throws BudgetExceeded
// when the enumeration count crosses the budget.
OracleResult brute_force_decide(LogicId logic, const Formula& a,
                                int max_worlds, const OracleOptions& opts = {});

}  // namespace nmodal
