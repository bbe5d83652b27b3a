#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nmodal/formula.hpp"
#include "nmodal/logic.hpp"

namespace nmodal {

// Finite N-frame: a nonempty world set and one binary relation per index
// formula B. Only finitely many relations are stored; an index formula
// absent from the map has the empty relation, which is sound for
// evaluating A because only the relations indexed by boxed subformulas of
// A can influence its truth.
class NFrame {
public:
  using Edge = std::pair<int, int>;

  NFrame(std::vector<int> worlds,
         std::vector<std::pair<Formula, std::vector<Edge>>> relations);

  const std::vector<int>& worlds() const { return worlds_; }
  int world_count() const { return static_cast<int>(worlds_.size()); }
  bool has_world(int id) const;
  // Dense index of a world id; throws std::out_of_range for unknown ids.
  int world_index(int id) const;

  // Relations actually stored, sorted by printed index formula.
  const std::vector<std::pair<Formula, std::vector<Edge>>>& relations() const {
    return relations_;
  }
  // Edges of the relation indexed by f (empty when absent).
  const std::vector<Edge>& edges(const Formula& f) const;
  // Successor dense indices of a world under the relation indexed by f.
  const std::vector<int>& successors(const Formula& f, int world_id) const;

private:
  int find_relation(const Formula& f) const;  // -1 when absent

  std::vector<int> worlds_;  // sorted external ids
  std::vector<std::pair<Formula, std::vector<Edge>>> relations_;
  // adjacency_[r][dense world] = dense successor indices
  std::vector<std::vector<std::vector<int>>> adjacency_;
  std::vector<int> empty_;
};

// N-model: frame plus an atomic valuation (default false).
class NModel {
public:
  NModel(NFrame frame,
         std::vector<std::pair<int, std::vector<std::string>>> true_atoms);

  const NFrame& frame() const { return frame_; }
  bool atom_true(int world_id, const std::string& atom) const;
  // Atoms mentioned anywhere in the valuation, sorted.
  std::vector<std::string> valuation_atoms() const;
  std::vector<std::string> true_atoms_at(int world_id) const;

private:
  NFrame frame_;
  std::vector<std::pair<std::string, std::vector<bool>>> valuation_;
};

// x forces A: standard boolean clauses plus
//   x forces []B  iff  every successor of x under the relation indexed by B
//                      forces B.
bool forces(const NModel& m, int world_id, const Formula& a);

// A holds at every world of m.
bool valid_in_model(const NModel& m, const Formula& a);

// A is valid in every model based on f: enumerates all valuations of the
// atoms of A over the worlds of f. Throws when the enumeration would
// exceed 2^24 valuations.
bool valid_in_frame(const NFrame& f, const Formula& a);

// Every world has a successor under the relation indexed by b.
bool is_serial_for(const NFrame& f, const Formula& b);

// x < y under the relation indexed by []b and y < z under the relation
// indexed by b imply x < z under the relation indexed by b.
bool is_transitive_for(const NFrame& f, const Formula& b);

enum class FrameCondition { Seriality, Transitivity };

struct ConditionViolation {
  FrameCondition condition;
  Formula index;  // the B of the violated relation condition
  std::vector<int> witnesses;  // seriality: {x}; transitivity: {x, y, z}
};

struct ConditionReport {
  std::vector<ConditionViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Frame-condition check for a logic, restricted to Sub(A):
//   NR/NRF: seriality of the relation indexed by B for every []B in Sub(A);
//   NF/NRF: transitivity for B for every [][]B in Sub(A);
//   N: nothing.
ConditionReport check_conditions(const NFrame& f, LogicId logic,
                                 const Formula& a);

struct ModelFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// JSON model format:
// {"worlds":[0,1],
//  "relations":{"<printed formula>":[[0,1]]},
//  "valuation":{"0":["p"]}}
NModel model_from_json(const std::string& text);
std::string model_to_json(const NModel& m);

// DOT digraph with one labeled edge per pair of each indexed relation.
std::string model_to_dot(const NModel& m);

}  // namespace nmodal
