#ifndef NMODAL_GEN_HPP
#define NMODAL_GEN_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nmodal/formula.hpp"

namespace nmodal {

// Seeded random formula generator. Identical seed and options produce an
// identical stream on every platform (mt19937_64 plus modulo picks only;
// no distribution objects, whose outputs vary across standard libraries).
struct GenOptions {
  int max_nodes = 9;                            // AST node budget per formula
  int max_box_depth = 3;                        // nesting depth of []
  int max_subformulas = 14;                     // resample until |Sub| fits
  std::vector<std::string> atoms = {"p", "q", "r"};
};

class FormulaGen {
 public:
  explicit FormulaGen(std::uint64_t seed, GenOptions opts = {});

  Formula next();

 private:
  Formula gen(int budget, int box_depth_left);
  std::uint64_t pick(std::uint64_t n);  // uniform in [0, n)

  std::mt19937_64 rng_;
  GenOptions opts_;
};

}  // namespace nmodal

#endif  // NMODAL_GEN_HPP
