#include "nmodal/gen.hpp"

#include <stdexcept>

namespace nmodal {

FormulaGen::FormulaGen(std::uint64_t seed, GenOptions opts)
    : rng_(seed), opts_(std::move(opts)) {
  if (opts_.max_nodes < 1)
    throw std::invalid_argument("FormulaGen: max_nodes must be >= 1");
  if (opts_.atoms.empty())
    throw std::invalid_argument("FormulaGen: atom pool must be non-empty");
}

std::uint64_t FormulaGen::pick(std::uint64_t n) { return rng_() % n; }

Formula FormulaGen::next() {
  for (;;) {
    Formula f = gen(opts_.max_nodes, opts_.max_box_depth);
    if (static_cast<int>(subformulas(f).size()) <= opts_.max_subformulas)
      return f;
  }
}

Formula FormulaGen::gen(int budget, int box_depth_left) {
  enum Shape { kLeaf, kNot, kBox, kAnd, kOr, kImp };
  std::vector<Shape> shapes{kLeaf};
  if (budget >= 2) {
    shapes.push_back(kNot);
    if (box_depth_left > 0) shapes.push_back(kBox);
  }
  if (budget >= 3) {
    shapes.push_back(kAnd);
    shapes.push_back(kOr);
    shapes.push_back(kImp);
  }

  Shape shape = shapes[pick(shapes.size())];
  switch (shape) {
    case kLeaf: {
      std::uint64_t i = pick(opts_.atoms.size() + 1);
      return i < opts_.atoms.size() ? Formula::atom(opts_.atoms[i])
                                    : Formula::bot();
    }
    case kNot:
      return Formula::neg(gen(budget - 1, box_depth_left));
    case kBox:
      return Formula::box(gen(budget - 1, box_depth_left - 1));
    default: {
      int left =
          1 + static_cast<int>(pick(static_cast<std::uint64_t>(budget - 2)));
      int right = budget - 1 - left;
      Formula l = gen(left, box_depth_left);
      Formula r = gen(right, box_depth_left);
      if (shape == kAnd) return Formula::conj(l, r);
      if (shape == kOr) return Formula::disj(l, r);
      return Formula::imp(l, r);
    }
  }
}

}  // namespace nmodal
