#include "nmodal/decide.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <deque>
#include <limits>
#include <string>

#include <json.hpp>

#include "nmodal/propcore.hpp"

namespace nmodal {

namespace {

constexpr int kMaxSubformulas = 31;
constexpr int kMaxFreeBits = 22;

}  // namespace

int SubTable::index_of(const Formula& f) const {
  for (std::size_t i = 0; i < subs.size(); ++i)
    if (subs[i] == f) return static_cast<int>(i);
  return -1;
}

SubTable make_subtable(const Formula& a) {
  SubTable st;
  st.root = a;
  st.subs = subformulas(a);
  if (st.subs.size() > kMaxSubformulas)
    throw DecisionLimitExceeded("formula has " +
                                std::to_string(st.subs.size()) +
                                " subformulas; limit is " +
                                std::to_string(kMaxSubformulas));
  st.refs.resize(st.subs.size());
  for (std::size_t i = 0; i < st.subs.size(); ++i) {
    const Formula& s = st.subs[i];
    auto& r = st.refs[i];
    r.kind = s.kind();
    switch (s.kind()) {
      case FKind::Bot:
        break;
      case FKind::Atom:
        st.free_bits.push_back(static_cast<int>(i));
        break;
      case FKind::Not:
        r.left = st.index_of(s.left());
        break;
      case FKind::Box:
        r.left = st.index_of(s.left());
        st.free_bits.push_back(static_cast<int>(i));
        st.box_subs.push_back(static_cast<int>(i));
        break;
      default:
        r.left = st.index_of(s.left());
        r.right = st.index_of(s.right());
        break;
    }
  }
  // (ordinal of [][]B, ordinal of []B) within box_subs.
  for (std::size_t jo = 0; jo < st.box_subs.size(); ++jo) {
    int outer = st.box_subs[jo];
    int body = st.refs[static_cast<std::size_t>(outer)].left;
    if (!st.subs[static_cast<std::size_t>(body)].is(FKind::Box)) continue;
    for (std::size_t ji = 0; ji < st.box_subs.size(); ++ji)
      if (st.box_subs[ji] == body)
        st.four_pairs.emplace_back(static_cast<int>(jo),
                                   static_cast<int>(ji));
  }
  return st;
}

namespace {

// Fill the determined connective bits from the free bits.
TypeBits propagate(const SubTable& st, TypeBits t) {
  for (std::size_t i = 0; i < st.subs.size(); ++i) {
    const auto& r = st.refs[i];
    bool v = false;
    switch (r.kind) {
      case FKind::Bot:
        v = false;
        break;
      case FKind::Atom:
      case FKind::Box:
        continue;  // free
      case FKind::Not:
        v = !type_bit(t, r.left);
        break;
      case FKind::And:
        v = type_bit(t, r.left) && type_bit(t, r.right);
        break;
      case FKind::Or:
        v = type_bit(t, r.left) || type_bit(t, r.right);
        break;
      case FKind::Imp:
        v = !type_bit(t, r.left) || type_bit(t, r.right);
        break;
    }
    if (v)
      t |= (TypeBits{1} << i);
    else
      t &= ~(TypeBits{1} << i);
  }
  return t;
}

bool four_closed(const SubTable& st, TypeBits t) {
  for (auto [jo, ji] : st.four_pairs)
    if (type_bit(t, st.box_subs[static_cast<std::size_t>(ji)]) &&
        !type_bit(t, st.box_subs[static_cast<std::size_t>(jo)]))
      return false;
  return true;
}

}  // namespace

std::vector<TypeBits> world_types(const SubTable& st, LogicId logic) {
  if (st.free_bits.size() > kMaxFreeBits)
    throw DecisionLimitExceeded(
        "formula has " + std::to_string(st.free_bits.size()) +
        " free truth bits; limit is " + std::to_string(kMaxFreeBits));
  std::vector<TypeBits> out;
  out.reserve(std::size_t{1} << st.free_bits.size());
  for (std::uint32_t mask = 0; mask < (1u << st.free_bits.size()); ++mask) {
    TypeBits t = 0;
    for (std::size_t i = 0; i < st.free_bits.size(); ++i)
      if ((mask >> i) & 1u)
        t |= (TypeBits{1} << st.free_bits[i]);
    t = propagate(st, t);
    if (has_four_axiom(logic) && !four_closed(st, t)) continue;
    out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TypeBits> world_types(const Formula& a, LogicId logic) {
  return world_types(make_subtable(a), logic);
}

namespace {

// Witness requirements of a type: for every box position, (body, value)
// pairs that some survivor must realize.
struct Witnessing {
  const SubTable& st;
  bool ros;

  template <typename Fn>
  void for_each_requirement(TypeBits t, Fn&& fn) const {
    for (int bpos : st.box_subs) {
      int body = st.refs[static_cast<std::size_t>(bpos)].left;
      if (!type_bit(t, bpos))
        fn(body, false);  // (w1)
      else if (ros)
        fn(body, true);  // (w2)
    }
  }
};

// Greatest set of types all of whose witness requirements are met inside
// the set. Event-driven: when the last survivor carrying (pos, val) dies,
// every type requiring it dies too.
std::vector<TypeBits> eliminate(const SubTable& st, LogicId logic,
                                const std::vector<TypeBits>& types) {
  const Witnessing wit{st, has_rosser_rule(logic)};
  const std::size_t m = types.size();
  std::vector<char> alive(m, 1);
  std::vector<std::array<std::int64_t, 2>> cnt(st.subs.size(), {0, 0});
  for (TypeBits t : types)
    for (std::size_t pos = 0; pos < st.subs.size(); ++pos)
      ++cnt[pos][type_bit(t, static_cast<int>(pos)) ? 1 : 0];

  auto satisfied = [&](TypeBits t) {
    bool ok = true;
    wit.for_each_requirement(t, [&](int pos, bool val) {
      if (cnt[static_cast<std::size_t>(pos)][val ? 1 : 0] == 0) ok = false;
    });
    return ok;
  };

  std::deque<std::size_t> kill;
  for (std::size_t i = 0; i < m; ++i)
    if (!satisfied(types[i])) kill.push_back(i);

  while (!kill.empty()) {
    std::size_t i = kill.front();
    kill.pop_front();
    if (!alive[i]) continue;
    alive[i] = 0;
    bool some_exhausted = false;
    for (std::size_t pos = 0; pos < st.subs.size(); ++pos)
      if (--cnt[pos][type_bit(types[i], static_cast<int>(pos)) ? 1 : 0] == 0)
        some_exhausted = true;
    if (some_exhausted)
      for (std::size_t u = 0; u < m; ++u)
        if (alive[u] && !satisfied(types[u])) kill.push_back(u);
  }

  std::vector<TypeBits> out;
  for (std::size_t i = 0; i < m; ++i)
    if (alive[i]) out.push_back(types[i]);
  return out;
}

// Smallest witness-closed subset around a seed: add, for every unmet
// requirement, the first survivor realizing it. Adds at most one world per
// distinct (body, value) requirement.
std::vector<TypeBits> witness_closure(const SubTable& st, LogicId logic,
                                      const std::vector<TypeBits>& survivors,
                                      TypeBits seed) {
  const Witnessing wit{st, has_rosser_rule(logic)};
  std::vector<TypeBits> small{seed};
  std::deque<TypeBits> work{seed};
  while (!work.empty()) {
    TypeBits t = work.front();
    work.pop_front();
    wit.for_each_requirement(t, [&](int pos, bool val) {
      for (TypeBits u : small)
        if (type_bit(u, pos) == val) return;
      for (TypeBits u : survivors)
        if (type_bit(u, pos) == val) {
          small.push_back(u);
          work.push_back(u);
          return;
        }
      throw std::logic_error("witness_closure: requirement unmet in fixpoint");
    });
  }
  std::sort(small.begin(), small.end());
  return small;
}

NModel certified(const NModel& model, int refuting_world, LogicId logic,
                 const Formula& a) {
  if (forces(model, refuting_world, a))
    throw std::logic_error("internal error: countermodel does not refute");
  if (!check_conditions(model.frame(), logic, a).ok())
    throw std::logic_error(
        "internal error: countermodel violates frame conditions");
  return model;
}

}  // namespace

NModel extract_model(const std::vector<TypeBits>& types, const SubTable& st,
                     LogicId logic) {
  if (types.empty())
    throw std::invalid_argument("extract_model: empty type set");
  const Witnessing wit{st, has_rosser_rule(logic)};
  for (TypeBits t : types) {
    if (propagate(st, t) != t)
      throw std::invalid_argument("extract_model: incoherent world type");
    bool ok = true;
    wit.for_each_requirement(t, [&](int pos, bool val) {
      for (TypeBits u : types)
        if (type_bit(u, pos) == val) return;
      ok = false;
    });
    if (!ok)
      throw std::invalid_argument(
          "extract_model: type set violates a witness condition");
  }

  const int m = static_cast<int>(types.size());
  std::vector<int> worlds(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) worlds[static_cast<std::size_t>(i)] = i;

  std::vector<std::pair<Formula, std::vector<NFrame::Edge>>> rels;
  for (int bpos : st.box_subs) {
    int body = st.refs[static_cast<std::size_t>(bpos)].left;
    std::vector<NFrame::Edge> edges;
    for (int v = 0; v < m; ++v) {
      bool box_true = type_bit(types[static_cast<std::size_t>(v)], bpos);
      for (int u = 0; u < m; ++u) {
        bool body_true = type_bit(types[static_cast<std::size_t>(u)], body);
        bool edge;
        if (logic == LogicId::N)
          // witness-style: only false boxes get successors
          edge = !box_true && !body_true;
        else
          // canonical: []B notin v or B in u
          edge = !box_true || body_true;
        if (edge) edges.emplace_back(v, u);
      }
    }
    rels.emplace_back(st.subs[static_cast<std::size_t>(body)],
                      std::move(edges));
  }

  std::vector<std::pair<int, std::vector<std::string>>> val;
  for (int v = 0; v < m; ++v) {
    std::vector<std::string> atoms;
    for (std::size_t i = 0; i < st.subs.size(); ++i)
      if (st.refs[i].kind == FKind::Atom &&
          type_bit(types[static_cast<std::size_t>(v)], static_cast<int>(i)))
        atoms.push_back(st.subs[i].atom_name());
    if (!atoms.empty()) val.emplace_back(v, std::move(atoms));
  }

  return NModel(NFrame(std::move(worlds), std::move(rels)), std::move(val));
}

Verdict decide(LogicId logic, const Formula& a) {
  SubTable st = make_subtable(a);

  if (st.box_subs.empty()) {
    // Box-free formulas are theorems exactly when they are tautologies.
    AbstractionMap vars;
    PropFormula abs = abstraction(a, vars);
    auto falsifying = falsifying_assignment(abs);
    if (!falsifying) return Verdict{true, std::nullopt, -1};
    std::vector<std::pair<int, std::vector<std::string>>> val;
    std::vector<std::string> atoms;
    for (int v = 0; v < vars.var_count(); ++v)
      if ((*falsifying)[static_cast<std::size_t>(v)])
        atoms.push_back(vars.key_of(v));  // keys of atoms are their names
    if (!atoms.empty()) val.emplace_back(0, std::move(atoms));
    NModel model(NFrame({0}, {}), std::move(val));
    Verdict verdict;
    verdict.valid = false;
    verdict.refuting_world = 0;
    verdict.countermodel = certified(model, 0, logic, a);
    return verdict;
  }

  std::vector<TypeBits> survivors =
      eliminate(st, logic, world_types(st, logic));

  const int root = static_cast<int>(st.subs.size()) - 1;
  TypeBits refuter = 0;
  bool found = false;
  for (TypeBits t : survivors)
    if (!type_bit(t, root)) {
      refuter = t;
      found = true;
      break;
    }
  if (!found) return Verdict{true, std::nullopt, -1};

  std::vector<TypeBits> small = witness_closure(st, logic, survivors, refuter);
  NModel model = extract_model(small, st, logic);
  int world = static_cast<int>(
      std::lower_bound(small.begin(), small.end(), refuter) - small.begin());
  Verdict verdict;
  verdict.valid = false;
  verdict.refuting_world = world;
  verdict.countermodel = certified(model, world, logic, a);
  return verdict;
}

std::string verdict_to_json(LogicId logic, const Formula& a,
                            const Verdict& v) {
  nlohmann::ordered_json j;
  j["logic"] = to_string(logic);
  j["formula"] = to_string(a);
  j["verdict"] = v.valid ? "valid" : "invalid";
  if (!v.valid) {
    j["countermodel"] = nlohmann::ordered_json::parse(
        model_to_json(v.countermodel.value()));
    j["refuting_world"] = v.refuting_world;
  }
  return j.dump();
}

// ---------------------------------------------------------------------------
// Brute-force oracle

BudgetExceeded::BudgetExceeded(int exhausted, std::uint64_t n)
    : std::runtime_error("oracle budget exceeded after " + std::to_string(n) +
                         " models (exhausted up to " +
                         std::to_string(exhausted) + " worlds)"),
      exhausted_worlds(exhausted),
      enumerated(n) {}

int oracle_completeness_threshold(const Formula& a, LogicId logic) {
  SubTable st = make_subtable(a);
  int b = static_cast<int>(st.box_subs.size());
  long closure_bound = 1 + (has_rosser_rule(logic) ? 2L : 1L) * b;
  long type_bound = closure_bound;
  if (st.free_bits.size() <= kMaxFreeBits)
    type_bound = static_cast<long>(world_types(st, logic).size());
  return static_cast<int>(std::min(closure_bound, type_bound));
}

int feasible_world_bound(const Formula& a, int max_worlds,
                         std::uint64_t budget) {
  std::uint64_t atoms = atom_names(a).size();
  std::uint64_t boxes = make_subtable(a).box_subs.size();
  std::uint64_t used = 0;
  int ok = 0;
  for (int k = 1; k <= max_worlds; ++k) {
    std::uint64_t bits = static_cast<std::uint64_t>(k) * atoms +
                         static_cast<std::uint64_t>(k) * k * boxes;
    if (bits >= 63) break;
    std::uint64_t models = 1ULL << bits;
    if (models > budget - used) break;
    used += models;
    ok = k;
  }
  return ok;
}

namespace {

struct PackedModel {
  int k = 0;
  std::uint32_t full = 0;
  // Per atom (sorted order): bit w = atom true at world w.
  std::vector<std::uint32_t> atom_masks;
  // Per box subformula (Sub order): successor mask per world.
  std::vector<std::vector<std::uint32_t>> succ;
};

bool conditions_pass(const PackedModel& pm, const SubTable& st,
                     LogicId logic) {
  if (has_rosser_rule(logic))
    for (const auto& rel : pm.succ)
      for (int x = 0; x < pm.k; ++x)
        if (rel[static_cast<std::size_t>(x)] == 0) return false;
  if (has_four_axiom(logic))
    for (auto [jo, ji] : st.four_pairs) {
      const auto& outer = pm.succ[static_cast<std::size_t>(jo)];
      const auto& inner = pm.succ[static_cast<std::size_t>(ji)];
      for (int x = 0; x < pm.k; ++x) {
        std::uint32_t ys = outer[static_cast<std::size_t>(x)];
        while (ys) {
          int y = std::countr_zero(ys);
          ys &= ys - 1;
          if (inner[static_cast<std::size_t>(y)] &
              ~inner[static_cast<std::size_t>(x)])
            return false;
        }
      }
    }
  return true;
}

// Truth mask of every subformula; returns the root mask.
std::uint32_t eval_packed(const PackedModel& pm, const SubTable& st,
                          const std::vector<int>& atom_pos,
                          std::vector<std::uint32_t>& t) {
  for (std::size_t i = 0; i < st.subs.size(); ++i) {
    const auto& r = st.refs[i];
    switch (r.kind) {
      case FKind::Bot:
        t[i] = 0;
        break;
      case FKind::Atom:
        t[i] = pm.atom_masks[static_cast<std::size_t>(atom_pos[i])];
        break;
      case FKind::Not:
        t[i] = ~t[static_cast<std::size_t>(r.left)] & pm.full;
        break;
      case FKind::And:
        t[i] = t[static_cast<std::size_t>(r.left)] &
               t[static_cast<std::size_t>(r.right)];
        break;
      case FKind::Or:
        t[i] = t[static_cast<std::size_t>(r.left)] |
               t[static_cast<std::size_t>(r.right)];
        break;
      case FKind::Imp:
        t[i] = (~t[static_cast<std::size_t>(r.left)] |
                t[static_cast<std::size_t>(r.right)]) &
               pm.full;
        break;
      case FKind::Box: {
        std::size_t j = 0;
        while (st.box_subs[j] != static_cast<int>(i)) ++j;
        const auto& rel = pm.succ[j];
        std::uint32_t body = t[static_cast<std::size_t>(r.left)];
        std::uint32_t mask = 0;
        for (int x = 0; x < pm.k; ++x)
          if ((rel[static_cast<std::size_t>(x)] & ~body & pm.full) == 0)
            mask |= (1u << x);
        t[i] = mask;
        break;
      }
    }
  }
  return t.back();
}

NModel unpack(const PackedModel& pm, const SubTable& st,
              const std::vector<std::string>& atoms) {
  std::vector<int> worlds(static_cast<std::size_t>(pm.k));
  for (int i = 0; i < pm.k; ++i) worlds[static_cast<std::size_t>(i)] = i;
  std::vector<std::pair<Formula, std::vector<NFrame::Edge>>> rels;
  for (std::size_t j = 0; j < st.box_subs.size(); ++j) {
    int body = st.refs[static_cast<std::size_t>(st.box_subs[j])].left;
    std::vector<NFrame::Edge> edges;
    for (int x = 0; x < pm.k; ++x) {
      std::uint32_t ys = pm.succ[j][static_cast<std::size_t>(x)];
      while (ys) {
        int y = std::countr_zero(ys);
        ys &= ys - 1;
        edges.emplace_back(x, y);
      }
    }
    rels.emplace_back(st.subs[static_cast<std::size_t>(body)],
                      std::move(edges));
  }
  std::vector<std::pair<int, std::vector<std::string>>> val;
  for (int w = 0; w < pm.k; ++w) {
    std::vector<std::string> at;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if ((pm.atom_masks[i] >> w) & 1u) at.push_back(atoms[i]);
    if (!at.empty()) val.emplace_back(w, std::move(at));
  }
  return NModel(NFrame(std::move(worlds), std::move(rels)), std::move(val));
}

}  // namespace

OracleResult brute_force_decide(LogicId logic, const Formula& a,
                                int max_worlds, const OracleOptions& opts) {
  if (max_worlds < 1)
    throw std::invalid_argument("brute_force_decide: max_worlds must be >= 1");
  SubTable st = make_subtable(a);
  std::vector<std::string> atoms = atom_names(a);
  const std::size_t a_n = atoms.size();
  const std::size_t b_n = st.box_subs.size();

  // For each subformula position, the sorted-atom ordinal (atoms only).
  std::vector<int> atom_pos(st.subs.size(), -1);
  for (std::size_t i = 0; i < st.subs.size(); ++i)
    if (st.refs[i].kind == FKind::Atom)
      atom_pos[i] = static_cast<int>(
          std::lower_bound(atoms.begin(), atoms.end(),
                           st.subs[i].atom_name()) -
          atoms.begin());

  OracleResult res;
  res.threshold = oracle_completeness_threshold(a, logic);
  std::uint64_t count = 0;
  std::vector<std::uint32_t> truth(st.subs.size(), 0);

  for (int k = 1; k <= max_worlds; ++k) {
    std::uint64_t bits = static_cast<std::uint64_t>(k) * a_n +
                         static_cast<std::uint64_t>(k) * k * b_n;
    std::uint64_t total =
        bits >= 63 ? std::numeric_limits<std::uint64_t>::max() : 1ULL << bits;

    PackedModel pm;
    pm.k = k;
    pm.full = k >= 32 ? ~0u : (1u << k) - 1;
    pm.atom_masks.assign(a_n, 0);
    pm.succ.assign(b_n, std::vector<std::uint32_t>(
                            static_cast<std::size_t>(k), 0));

    for (std::uint64_t idx = 0; idx < total; ++idx) {
      if (count >= opts.budget) throw BudgetExceeded(k - 1, count);
      ++count;

      std::uint64_t rest = idx;
      for (std::size_t i = 0; i < a_n; ++i) {
        pm.atom_masks[i] = static_cast<std::uint32_t>(rest & (pm.full));
        rest >>= k;
      }
      for (std::size_t j = 0; j < b_n; ++j)
        for (int x = 0; x < k; ++x) {
          pm.succ[j][static_cast<std::size_t>(x)] =
              static_cast<std::uint32_t>(rest & pm.full);
          rest >>= k;
        }

      if (!conditions_pass(pm, st, logic)) continue;
      std::uint32_t root = eval_packed(pm, st, atom_pos, truth);
      if (root != pm.full) {
        int w = std::countr_zero(~root & pm.full);
        res.found_countermodel = true;
        res.complete = true;  // a countermodel settles the question
        res.models_enumerated = count;
        res.exhausted_worlds = k - 1;
        res.refuting_world = w;
        res.countermodel = certified(unpack(pm, st, atoms), w, logic, a);
        return res;
      }
    }
    res.exhausted_worlds = k;
  }

  res.models_enumerated = count;
  res.complete = res.exhausted_worlds >= res.threshold;
  return res;
}

}  // namespace nmodal
