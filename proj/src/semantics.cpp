#include "nmodal/semantics.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace nmodal {

NFrame::NFrame(std::vector<int> worlds,
               std::vector<std::pair<Formula, std::vector<Edge>>> relations)
    : worlds_(std::move(worlds)), relations_(std::move(relations)) {
  if (worlds_.empty()) throw std::invalid_argument("NFrame: empty world set");
  std::sort(worlds_.begin(), worlds_.end());
  if (std::adjacent_find(worlds_.begin(), worlds_.end()) != worlds_.end())
    throw std::invalid_argument("NFrame: duplicate world id");

  std::sort(relations_.begin(), relations_.end(),
            [](const auto& a, const auto& b) {
              return to_string(a.first) < to_string(b.first);
            });
  for (std::size_t i = 1; i < relations_.size(); ++i)
    if (relations_[i].first == relations_[i - 1].first)
      throw std::invalid_argument("NFrame: duplicate relation index");

  adjacency_.resize(relations_.size());
  for (std::size_t r = 0; r < relations_.size(); ++r) {
    auto& edges = relations_[r].second;
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    adjacency_[r].assign(worlds_.size(), {});
    for (const Edge& e : edges) {
      if (!has_world(e.first) || !has_world(e.second))
        throw std::invalid_argument("NFrame: edge endpoint " +
                                    std::to_string(e.first) + "->" +
                                    std::to_string(e.second) +
                                    " is not a world");
      adjacency_[r][static_cast<std::size_t>(world_index(e.first))].push_back(
          world_index(e.second));
    }
  }
}

bool NFrame::has_world(int id) const {
  return std::binary_search(worlds_.begin(), worlds_.end(), id);
}

int NFrame::world_index(int id) const {
  auto it = std::lower_bound(worlds_.begin(), worlds_.end(), id);
  if (it == worlds_.end() || *it != id)
    throw std::out_of_range("unknown world id " + std::to_string(id));
  return static_cast<int>(it - worlds_.begin());
}

int NFrame::find_relation(const Formula& f) const {
  for (std::size_t r = 0; r < relations_.size(); ++r)
    if (relations_[r].first == f) return static_cast<int>(r);
  return -1;
}

const std::vector<NFrame::Edge>& NFrame::edges(const Formula& f) const {
  static const std::vector<Edge> kEmpty;
  int r = find_relation(f);
  return r < 0 ? kEmpty : relations_[static_cast<std::size_t>(r)].second;
}

const std::vector<int>& NFrame::successors(const Formula& f,
                                           int world_id) const {
  static const std::vector<int> kEmpty;
  int w = world_index(world_id);
  int r = find_relation(f);
  if (r < 0) return kEmpty;
  return adjacency_[static_cast<std::size_t>(r)][static_cast<std::size_t>(w)];
}

NModel::NModel(NFrame frame,
               std::vector<std::pair<int, std::vector<std::string>>> true_atoms)
    : frame_(std::move(frame)) {
  std::map<std::string, std::vector<bool>> v;
  for (auto& [world, atoms] : true_atoms) {
    int w = frame_.world_index(world);  // validates the id
    for (auto& a : atoms) {
      auto& bits = v[a];
      bits.resize(static_cast<std::size_t>(frame_.world_count()), false);
      bits[static_cast<std::size_t>(w)] = true;
    }
  }
  valuation_.assign(v.begin(), v.end());
}

bool NModel::atom_true(int world_id, const std::string& atom) const {
  int w = frame_.world_index(world_id);
  for (const auto& [name, bits] : valuation_)
    if (name == atom) return bits[static_cast<std::size_t>(w)];
  return false;
}

std::vector<std::string> NModel::valuation_atoms() const {
  std::vector<std::string> out;
  for (const auto& [name, bits] : valuation_) out.push_back(name);
  return out;
}

std::vector<std::string> NModel::true_atoms_at(int world_id) const {
  std::vector<std::string> out;
  for (const auto& [name, bits] : valuation_)
    if (bits[static_cast<std::size_t>(frame_.world_index(world_id))])
      out.push_back(name);
  return out;
}

namespace {

// Truth of every member of Sub(a) at every world, computed bottom-up.
// table[i][w] with i indexing subformulas in post-order.
std::vector<std::vector<bool>> truth_table(const NModel& m,
                                           const std::vector<Formula>& subs) {
  const NFrame& f = m.frame();
  std::size_t n = static_cast<std::size_t>(f.world_count());
  std::unordered_map<Formula, std::size_t, FormulaHash> index;
  for (std::size_t i = 0; i < subs.size(); ++i) index.emplace(subs[i], i);

  std::vector<std::vector<bool>> table(subs.size(),
                                       std::vector<bool>(n, false));
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const Formula& s = subs[i];
    switch (s.kind()) {
      case FKind::Bot:
        break;
      case FKind::Atom:
        for (std::size_t w = 0; w < n; ++w)
          table[i][w] = m.atom_true(f.worlds()[w], s.atom_name());
        break;
      case FKind::Not: {
        const auto& c = table[index.at(s.left())];
        for (std::size_t w = 0; w < n; ++w) table[i][w] = !c[w];
        break;
      }
      case FKind::And: {
        const auto& l = table[index.at(s.left())];
        const auto& r = table[index.at(s.right())];
        for (std::size_t w = 0; w < n; ++w) table[i][w] = l[w] && r[w];
        break;
      }
      case FKind::Or: {
        const auto& l = table[index.at(s.left())];
        const auto& r = table[index.at(s.right())];
        for (std::size_t w = 0; w < n; ++w) table[i][w] = l[w] || r[w];
        break;
      }
      case FKind::Imp: {
        const auto& l = table[index.at(s.left())];
        const auto& r = table[index.at(s.right())];
        for (std::size_t w = 0; w < n; ++w) table[i][w] = !l[w] || r[w];
        break;
      }
      case FKind::Box: {
        const Formula body = s.left();
        const auto& c = table[index.at(body)];
        for (std::size_t w = 0; w < n; ++w) {
          bool all = true;
          for (int v : f.successors(body, f.worlds()[w]))
            if (!c[static_cast<std::size_t>(v)]) {
              all = false;
              break;
            }
          table[i][w] = all;
        }
        break;
      }
    }
  }
  return table;
}

}  // namespace

bool forces(const NModel& m, int world_id, const Formula& a) {
  int w = m.frame().world_index(world_id);
  auto subs = subformulas(a);
  auto table = truth_table(m, subs);
  return table.back()[static_cast<std::size_t>(w)];
}

bool valid_in_model(const NModel& m, const Formula& a) {
  auto subs = subformulas(a);
  auto table = truth_table(m, subs);
  const auto& row = table.back();
  return std::all_of(row.begin(), row.end(), [](bool b) { return b; });
}

bool valid_in_frame(const NFrame& f, const Formula& a) {
  std::vector<std::string> atoms = atom_names(a);
  std::size_t bits = atoms.size() * static_cast<std::size_t>(f.world_count());
  if (bits > 24)
    throw std::runtime_error("valid_in_frame: too many valuations (2^" +
                             std::to_string(bits) + ")");
  for (std::uint64_t mask = 0; mask < (1ULL << bits); ++mask) {
    std::vector<std::pair<int, std::vector<std::string>>> va;
    for (int w = 0; w < f.world_count(); ++w) {
      std::vector<std::string> at;
      for (std::size_t i = 0; i < atoms.size(); ++i)
        if ((mask >> (i * static_cast<std::size_t>(f.world_count()) +
                      static_cast<std::size_t>(w))) &
            1)
          at.push_back(atoms[i]);
      if (!at.empty()) va.emplace_back(f.worlds()[static_cast<std::size_t>(w)],
                                       std::move(at));
    }
    if (!valid_in_model(NModel(f, std::move(va)), a)) return false;
  }
  return true;
}

bool is_serial_for(const NFrame& f, const Formula& b) {
  for (int id : f.worlds())
    if (f.successors(b, id).empty()) return false;
  return true;
}

bool is_transitive_for(const NFrame& f, const Formula& b) {
  const Formula boxed = Formula::box(b);
  for (int x : f.worlds())
    for (int yi : f.successors(boxed, x)) {
      int y = f.worlds()[static_cast<std::size_t>(yi)];
      for (int zi : f.successors(b, y)) {
        const auto& direct = f.successors(b, x);
        if (std::find(direct.begin(), direct.end(), zi) == direct.end())
          return false;
      }
    }
  return true;
}

ConditionReport check_conditions(const NFrame& f, LogicId logic,
                                 const Formula& a) {
  ConditionReport report;
  if (logic == LogicId::N) return report;
  auto subs = subformulas(a);

  if (has_rosser_rule(logic)) {
    for (const Formula& s : subs) {
      if (!s.is(FKind::Box)) continue;
      const Formula b = s.left();
      for (int id : f.worlds())
        if (f.successors(b, id).empty())
          report.violations.push_back(
              {FrameCondition::Seriality, b, {id}});
    }
  }
  if (has_four_axiom(logic)) {
    for (const Formula& s : subs) {
      // [][]B in Sub(a): s is Box(Box(b)).
      if (!s.is(FKind::Box) || !s.left().is(FKind::Box)) continue;
      const Formula boxed_b = s.left();
      const Formula b = boxed_b.left();
      for (int x : f.worlds())
        for (int yi : f.successors(boxed_b, x)) {
          int y = f.worlds()[static_cast<std::size_t>(yi)];
          for (int zi : f.successors(b, y)) {
            const auto& direct = f.successors(b, x);
            if (std::find(direct.begin(), direct.end(), zi) == direct.end())
              report.violations.push_back(
                  {FrameCondition::Transitivity,
                   b,
                   {x, y, f.worlds()[static_cast<std::size_t>(zi)]}});
          }
        }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// JSON / DOT

NModel model_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ModelFormatError(std::string("model JSON: ") + e.what());
  }
  try {
    std::vector<int> worlds = j.at("worlds").get<std::vector<int>>();
    std::vector<std::pair<Formula, std::vector<NFrame::Edge>>> rels;
    if (j.contains("relations"))
      for (auto& [key, pairs] : j.at("relations").items()) {
        Formula index = parse(key);
        std::vector<NFrame::Edge> edges;
        for (auto& p : pairs) {
          if (!p.is_array() || p.size() != 2)
            throw ModelFormatError("model JSON: relation pair must be [x,y]");
          edges.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
        }
        rels.emplace_back(std::move(index), std::move(edges));
      }
    std::vector<std::pair<int, std::vector<std::string>>> val;
    if (j.contains("valuation"))
      for (auto& [key, atoms] : j.at("valuation").items())
        val.emplace_back(std::stoi(key),
                         atoms.get<std::vector<std::string>>());
    return NModel(NFrame(std::move(worlds), std::move(rels)), std::move(val));
  } catch (const ModelFormatError&) {
    throw;
  } catch (const ParseError& e) {
    throw ModelFormatError(std::string("model JSON relation key: ") +
                           e.what());
  } catch (const std::exception& e) {
    throw ModelFormatError(std::string("model JSON: ") + e.what());
  }
}

std::string model_to_json(const NModel& m) {
  nlohmann::ordered_json j;
  j["worlds"] = m.frame().worlds();
  nlohmann::ordered_json rels = nlohmann::ordered_json::object();
  for (const auto& [index, edges] : m.frame().relations()) {
    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    for (const auto& [x, y] : edges) pairs.push_back({x, y});
    rels[to_string(index)] = std::move(pairs);
  }
  j["relations"] = std::move(rels);
  nlohmann::ordered_json val = nlohmann::ordered_json::object();
  for (int id : m.frame().worlds()) {
    auto atoms = m.true_atoms_at(id);
    if (!atoms.empty()) val[std::to_string(id)] = atoms;
  }
  j["valuation"] = std::move(val);
  return j.dump();
}

std::string model_to_dot(const NModel& m) {
  std::ostringstream out;
  out << "digraph nmodel {\n";
  for (int id : m.frame().worlds()) {
    out << "  w" << id << " [label=\"" << id;
    auto atoms = m.true_atoms_at(id);
    if (!atoms.empty()) {
      out << ": ";
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) out << ",";
        out << atoms[i];
      }
    }
    out << "\"];\n";
  }
  for (const auto& [index, edges] : m.frame().relations())
    for (const auto& [x, y] : edges)
      out << "  w" << x << " -> w" << y << " [label=\"" << to_string(index)
          << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace nmodal
