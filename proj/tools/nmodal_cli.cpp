// nmodal: decide validity in N / NR / NF / NRF, check models and proofs,
// cross-check against the brute-force oracle, and generate formula corpora.
//
// Exit status: 0 valid/accepted/agreement, 1 invalid/rejected/disagreement,
// 2 usage or input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nmodal/decide.hpp"
#include "nmodal/formula.hpp"
#include "nmodal/gen.hpp"
#include "nmodal/logic.hpp"
#include "nmodal/proofs.hpp"
#include "nmodal/semantics.hpp"

namespace {

using nmodal::Formula;
using nmodal::LogicId;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// One formula per line; '#' starts a comment.
std::vector<Formula> formulas_from_text(const std::string& text) {
  std::vector<Formula> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (std::size_t hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t\r");
    try {
      out.push_back(nmodal::parse(line.substr(b, e - b + 1)));
    } catch (const nmodal::ParseError& err) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " +
                               err.what());
    }
  }
  return out;
}

int run_decide(LogicId logic, const std::vector<Formula>& formulas,
               const std::string& emit) {
  bool any_invalid = false;
  for (const Formula& f : formulas) {
    nmodal::Verdict v = nmodal::decide(logic, f);
    if (emit == "json") {
      std::cout << nmodal::verdict_to_json(logic, f, v) << "\n";
    } else if (emit == "dot") {
      if (v.valid)
        std::cout << "// " << nmodal::to_string(f) << ": valid\n";
      else
        std::cout << nmodal::model_to_dot(*v.countermodel);
    } else {
      if (v.valid) {
        std::cout << "valid\n";
      } else {
        std::cout << "invalid\n"
                  << "refuting world: " << v.refuting_world << "\n"
                  << nmodal::model_to_json(*v.countermodel) << "\n";
      }
    }
    any_invalid = any_invalid || !v.valid;
  }
  return any_invalid ? 1 : 0;
}

int run_check_model(LogicId logic, const Formula& f,
                    const std::string& model_path, const std::string& emit) {
  nmodal::NModel m = nmodal::model_from_json(slurp(model_path));
  if (emit == "dot") {
    std::cout << nmodal::model_to_dot(m);
    return 0;
  }
  nmodal::ConditionReport report =
      nmodal::check_conditions(m.frame(), logic, f);
  std::vector<int> failing;
  for (int w : m.frame().worlds())
    if (!nmodal::forces(m, w, f)) failing.push_back(w);

  if (emit == "json") {
    nlohmann::ordered_json j;
    j["conditions_ok"] = report.ok();
    auto viols = nlohmann::ordered_json::array();
    for (const auto& v : report.violations) {
      nlohmann::ordered_json jv;
      jv["condition"] = v.condition == nmodal::FrameCondition::Seriality
                            ? "serial"
                            : "transitive";
      jv["index"] = nmodal::to_string(v.index);
      jv["witnesses"] = v.witnesses;
      viols.push_back(std::move(jv));
    }
    j["violations"] = std::move(viols);
    j["valid_in_model"] = failing.empty();
    j["failing_worlds"] = failing;
    std::cout << j.dump() << "\n";
  } else {
    if (report.ok()) {
      std::cout << "conditions: ok\n";
    } else {
      for (const auto& v : report.violations) {
        std::cout << "condition violated: "
                  << (v.condition == nmodal::FrameCondition::Seriality
                          ? "serial"
                          : "transitive")
                  << " for " << nmodal::to_string(v.index) << " at";
        for (int w : v.witnesses) std::cout << ' ' << w;
        std::cout << "\n";
      }
    }
    if (failing.empty()) {
      std::cout << "valid in model\n";
    } else {
      std::cout << "fails at worlds:";
      for (int w : failing) std::cout << ' ' << w;
      std::cout << "\n";
    }
  }
  return (report.ok() && failing.empty()) ? 0 : 1;
}

int run_check_proof(LogicId logic, const std::string& proof_path,
                    const std::string& emit) {
  nmodal::Proof p = nmodal::parse_proof(slurp(proof_path));
  nmodal::CheckResult r = nmodal::check_proof(logic, p);
  if (emit == "json") {
    nlohmann::ordered_json j;
    j["accepted"] = r.accepted;
    if (!p.lines.empty())
      j["conclusion"] = nmodal::to_string(nmodal::conclusion(p));
    if (!r.accepted) {
      j["line"] = r.line;
      j["reason"] = r.reason;
    }
    std::cout << j.dump() << "\n";
  } else if (r.accepted) {
    std::cout << "accepted: " << nmodal::to_string(nmodal::conclusion(p))
              << "\n";
  } else {
    std::cout << "rejected: " << r.reason << "\n";
  }
  return r.accepted ? 0 : 1;
}

int run_oracle(LogicId logic, const std::vector<Formula>& formulas,
               int max_worlds, std::uint64_t budget) {
  int disagreements = 0;
  for (const Formula& f : formulas) {
    nmodal::Verdict v = nmodal::decide(logic, f);
    bool oracle_found = false, oracle_complete = false, budget_hit = false;
    int exhausted = 0;
    try {
      nmodal::OracleOptions opts;
      opts.budget = budget;
      nmodal::OracleResult res =
          nmodal::brute_force_decide(logic, f, max_worlds, opts);
      oracle_found = res.found_countermodel;
      oracle_complete = res.complete;
      exhausted = res.exhausted_worlds;
    } catch (const nmodal::BudgetExceeded& e) {
      budget_hit = true;
      exhausted = e.exhausted_worlds;
    }

    bool disagree = (v.valid && oracle_found) ||
                    (!v.valid && !oracle_found && oracle_complete);
    if (disagree) ++disagreements;

    std::cout << nmodal::to_string(f) << "\t"
              << (v.valid ? "valid" : "invalid") << "\t";
    if (oracle_found)
      std::cout << "oracle countermodel";
    else if (budget_hit)
      std::cout << "oracle budget hit at " << exhausted << " worlds";
    else
      std::cout << "oracle exhausted " << exhausted << " worlds ("
                << (oracle_complete ? "complete" : "bounded") << ")";
    std::cout << "\t" << (disagree ? "DISAGREEMENT" : "ok") << "\n";
  }
  std::cout << "checked " << formulas.size() << " formulas, " << disagreements
            << " disagreements\n";
  return disagreements == 0 ? 0 : 1;
}

int run_corpus(std::uint64_t seed, int count) {
  nmodal::FormulaGen gen(seed);
  for (int i = 0; i < count; ++i)
    std::cout << nmodal::to_string(gen.next()) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decision procedures for the provability logics N, NR, NF, NRF"};

  std::string logic_name = "N";
  std::string mode;
  std::string formula_text;
  std::string file_path;
  std::string emit = "text";
  std::uint64_t seed = 0;
  int count = 100;
  int max_worlds = 4;
  std::uint64_t budget = 10'000'000;

  app.add_option("--logic", logic_name, "logic: N, NR, NF or NRF")
      ->check(CLI::IsMember({"N", "NR", "NF", "NRF"}));
  app.add_option("--mode", mode, "decide | check-model | check-proof | oracle | corpus")
      ->required()
      ->check(CLI::IsMember(
          {"decide", "check-model", "check-proof", "oracle", "corpus"}));
  app.add_option("-f,--formula", formula_text, "formula text");
  app.add_option("--file", file_path,
                 "input file (formulas, model JSON, or proof)");
  app.add_option("--emit", emit, "output format")
      ->check(CLI::IsMember({"text", "json", "dot"}));
  app.add_option("--seed", seed, "corpus generator seed");
  app.add_option("--count", count, "number of corpus formulas");
  app.add_option("--max-worlds", max_worlds, "oracle world bound");
  app.add_option("--budget", budget, "oracle model-enumeration budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    LogicId logic = nmodal::logic_from_string(logic_name).value();

    if (mode == "corpus") return run_corpus(seed, count);

    if (mode == "check-proof") {
      if (file_path.empty())
        throw std::runtime_error("check-proof needs --file <proof>");
      return run_check_proof(logic, file_path, emit);
    }

    if (mode == "check-model") {
      if (file_path.empty() || formula_text.empty())
        throw std::runtime_error(
            "check-model needs --file <model.json> and --formula");
      return run_check_model(logic, nmodal::parse(formula_text), file_path,
                             emit);
    }

    // decide / oracle take a formula or a formula file.
    std::vector<Formula> formulas;
    if (!formula_text.empty()) formulas.push_back(nmodal::parse(formula_text));
    if (!file_path.empty()) {
      auto more = formulas_from_text(slurp(file_path));
      formulas.insert(formulas.end(), more.begin(), more.end());
    }
    if (formulas.empty())
      throw std::runtime_error(mode + " needs --formula or --file");

    if (mode == "oracle")
      return run_oracle(logic, formulas, max_worlds, budget);
    return run_decide(logic, formulas, emit);
  } catch (const nmodal::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
