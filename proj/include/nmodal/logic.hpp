#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace nmodal {

// N: tautologies + MP + Nec. NR adds the Rosser rule ~B / ~[]B.
// NF adds the axiom scheme []B -> [][]B. NRF adds both.
enum class LogicId { N, NR, NF, NRF };

inline bool has_rosser_rule(LogicId l) {
  return l == LogicId::NR || l == LogicId::NRF;
}

inline bool has_four_axiom(LogicId l) {
  return l == LogicId::NF || l == LogicId::NRF;
}

inline std::string to_string(LogicId l) {
  switch (l) {
    case LogicId::N:
      return "N";
    case LogicId::NR:
      return "NR";
    case LogicId::NF:
      return "NF";
    case LogicId::NRF:
      return "NRF";
  }
  return "?";
}

inline std::optional<LogicId> logic_from_string(std::string_view s) {
  if (s == "N") return LogicId::N;
  if (s == "NR") return LogicId::NR;
  if (s == "NF") return LogicId::NF;
  if (s == "NRF") return LogicId::NRF;
  return std::nullopt;
}

inline constexpr LogicId kAllLogics[] = {LogicId::N, LogicId::NR, LogicId::NF,
                                         LogicId::NRF};

}  // namespace nmodal
