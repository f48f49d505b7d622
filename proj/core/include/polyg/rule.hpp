#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "polyg/diagram.hpp"

namespace polyg {

enum class RuleKind : uint8_t { Computation, Structure };

/// Decidable comparison between two literal schema slots, evaluated on the
/// indices bound at match time.
struct Guard {
  enum class Cmp : uint8_t { Le, Lt, Eq };
  Cmp cmp = Cmp::Le;
  uint32_t lhs = 0, rhs = 0;

  bool eval(std::span<const uint64_t> binding) const {
    uint64_t a = binding[lhs], b = binding[rhs];
    switch (cmp) {
      case Cmp::Le: return a <= b;
      case Cmp::Lt: return a < b;
      case Cmp::Eq: return a == b;
    }
    return false;
  }
};

/// A rewrite rule between circuits with equal boundaries. Computation rules
/// have a left side of shape t*phi: constructor trees and plain wires feeding
/// one function cell. Structure rules push a constructor through tau/delta/
/// eps. Either way the left side has a unique non-constructor node, the
/// anchor, whose outputs are the left side's outputs in order.
struct Rule {
  std::string name;
  Diagram lhs, rhs;
  RuleKind kind = RuleKind::Computation;
  std::vector<Guard> guards;
  uint32_t schema_slots = 0;  // number of literal schema variables
  std::vector<std::string> slot_names;
  std::string source_text;  // `pattern => rhs [when ...]`, empty for generated rules

  uint32_t anchor = 0;  // node index of the anchor in lhs (set by finalize)
};

struct Program {
  std::string name;
  Signature sig;
  std::vector<Rule> rules;

  std::vector<uint32_t> rules_anchored_at(CellId c) const;
};

/// Checks rule well-formedness and locates the anchor; returns diagnostics
/// (empty when fine) and fills `rule.anchor` on success.
std::vector<std::string> finalize_rule(const Signature& sig, Rule& rule);

/// Count of structure 2-cells in a diagram (used for the program constant K).
uint32_t structure_cell_count(const Signature& sig, const Diagram& d);

/// Max structure-cell count over computation rule right sides.
uint32_t program_structure_bound(const Program& p);

}  // namespace polyg
