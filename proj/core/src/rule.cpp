#include "polyg/rule.hpp"

namespace polyg {

std::vector<uint32_t> Program::rules_anchored_at(CellId c) const {
  std::vector<uint32_t> out;
  for (uint32_t i = 0; i < rules.size(); ++i)
    if (rules[i].lhs.node(rules[i].anchor).cell == c) out.push_back(i);
  return out;
}

std::vector<std::string> finalize_rule(const Signature& sig, Rule& rule) {
  std::vector<std::string> bad;
  auto complain = [&](std::string m) { bad.push_back(rule.name + ": " + std::move(m)); };

  for (const std::string& m : rule.lhs.validate(sig)) complain("lhs " + m);
  for (const std::string& m : rule.rhs.validate(sig)) complain("rhs " + m);
  if (!bad.empty()) return bad;

  if (rule.lhs.inputs() != rule.rhs.inputs() || rule.lhs.outputs() != rule.rhs.outputs())
    complain("left and right sides must share 1-source and 1-target");

  // Unique non-constructor node = anchor.
  uint32_t anchor = kBound;
  for (uint32_t n = 0; n < rule.lhs.node_count(); ++n) {
    CellKind k = sig.cell(rule.lhs.node(n).cell).kind;
    if (k == CellKind::Constructor) continue;
    if (anchor != kBound) {
      complain("left side has more than one active (non-constructor) cell");
      return bad;
    }
    anchor = n;
  }
  if (anchor == kBound) {
    complain("left side has no active cell");
    return bad;
  }
  const TwoCell& ac = sig.cell(rule.lhs.node(anchor).cell);
  if (rule.kind == RuleKind::Computation && ac.kind != CellKind::Function)
    complain("computation rule must be anchored at a function cell");
  if (rule.kind == RuleKind::Structure && !is_structure(ac.kind))
    complain("structure rule must be anchored at a structure cell");

  // Anchor outputs are the lhs outputs, in order.
  if (rule.lhs.outputs().size() != ac.target.size()) {
    complain("left side outputs must be the anchor's outputs");
  } else {
    for (uint32_t k = 0; k < rule.lhs.outputs().size(); ++k) {
      Attach a = rule.lhs.output_source(k);
      if (a.node != anchor || a.port != k)
        complain("left side output " + std::to_string(k) + " does not come from the anchor");
    }
  }

  // Pattern side above the anchor: constructor trees only, every wire
  // distinct (automatic in a port graph), schema slots declared.
  std::vector<uint32_t> slot_bound(rule.schema_slots, 0);
  for (uint32_t n = 0; n < rule.lhs.node_count(); ++n) {
    const Node& nd = rule.lhs.node(n);
    if (nd.literal_var) {
      if (*nd.literal_var >= rule.schema_slots)
        complain("lhs schema slot out of range");
      else
        slot_bound[*nd.literal_var]++;
    }
  }
  for (uint32_t s = 0; s < rule.schema_slots; ++s)
    if (slot_bound[s] == 0) complain("schema slot " + std::to_string(s) + " unbound on the left");
  for (uint32_t n = 0; n < rule.rhs.node_count(); ++n) {
    const Node& nd = rule.rhs.node(n);
    if (nd.literal_var && *nd.literal_var >= rule.schema_slots)
      complain("rhs schema slot out of range");
  }
  for (const Guard& g : rule.guards)
    if (g.lhs >= rule.schema_slots || g.rhs >= rule.schema_slots)
      complain("guard refers to an unknown schema slot");

  if (bad.empty()) rule.anchor = anchor;
  return bad;
}

uint32_t structure_cell_count(const Signature& sig, const Diagram& d) {
  uint32_t k = 0;
  for (uint32_t n = 0; n < d.node_count(); ++n)
    if (is_structure(sig.cell(d.node(n).cell).kind)) k++;
  return k;
}

uint32_t program_structure_bound(const Program& p) {
  uint32_t k = 0;
  for (const Rule& r : p.rules)
    if (r.kind == RuleKind::Computation)
      k = std::max(k, structure_cell_count(p.sig, r.rhs));
  return k;
}

}  // namespace polyg
