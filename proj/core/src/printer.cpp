#include "polyg/printer.hpp"

namespace polyg {

std::string print_program(const Program& p, const Interpretation* interp) {
  const Signature& sig = p.sig;
  std::string out = "polygraph " + p.name + "\n\n";
  for (SortId s = 0; s < sig.sort_count(); ++s) out += "sort " + sig.sort_name(s) + "\n";
  out += "\n";
  for (CellId c = 0; c < sig.cell_count(); ++c) {
    const TwoCell& tc = sig.cell(c);
    if (tc.kind != CellKind::Constructor) continue;
    out += "constructor " + tc.name + " : " +
           (tc.source.empty() ? "" : sig.path_str(tc.source) + " ") + "-> " +
           sig.sort_name(tc.target[0]);
    if (interp && interp->constructor_weight(c) != 1)
      out += " weight " + std::to_string(interp->constructor_weight(c));
    if (tc.literal_family) out += " literal";
    out += "\n";
  }
  out += "\n";
  for (CellId c = 0; c < sig.cell_count(); ++c) {
    const TwoCell& tc = sig.cell(c);
    if (tc.kind != CellKind::Function) continue;
    out += "function " + tc.name + " : " +
           (tc.source.empty() ? "" : sig.path_str(tc.source) + " ") + "-> " +
           sig.path_str(tc.target) + "\n";
  }
  out += "\n";
  for (const Rule& r : p.rules) {
    if (r.kind != RuleKind::Computation) continue;  // structure rules are derived
    out += "rule " + r.name + " : " + r.source_text + "\n";
  }
  if (interp) {
    out += "\n";
    for (CellId c = 0; c < sig.cell_count(); ++c) {
      const TwoCell& tc = sig.cell(c);
      if (tc.kind != CellKind::Function) continue;
      const CellInterp& ci = interp->cell(c);
      std::vector<std::string> names = ci.param_names;
      for (size_t i = names.size(); i < tc.source.size(); ++i)
        names.push_back("x" + std::to_string(i + 1));
      out += "interp " + tc.name + "(";
      for (size_t i = 0; i < tc.source.size(); ++i) {
        if (i) out += ", ";
        out += names[i];
      }
      out += ") : current ";
      if (ci.current.empty()) out += "";
      for (size_t j = 0; j < ci.current.size(); ++j) {
        if (j) out += ", ";
        out += ci.current[j].str(names);
      }
      out += " heat " + ci.heat.str(names) + "\n";
    }
  }
  return out;
}

namespace {

bool is_named(const Signature& sig, CellId c, const char* name) {
  return sig.cell(c).name == name;
}

// Peano chains print as decimals when built from zero/succ.
std::optional<uint64_t> as_peano(const Signature& sig, const Value& v) {
  uint64_t n = 0;
  const Value* cur = &v;
  while (is_named(sig, cur->root, "succ") && cur->children.size() == 1) {
    ++n;
    cur = &cur->children[0];
  }
  if (is_named(sig, cur->root, "zero") && cur->children.empty()) return n;
  return std::nullopt;
}

std::optional<std::string> as_word(const Signature& sig, const Value& v) {
  std::string w;
  const Value* cur = &v;
  while (sig.cell(cur->root).name.rfind("sym_", 0) == 0 && cur->children.size() == 1) {
    w += sig.cell(cur->root).name.substr(4);
    cur = &cur->children[0];
  }
  if (is_named(sig, cur->root, "eow") && cur->children.empty()) return w;
  return std::nullopt;
}

}  // namespace

std::string print_value(const Signature& sig, const Value& v) {
  const TwoCell& tc = sig.cell(v.root);
  if (tc.literal_family) return std::to_string(*v.literal);
  if (auto n = as_peano(sig, v)) return std::to_string(*n);
  if (auto w = as_word(sig, v)) return "\"" + *w + "\"";
  if (tc.name == "nil" || tc.name == "cons") {
    // list sugar when the chain ends in nil
    std::string items;
    const Value* cur = &v;
    while (is_named(sig, cur->root, "cons") && cur->children.size() == 2) {
      if (!items.empty()) items += ", ";
      items += print_value(sig, cur->children[0]);
      cur = &cur->children[1];
    }
    if (is_named(sig, cur->root, "nil")) return "[" + items + "]";
  }
  std::string out = tc.name;
  if (!v.children.empty()) {
    out += "(";
    for (size_t i = 0; i < v.children.size(); ++i) {
      if (i) out += ", ";
      out += print_value(sig, v.children[i]);
    }
    out += ")";
  }
  return out;
}

std::string print_values(const Signature& sig, std::span<const Value> vs) {
  if (vs.size() == 1) return print_value(sig, vs[0]);
  std::string out = "(";
  for (size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ", ";
    out += print_value(sig, vs[i]);
  }
  return out + ")";
}

}  // namespace polyg

