#include "polyg/exporter.hpp"

#include "polyg/printer.hpp"

namespace polyg {

using nlohmann::json;

namespace {

std::string node_label(const Signature& sig, const Node& n) {
  std::string l = sig.cell(n.cell).name;
  if (n.literal) l += "#" + std::to_string(*n.literal);
  if (n.literal_var) l += "#$" + std::to_string(*n.literal_var);
  return l;
}

json attach_json(const Diagram& d, const Attach& a, bool producer) {
  json j;
  if (a.node == kBound) {
    j["boundary"] = producer ? "input" : "output";
    j["position"] = a.port;
  } else {
    j["node"] = a.node;
    j["port"] = a.port;
  }
  (void)d;
  return j;
}

const char* kind_name(RuleKind k) {
  return k == RuleKind::Computation ? "computation" : "structure";
}

const char* compat_name(Compat c) {
  switch (c) {
    case Compat::Compatible: return "compatible";
    case Compat::WeaklyCompatible: return "weakly-compatible";
    case Compat::Violation: return "violation";
  }
  return "?";
}

}  // namespace

std::string diagram_dot(const Signature& sig, const Diagram& d, const std::string& name) {
  std::string out = "digraph \"" + name + "\" {\n  rankdir=TB;\n  node [shape=box];\n";
  for (uint32_t k = 0; k < d.inputs().size(); ++k)
    out += "  in" + std::to_string(k) + " [shape=point, xlabel=\"" +
           sig.sort_name(d.inputs()[k]) + "\"];\n";
  for (uint32_t k = 0; k < d.outputs().size(); ++k)
    out += "  out" + std::to_string(k) + " [shape=point, xlabel=\"" +
           sig.sort_name(d.outputs()[k]) + "\"];\n";
  for (uint32_t n = 0; n < d.node_count(); ++n)
    out += "  n" + std::to_string(n) + " [label=\"" + node_label(sig, d.node(n)) + "\"];\n";

  auto endpoint = [&](const Attach& a, bool producer) {
    if (a.node == kBound)
      return (producer ? "in" : "out") + std::to_string(a.port);
    return "n" + std::to_string(a.node);
  };
  for (uint32_t n = 0; n < d.node_count(); ++n) {
    auto ins = d.node_inputs(n);
    for (uint32_t i = 0; i < ins.size(); ++i) {
      SortId s = d.producer_sort(sig, ins[i]);
      out += "  " + endpoint(ins[i], true) + " -> n" + std::to_string(n) + " [label=\"" +
             sig.sort_name(s) + "\"];\n";
    }
  }
  for (uint32_t k = 0; k < d.outputs().size(); ++k)
    out += "  " + endpoint(d.output_source(k), true) + " -> out" + std::to_string(k) + ";\n";
  out += "}\n";
  return out;
}

json diagram_json(const Signature& sig, const Diagram& d) {
  json j;
  j["schema"] = "polyg/diagram@1";
  for (SortId s : d.inputs()) j["inputs"].push_back(sig.sort_name(s));
  for (SortId s : d.outputs()) j["outputs"].push_back(sig.sort_name(s));
  j["inputs"] = j.value("inputs", json::array());
  j["outputs"] = j.value("outputs", json::array());
  j["nodes"] = json::array();
  for (uint32_t n = 0; n < d.node_count(); ++n) {
    json nj;
    nj["cell"] = sig.cell(d.node(n).cell).name;
    if (d.node(n).literal) nj["literal"] = *d.node(n).literal;
    j["nodes"].push_back(nj);
  }
  j["wires"] = json::array();
  for (uint32_t n = 0; n < d.node_count(); ++n) {
    auto ins = d.node_inputs(n);
    for (uint32_t i = 0; i < ins.size(); ++i) {
      json w;
      w["from"] = attach_json(d, ins[i], true);
      w["to"] = attach_json(d, {n, i}, false);
      w["sort"] = sig.sort_name(d.producer_sort(sig, ins[i]));
      j["wires"].push_back(w);
    }
  }
  for (uint32_t k = 0; k < d.outputs().size(); ++k) {
    json w;
    w["from"] = attach_json(d, d.output_source(k), true);
    w["to"] = attach_json(d, {kBound, k}, false);
    w["sort"] = sig.sort_name(d.outputs()[k]);
    j["wires"].push_back(w);
  }
  return j;
}

std::string program_dot(const Program& p, const std::string& only_rule,
                        bool include_structure) {
  std::string out = "digraph \"" + p.name + "\" {\n";
  int idx = 0;
  for (const Rule& r : p.rules) {
    if (!only_rule.empty() && r.name != only_rule) continue;
    if (only_rule.empty() && !include_structure && r.kind == RuleKind::Structure) continue;
    for (const char* side : {"lhs", "rhs"}) {
      const Diagram& d = side == std::string("lhs") ? r.lhs : r.rhs;
      std::string sub = diagram_dot(p.sig, d, r.name + "." + side);
      // strip the digraph wrapper and indent into a cluster
      size_t open = sub.find('{');
      size_t close = sub.rfind('}');
      out += "  subgraph \"cluster_" + std::to_string(idx++) + "\" {\n    label=\"" + r.name +
             " " + side + "\";\n";
      std::string body = sub.substr(open + 1, close - open - 1);
      // namespace the node ids per cluster
      std::string prefix = "r" + std::to_string(idx) + "_";
      for (const char* tok : {"in", "out", "n"}) {
        std::string from = std::string("  ") + tok;
        std::string to = "  " + prefix + tok;
        size_t pos = 0;
        while ((pos = body.find(from, pos)) != std::string::npos) {
          body.replace(pos, from.size(), to);
          pos += to.size();
        }
        from = std::string("-> ") + tok;
        to = "-> " + prefix + tok;
        pos = 0;
        while ((pos = body.find(from, pos)) != std::string::npos) {
          body.replace(pos, from.size(), to);
          pos += to.size();
        }
      }
      out += body + "  }\n";
    }
  }
  out += "}\n";
  return out;
}

json program_json(const Program& p, const std::string& only_rule, bool include_structure) {
  json j;
  j["schema"] = "polyg/program@1";
  j["name"] = p.name;
  j["rules"] = json::array();
  for (const Rule& r : p.rules) {
    if (!only_rule.empty() && r.name != only_rule) continue;
    if (only_rule.empty() && !include_structure && r.kind == RuleKind::Structure) continue;
    json rj;
    rj["name"] = r.name;
    rj["kind"] = kind_name(r.kind);
    rj["lhs"] = diagram_json(p.sig, r.lhs);
    rj["rhs"] = diagram_json(p.sig, r.rhs);
    j["rules"].push_back(rj);
  }
  return j;
}

json trace_json(const Program& p, const Trace& t) {
  json j;
  j["schema"] = "polyg/trace@1";
  j["computation_steps"] = t.k;
  j["structure_steps"] = t.l;
  j["size"] = t.size();
  j["instrumented"] = t.instrumented;
  if (t.instrumented) {
    j["initial"] = {{"heat", t.initial_heat},
                    {"structure_heat", t.initial_structure_heat},
                    {"current_sum", t.initial_current_sum}};
    j["peak_current_sum"] = t.peak_current_sum;
  }
  j["steps"] = json::array();
  for (const StepRecord& s : t.steps) {
    json sj;
    sj["rule"] = p.rules[s.rule].name;
    sj["kind"] = kind_name(s.kind);
    sj["cell"] = p.sig.cell(s.anchor_cell).name;
    if (t.instrumented) {
      sj["heat"] = s.heat;
      sj["structure_heat"] = s.structure_heat;
      sj["current_sum"] = s.current_sum;
    }
    j["steps"].push_back(sj);
  }
  return j;
}

json check_json(const Program& p, const SimpleReport& rep) {
  json j;
  j["schema"] = "polyg/check@1";
  j["program"] = p.name;
  j["simple"] = rep.simple;
  j["a"] = rep.a;
  j["K"] = rep.K;
  j["grid"] = {{"lo", rep.grid_lo}, {"hi", rep.grid}};
  j["violations"] = rep.violations;
  j["certified"] = rep.certified();
  j["rules"] = json::array();
  for (const auto& pr : rep.computation_rules) {
    json rj;
    rj["name"] = p.rules[pr.rule].name;
    rj["status"] = compat_name(pr.report.status);
    if (!pr.report.witness.empty()) rj["witness"] = pr.report.witness;
    if (!pr.report.detail.empty()) rj["detail"] = pr.report.detail;
    j["rules"].push_back(rj);
  }
  return j;
}

json bounds_json(const Program& p, const Interpretation& it, CellId fn,
                 const BoundReport& rep) {
  const TwoCell& tc = p.sig.cell(fn);
  std::vector<std::string> names = it.cell(fn).param_names;
  for (size_t i = names.size(); i < tc.source.size(); ++i)
    names.push_back("x" + std::to_string(i + 1));
  json j;
  j["schema"] = "polyg/bounds@1";
  j["program"] = p.name;
  j["function"] = tc.name;
  j["argument_sizes"] = rep.arg_sizes;
  j["polynomials"] = {{"P", rep.P.str(names)},
                      {"S", rep.S.str(names)},
                      {"Q", rep.Q.str(names)},
                      {"R", rep.R.str(names)}};
  j["checks"] = json::array();
  for (const BoundCheck& c : rep.checks) {
    json cj;
    cj["name"] = c.name;
    cj["pass"] = c.pass;
    cj["measured"] = c.measured;
    cj["bound"] = c.bound;
    if (!c.note.empty()) cj["note"] = c.note;
    j["checks"].push_back(cj);
  }
  j["trace"] = {{"computation_steps", rep.trace.k},
                {"structure_steps", rep.trace.l},
                {"size", rep.trace.size()},
                {"peak_current_sum", rep.trace.peak_current_sum}};
  j["result"] = json::array();
  for (const Value& v : rep.result) j["result"].push_back(print_value(p.sig, v));
  j["fuel_exhausted"] = rep.fuel_exhausted;
  j["all_pass"] = rep.all_pass;
  return j;
}

}  // namespace polyg

