#include "polyg/engine.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace polyg {

std::optional<Match> match_at(const Program& p, const Diagram& d, uint32_t rule_idx,
                              uint32_t anchor) {
  const Rule& rule = p.rules[rule_idx];
  const Diagram& L = rule.lhs;
  if (anchor >= d.node_count()) return std::nullopt;
  if (d.node(anchor).cell != L.node(rule.anchor).cell) return std::nullopt;

  Match m;
  m.rule = rule_idx;
  m.anchor = anchor;
  m.wire_binding.assign(L.inputs().size(), Attach{});
  m.literal_binding.assign(rule.schema_slots, 0);
  std::vector<bool> slot_bound(rule.schema_slots, false);
  m.matched_nodes.push_back(anchor);

  std::vector<std::pair<uint32_t, uint32_t>> stack{{rule.anchor, anchor}};
  while (!stack.empty()) {
    auto [pn, hn] = stack.back();
    stack.pop_back();
    auto pins = L.node_inputs(pn);
    auto hins = d.node_inputs(hn);
    for (size_t i = 0; i < pins.size(); ++i) {
      const Attach& pa = pins[i];
      const Attach& ha = hins[i];
      if (pa.node == kBound) {
        m.wire_binding[pa.port] = ha;
        continue;
      }
      if (ha.node == kBound) return std::nullopt;  // pattern wants a constructor
      if (pa.port != ha.port) return std::nullopt;
      const Node& pnode = L.node(pa.node);
      const Node& hnode = d.node(ha.node);
      if (pnode.cell != hnode.cell) return std::nullopt;
      if (pnode.literal && hnode.literal != pnode.literal) return std::nullopt;
      if (pnode.literal_var) {
        if (!hnode.literal) return std::nullopt;
        uint32_t v = *pnode.literal_var;
        if (slot_bound[v] && m.literal_binding[v] != *hnode.literal) return std::nullopt;
        slot_bound[v] = true;
        m.literal_binding[v] = *hnode.literal;
      }
      m.matched_nodes.push_back(ha.node);
      stack.emplace_back(pa.node, ha.node);
    }
  }
  for (const Guard& g : rule.guards)
    if (!g.eval(m.literal_binding)) return std::nullopt;
  return m;
}

std::vector<Match> find_redexes(const Program& p, const Diagram& d) {
  // Rules indexed by anchor cell.
  std::unordered_map<CellId, std::vector<uint32_t>> by_cell;
  for (uint32_t r = 0; r < p.rules.size(); ++r)
    by_cell[p.rules[r].lhs.node(p.rules[r].anchor).cell].push_back(r);

  std::vector<Match> out;
  for (uint32_t n = 0; n < d.node_count(); ++n) {
    auto it = by_cell.find(d.node(n).cell);
    if (it == by_cell.end()) continue;
    for (uint32_t r : it->second)
      if (auto m = match_at(p, d, r, n)) out.push_back(std::move(*m));
  }
  if (out.size() <= 1) return out;

  std::vector<uint32_t> order = d.canonical_order(p.sig);
  std::vector<uint32_t> rank(d.node_count(), 0);
  for (uint32_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  std::sort(out.begin(), out.end(), [&](const Match& a, const Match& b) {
    if (rank[a.anchor] != rank[b.anchor]) return rank[a.anchor] < rank[b.anchor];
    return a.rule < b.rule;
  });
  return out;
}

Diagram apply(const Program& p, const Diagram& d, const Match& m) {
  if (m.rule >= p.rules.size()) throw StaleMatch("unknown rule in match");
  auto fresh = match_at(p, d, m.rule, m.anchor);
  if (!fresh || fresh->wire_binding != m.wire_binding ||
      fresh->literal_binding != m.literal_binding)
    throw StaleMatch("match no longer holds at node " + std::to_string(m.anchor));
  const Rule& rule = p.rules[m.rule];
  const Diagram& R = rule.rhs;

  std::vector<bool> matched(d.node_count(), false);
  for (uint32_t n : fresh->matched_nodes) matched[n] = true;

  std::vector<uint32_t> remap(d.node_count(), kBound);
  std::vector<Node> nodes;
  std::vector<std::vector<Attach>> node_in;
  for (uint32_t n = 0; n < d.node_count(); ++n) {
    if (matched[n]) continue;
    remap[n] = static_cast<uint32_t>(nodes.size());
    nodes.push_back(d.node(n));
    node_in.emplace_back();  // filled below
  }
  const uint32_t rhs_base = static_cast<uint32_t>(nodes.size());
  for (uint32_t n = 0; n < R.node_count(); ++n) {
    Node nd = R.node(n);
    if (nd.literal_var) {
      nd.literal = m.literal_binding[*nd.literal_var];
      nd.literal_var.reset();
    }
    nodes.push_back(nd);
    node_in.emplace_back();
  }

  auto host_producer = [&](const Attach& a) -> Attach {
    if (a.node == kBound) return a;
    return {remap[a.node], a.port};
  };
  // Producer of the right side's output j, translated into the new graph.
  std::vector<Attach> rhs_out(R.outputs().size());
  auto rhs_producer = [&](const Attach& a) -> Attach {
    if (a.node == kBound) return host_producer(m.wire_binding[a.port]);
    return {rhs_base + a.node, a.port};
  };
  for (uint32_t j = 0; j < R.outputs().size(); ++j)
    rhs_out[j] = rhs_producer(R.output_source(j));

  auto translate = [&](const Attach& a) -> Attach {
    if (a.node == kBound) return a;
    if (a.node == m.anchor) return rhs_out[a.port];
    return {remap[a.node], a.port};
  };

  for (uint32_t n = 0; n < d.node_count(); ++n) {
    if (matched[n]) continue;
    auto& ports = node_in[remap[n]];
    for (const Attach& a : d.node_inputs(n)) ports.push_back(translate(a));
  }
  for (uint32_t n = 0; n < R.node_count(); ++n) {
    auto& ports = node_in[rhs_base + n];
    for (const Attach& a : R.node_inputs(n)) ports.push_back(rhs_producer(a));
  }
  std::vector<Attach> out_src;
  out_src.reserve(d.outputs().size());
  for (uint32_t k = 0; k < d.outputs().size(); ++k)
    out_src.push_back(translate(d.output_source(k)));

  return Diagram::raw(d.inputs(), d.outputs(), std::move(nodes), std::move(node_in),
                      std::move(out_src));
}

Diagram collect_garbage(const Program& p, const Diagram& d) {
  const size_t n = d.node_count();
  if (n == 0) return d;
  // Garbage is a closed constructor+eraser component, so no erasers means
  // nothing to collect (a constructor-only component would be cyclic).
  bool any_eps = false;
  for (uint32_t i = 0; i < n && !any_eps; ++i)
    any_eps = p.sig.cell(d.node(i).cell).kind == CellKind::Eps;
  if (!any_eps) return d;
  // Union components over the undirected port graph, tracking boundary
  // contact and cell kinds.
  std::vector<uint32_t> parent(n);
  for (uint32_t i = 0; i < n; ++i) parent[i] = i;
  std::function<uint32_t(uint32_t)> find = [&](uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](uint32_t a, uint32_t b) { parent[find(a)] = find(b); };

  std::vector<bool> at_boundary(n, false);
  for (uint32_t i = 0; i < n; ++i)
    for (const Attach& a : d.node_inputs(i)) {
      if (a.node == kBound) at_boundary[i] = true;
      else unite(i, a.node);
    }
  for (uint32_t k = 0; k < d.outputs().size(); ++k) {
    const Attach& a = d.output_source(k);
    if (a.node != kBound) at_boundary[a.node] = true;
  }

  std::vector<bool> comp_keep(n, false);
  for (uint32_t i = 0; i < n; ++i) {
    CellKind kind = p.sig.cell(d.node(i).cell).kind;
    bool erasable = kind == CellKind::Constructor || kind == CellKind::Eps;
    if (at_boundary[i] || !erasable) comp_keep[find(i)] = true;
  }
  bool drop_any = false;
  for (uint32_t i = 0; i < n; ++i)
    if (!comp_keep[find(i)]) {
      drop_any = true;
      break;
    }
  if (!drop_any) return d;

  std::vector<uint32_t> remap(n, kBound);
  std::vector<Node> nodes;
  std::vector<std::vector<Attach>> node_in;
  for (uint32_t i = 0; i < n; ++i) {
    if (!comp_keep[find(i)]) continue;
    remap[i] = static_cast<uint32_t>(nodes.size());
    nodes.push_back(d.node(i));
    node_in.emplace_back();
  }
  for (uint32_t i = 0; i < n; ++i) {
    if (remap[i] == kBound) continue;
    auto& ports = node_in[remap[i]];
    for (const Attach& a : d.node_inputs(i))
      ports.push_back(a.node == kBound ? a : Attach{remap[a.node], a.port});
  }
  std::vector<Attach> out_src;
  for (uint32_t k = 0; k < d.outputs().size(); ++k) {
    Attach a = d.output_source(k);
    out_src.push_back(a.node == kBound ? a : Attach{remap[a.node], a.port});
  }
  return Diagram::raw(d.inputs(), d.outputs(), std::move(nodes), std::move(node_in),
                      std::move(out_src));
}

namespace {

struct StateMeasure {
  uint64_t heat = 0, sheat = 0, current_sum = 0;
};

StateMeasure measure_state(const Program& p, const Diagram& d, const Interpretation& it) {
  StateMeasure sm;
  std::span<const uint64_t> no_inputs;
  auto node_in = flow_values<uint64_t>(p.sig, d, it, no_inputs);
  for (uint32_t n = 0; n < d.node_count(); ++n) {
    const auto& ins = node_in[n];
    sm.heat += it.heat(d.node(n).cell).eval(ins);
    uint64_t in_sum = 0;
    for (uint64_t v : ins) in_sum += v;
    sm.current_sum = std::max(sm.current_sum, in_sum);
    switch (p.sig.cell(d.node(n).cell).kind) {
      case CellKind::Tau: sm.sheat += ins[0] * ins[1]; break;
      case CellKind::Delta: sm.sheat += ins[0] * ins[0]; break;
      case CellKind::Eps: sm.sheat += ins[0]; break;
      default: break;
    }
  }
  std::vector<uint64_t> outs = eval_current<uint64_t>(p.sig, d, it, no_inputs);
  uint64_t out_sum = 0;
  for (uint64_t v : outs) out_sum += v;
  sm.current_sum = std::max(sm.current_sum, out_sum);
  return sm;
}

/// Anchors with another match anchor strictly on their producer side
/// (innermost skips those) or consumer side (outermost skips those).
std::vector<bool> has_anchor_in_direction(const Diagram& d, const std::vector<Match>& ms,
                                          bool toward_inputs) {
  std::vector<bool> is_anchor(d.node_count(), false);
  for (const Match& m : ms) is_anchor[m.anchor] = true;
  auto cons = d.consumers();
  std::vector<bool> result(d.node_count(), false);
  for (const Match& m : ms) {
    if (result[m.anchor]) continue;
    std::vector<bool> seen(d.node_count(), false);
    std::vector<uint32_t> stack{m.anchor};
    seen[m.anchor] = true;
    bool found = false;
    while (!stack.empty() && !found) {
      uint32_t n = stack.back();
      stack.pop_back();
      auto follow = [&](const Attach& a) {
        if (a.node == kBound || seen[a.node]) return;
        seen[a.node] = true;
        if (is_anchor[a.node]) found = true;
        stack.push_back(a.node);
      };
      if (toward_inputs)
        for (const Attach& a : d.node_inputs(n)) follow(a);
      else
        for (const Attach& a : cons.of_node[n]) follow(a);
    }
    result[m.anchor] = found;
  }
  return result;
}

size_t pick_match(const Diagram& d, const std::vector<Match>& ms, Strategy strategy,
                  std::mt19937_64& rng) {
  if (ms.size() == 1) return 0;
  switch (strategy) {
    case Strategy::Random: {
      std::uniform_int_distribution<size_t> dist(0, ms.size() - 1);
      return dist(rng);
    }
    case Strategy::LeftmostInnermost: {
      auto blocked = has_anchor_in_direction(d, ms, /*toward_inputs=*/true);
      for (size_t i = 0; i < ms.size(); ++i)
        if (!blocked[ms[i].anchor]) return i;
      return 0;
    }
    case Strategy::LeftmostOutermost: {
      auto blocked = has_anchor_in_direction(d, ms, /*toward_inputs=*/false);
      for (size_t i = 0; i < ms.size(); ++i)
        if (!blocked[ms[i].anchor]) return i;
      return 0;
    }
  }
  return 0;
}

}  // namespace

NormalizeResult normalize(const Program& p, const Diagram& start, const EngineOptions& opt) {
  NormalizeResult res;
  res.result = start;
  std::mt19937_64 rng(opt.seed);
  Trace& tr = res.trace;
  if (opt.instrument) {
    tr.instrumented = true;
    StateMeasure sm = measure_state(p, res.result, *opt.instrument);
    tr.initial_heat = sm.heat;
    tr.initial_structure_heat = sm.sheat;
    tr.initial_current_sum = sm.current_sum;
    tr.peak_current_sum = sm.current_sum;
  }

  uint64_t fuel = opt.fuel;
  for (;;) {
    std::vector<Match> ms = find_redexes(p, res.result);
    if (ms.empty()) return res;
    if (fuel == 0) {
      res.fuel_exhausted = true;
      return res;
    }
    --fuel;
    const Match& m = ms[pick_match(res.result, ms, opt.strategy, rng)];
    Diagram next = collect_garbage(p, apply(p, res.result, m));
    const Rule& rule = p.rules[m.rule];
    StepRecord rec;
    rec.rule = m.rule;
    rec.kind = rule.kind;
    rec.anchor_cell = rule.lhs.node(rule.anchor).cell;
    if (rule.kind == RuleKind::Computation) tr.k++;
    else tr.l++;
    if (opt.instrument) {
      StateMeasure sm = measure_state(p, next, *opt.instrument);
      rec.heat = sm.heat;
      rec.structure_heat = sm.sheat;
      rec.current_sum = sm.current_sum;
      tr.peak_current_sum = std::max(tr.peak_current_sum, sm.current_sum);
    }
    tr.steps.push_back(rec);
    res.result = std::move(next);
  }
}

EnumerateResult enumerate_normal_forms(const Program& p, const Diagram& start,
                                       const EnumerateOptions& opt) {
  EnumerateResult res;
  std::unordered_set<std::string> seen;
  std::unordered_set<std::string> nf_seen;
  std::deque<std::pair<Diagram, uint64_t>> queue;

  seen.insert(start.canonical_form(p.sig));
  queue.emplace_back(start, 0);
  while (!queue.empty()) {
    auto [d, depth] = std::move(queue.front());
    queue.pop_front();
    res.states_explored++;
    std::vector<Match> ms = find_redexes(p, d);
    if (ms.empty()) {
      if (nf_seen.insert(d.canonical_form(p.sig)).second) res.normal_forms.push_back(d);
      continue;
    }
    if (depth >= opt.max_depth) {
      res.budget_exhausted = true;
      continue;
    }
    for (const Match& m : ms) {
      Diagram next = collect_garbage(p, apply(p, d, m));
      std::string key = next.canonical_form(p.sig);
      if (!seen.insert(std::move(key)).second) continue;
      if (seen.size() > opt.max_states) {
        res.budget_exhausted = true;
        return res;
      }
      queue.emplace_back(std::move(next), depth + 1);
    }
  }
  return res;
}

EvalResult evaluate(const Program& p, CellId fn, std::span<const Value> args, EvalMode mode,
                    const EngineOptions& eng, const EnumerateOptions& enumerate) {
  const TwoCell& cell = p.sig.cell(fn);
  if (args.size() != cell.source.size())
    throw TypeMismatch(std::min(args.size(), cell.source.size()),
                       std::to_string(cell.source.size()) + " arguments",
                       std::to_string(args.size()) + " arguments");
  for (size_t i = 0; i < args.size(); ++i) {
    SortId got = p.sig.cell(args[i].root).target[0];
    if (got != cell.source[i])
      throw TypeMismatch(i, p.sig.sort_name(cell.source[i]), p.sig.sort_name(got));
  }
  Diagram start = values_diagram(p.sig, args).then(Diagram::cell(p.sig, fn));

  EvalResult res;
  if (mode == EvalMode::Confluent) {
    NormalizeResult nr = normalize(p, start, eng);
    res.trace = std::move(nr.trace);
    res.fuel_exhausted = nr.fuel_exhausted;
    if (!res.fuel_exhausted) res.values = decode_values(p.sig, nr.result);
    return res;
  }
  EnumerateResult er = enumerate_normal_forms(p, start, enumerate);
  res.budget_exhausted = er.budget_exhausted;
  for (const Diagram& nf : er.normal_forms)
    res.normal_forms.push_back(decode_values(p.sig, nf));
  std::sort(res.normal_forms.begin(), res.normal_forms.end(),
            [](const auto& a, const auto& b) { return value_tuple_compare(a, b) < 0; });
  if (!res.normal_forms.empty()) res.values = res.normal_forms.back();
  return res;
}

}  // namespace polyg
