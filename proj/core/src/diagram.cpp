#include "polyg/diagram.hpp"

#include <algorithm>
#include <deque>

namespace polyg {

Diagram Diagram::identity(OnePath sorts) {
  Diagram d;
  d.inputs_ = sorts;
  d.outputs_ = std::move(sorts);
  d.outsrc_.resize(d.outputs_.size());
  for (uint32_t k = 0; k < d.outputs_.size(); ++k) d.outsrc_[k] = {kBound, k};
  return d;
}

Diagram Diagram::cell(const Signature& sig, CellId c, std::optional<uint64_t> literal,
                      std::optional<uint32_t> literal_var) {
  const TwoCell& tc = sig.cell(c);
  Diagram d;
  d.inputs_ = tc.source;
  d.outputs_ = tc.target;
  d.nodes_.push_back({c, literal, literal_var});
  d.in_.emplace_back();
  for (uint32_t i = 0; i < tc.source.size(); ++i) d.in_[0].push_back({kBound, i});
  for (uint32_t j = 0; j < tc.target.size(); ++j) d.outsrc_.push_back({0, j});
  return d;
}

Diagram Diagram::raw(OnePath inputs, OnePath outputs, std::vector<Node> nodes,
                     std::vector<std::vector<Attach>> node_in, std::vector<Attach> out_src) {
  Diagram d;
  d.inputs_ = std::move(inputs);
  d.outputs_ = std::move(outputs);
  d.nodes_ = std::move(nodes);
  d.in_ = std::move(node_in);
  d.outsrc_ = std::move(out_src);
  return d;
}

SortId Diagram::producer_sort(const Signature& sig, const Attach& a) const {
  if (a.node == kBound) return inputs_.at(a.port);
  return sig.cell(nodes_.at(a.node).cell).target.at(a.port);
}

Diagram Diagram::beside(const Diagram& g) const {
  Diagram d;
  d.inputs_ = inputs_;
  d.inputs_.insert(d.inputs_.end(), g.inputs_.begin(), g.inputs_.end());
  d.outputs_ = outputs_;
  d.outputs_.insert(d.outputs_.end(), g.outputs_.begin(), g.outputs_.end());

  const uint32_t nshift = static_cast<uint32_t>(nodes_.size());
  const uint32_t bshift = static_cast<uint32_t>(inputs_.size());
  auto remap = [&](Attach a) -> Attach {
    if (a.node == kBound) return {kBound, a.port + bshift};
    return {a.node + nshift, a.port};
  };

  d.nodes_ = nodes_;
  d.nodes_.insert(d.nodes_.end(), g.nodes_.begin(), g.nodes_.end());
  d.in_ = in_;
  for (const auto& ports : g.in_) {
    auto& v = d.in_.emplace_back();
    v.reserve(ports.size());
    for (const Attach& a : ports) v.push_back(remap(a));
  }
  d.outsrc_ = outsrc_;
  for (const Attach& a : g.outsrc_) d.outsrc_.push_back(remap(a));
  return d;
}

Diagram Diagram::then(const Diagram& g) const {
  if (outputs_.size() != g.inputs_.size())
    throw TypeMismatch(std::min(outputs_.size(), g.inputs_.size()),
                       std::to_string(g.inputs_.size()) + " inputs",
                       std::to_string(outputs_.size()) + " outputs");
  for (size_t k = 0; k < outputs_.size(); ++k)
    if (outputs_[k] != g.inputs_[k])
      throw TypeMismatch(k, "sort #" + std::to_string(g.inputs_[k]),
                         "sort #" + std::to_string(outputs_[k]));

  Diagram d;
  d.inputs_ = inputs_;
  d.outputs_ = g.outputs_;
  const uint32_t nshift = static_cast<uint32_t>(nodes_.size());
  auto remap = [&](Attach a) -> Attach {
    if (a.node == kBound) return outsrc_[a.port];  // fuse onto f's output wire
    return {a.node + nshift, a.port};
  };

  d.nodes_ = nodes_;
  d.nodes_.insert(d.nodes_.end(), g.nodes_.begin(), g.nodes_.end());
  d.in_ = in_;
  for (const auto& ports : g.in_) {
    auto& v = d.in_.emplace_back();
    v.reserve(ports.size());
    for (const Attach& a : ports) v.push_back(remap(a));
  }
  d.outsrc_.reserve(g.outsrc_.size());
  for (const Attach& a : g.outsrc_) d.outsrc_.push_back(remap(a));
  return d;
}

std::vector<std::string> Diagram::validate(const Signature& sig) const {
  std::vector<std::string> bad;
  auto complain = [&](std::string m) { bad.push_back(std::move(m)); };

  for (SortId s : inputs_)
    if (s >= sig.sort_count()) complain("input sort out of range");
  for (SortId s : outputs_)
    if (s >= sig.sort_count()) complain("output sort out of range");
  if (in_.size() != nodes_.size()) {
    complain("node/in-port table size mismatch");
    return bad;
  }

  for (uint32_t n = 0; n < nodes_.size(); ++n) {
    const Node& nd = nodes_[n];
    if (nd.cell >= sig.cell_count()) {
      complain("node " + std::to_string(n) + ": unknown cell");
      continue;
    }
    const TwoCell& c = sig.cell(nd.cell);
    if (in_[n].size() != c.source.size())
      complain("node " + std::to_string(n) + " (" + c.name + "): arity mismatch");
    if (c.literal_family) {
      if (nd.literal.has_value() == nd.literal_var.has_value())
        complain("node " + std::to_string(n) + " (" + c.name +
                 "): literal cell needs exactly one of index or schema slot");
    } else if (nd.literal || nd.literal_var) {
      complain("node " + std::to_string(n) + " (" + c.name + "): unexpected literal payload");
    }
  }
  if (!bad.empty()) return bad;

  // Wire endpoints: in range, sorts agree, each producer used exactly once.
  std::vector<uint32_t> input_uses(inputs_.size(), 0);
  std::vector<std::vector<uint32_t>> out_uses(nodes_.size());
  for (uint32_t n = 0; n < nodes_.size(); ++n)
    out_uses[n].assign(sig.cell(nodes_[n].cell).target.size(), 0);

  auto check_producer = [&](const Attach& a, SortId want, const std::string& where) {
    if (a.node == kBound) {
      if (a.port >= inputs_.size()) {
        complain(where + ": dangling reference to input " + std::to_string(a.port));
        return;
      }
      input_uses[a.port]++;
      if (inputs_[a.port] != want)
        complain(where + ": sort mismatch, wire carries " + sig.sort_name(inputs_[a.port]) +
                 " into " + sig.sort_name(want));
      return;
    }
    if (a.node >= nodes_.size()) {
      complain(where + ": dangling node reference");
      return;
    }
    const TwoCell& pc = sig.cell(nodes_[a.node].cell);
    if (a.port >= pc.target.size()) {
      complain(where + ": bad out-port on " + pc.name);
      return;
    }
    out_uses[a.node][a.port]++;
    if (pc.target[a.port] != want)
      complain(where + ": sort mismatch, wire carries " + sig.sort_name(pc.target[a.port]) +
               " into " + sig.sort_name(want));
  };

  for (uint32_t n = 0; n < nodes_.size(); ++n) {
    const TwoCell& c = sig.cell(nodes_[n].cell);
    for (uint32_t i = 0; i < in_[n].size(); ++i)
      check_producer(in_[n][i], c.source[i],
                     "node " + std::to_string(n) + " (" + c.name + ") in-port " + std::to_string(i));
  }
  if (outsrc_.size() != outputs_.size()) complain("output table size mismatch");
  for (uint32_t k = 0; k < outsrc_.size() && k < outputs_.size(); ++k)
    check_producer(outsrc_[k], outputs_[k], "output " + std::to_string(k));

  for (uint32_t k = 0; k < input_uses.size(); ++k)
    if (input_uses[k] != 1)
      complain("input " + std::to_string(k) + " used " + std::to_string(input_uses[k]) +
               " times (each port carries exactly one wire)");
  for (uint32_t n = 0; n < out_uses.size(); ++n)
    for (uint32_t j = 0; j < out_uses[n].size(); ++j)
      if (out_uses[n][j] != 1)
        complain("node " + std::to_string(n) + " out-port " + std::to_string(j) + " used " +
                 std::to_string(out_uses[n][j]) + " times");
  if (!bad.empty()) return bad;

  // Acyclicity.
  if (topological_order().size() != nodes_.size()) complain("port graph has a cycle");
  return bad;
}

std::vector<uint32_t> Diagram::topological_order() const {
  std::vector<uint32_t> indeg(nodes_.size(), 0);
  for (uint32_t n = 0; n < nodes_.size(); ++n)
    for (const Attach& a : in_[n])
      if (a.node != kBound) indeg[n]++;

  std::vector<std::vector<uint32_t>> succ(nodes_.size());
  for (uint32_t n = 0; n < nodes_.size(); ++n)
    for (const Attach& a : in_[n])
      if (a.node != kBound) succ[a.node].push_back(n);

  std::vector<uint32_t> order;
  order.reserve(nodes_.size());
  std::deque<uint32_t> ready;
  for (uint32_t n = 0; n < nodes_.size(); ++n)
    if (indeg[n] == 0) ready.push_back(n);
  while (!ready.empty()) {
    uint32_t n = ready.front();
    ready.pop_front();
    order.push_back(n);
    for (uint32_t s : succ[n])
      if (--indeg[s] == 0) ready.push_back(s);
  }
  return order;
}

Diagram::Consumers Diagram::consumers() const {
  Consumers c;
  c.of_input.assign(inputs_.size(), {kBound, 0});
  c.of_node.resize(nodes_.size());
  for (uint32_t n = 0; n < nodes_.size(); ++n) c.of_node[n] = {};
  // Sizes of out-port tables are discovered from references; validated
  // diagrams use every out-port exactly once.
  auto put = [&](const Attach& producer, Attach consumer) {
    if (producer.node == kBound) {
      c.of_input[producer.port] = consumer;
    } else {
      auto& v = c.of_node[producer.node];
      if (v.size() <= producer.port) v.resize(producer.port + 1, {kBound, 0xffffffffu});
      v[producer.port] = consumer;
    }
  };
  for (uint32_t n = 0; n < nodes_.size(); ++n)
    for (uint32_t i = 0; i < in_[n].size(); ++i) put(in_[n][i], {n, i});
  for (uint32_t k = 0; k < outsrc_.size(); ++k) put(outsrc_[k], {kBound, k});
  return c;
}

namespace {

void append_u64(std::string& s, uint64_t v) { s += std::to_string(v); }

void append_node_payload(std::string& s, const Node& nd) {
  append_u64(s, nd.cell);
  if (nd.literal) {
    s += '#';
    append_u64(s, *nd.literal);
  }
  if (nd.literal_var) {
    s += '$';
    append_u64(s, *nd.literal_var);
  }
}

}  // namespace

std::vector<uint32_t> Diagram::canonical_order(const Signature& sig) const {
  const Consumers cons = consumers();
  std::vector<uint32_t> number(nodes_.size(), kBound);
  std::vector<uint32_t> order;
  order.reserve(nodes_.size());
  std::deque<uint32_t> queue;

  auto discover = [&](uint32_t n) {
    if (number[n] != kBound) return;
    number[n] = static_cast<uint32_t>(order.size());
    order.push_back(n);
    queue.push_back(n);
  };
  auto discover_attach = [&](const Attach& a) {
    if (a.node != kBound) discover(a.node);
  };

  for (uint32_t k = 0; k < inputs_.size(); ++k) discover_attach(cons.of_input[k]);
  for (uint32_t k = 0; k < outsrc_.size(); ++k) discover_attach(outsrc_[k]);
  while (!queue.empty()) {
    uint32_t n = queue.front();
    queue.pop_front();
    for (const Attach& a : in_[n]) discover_attach(a);
    for (const Attach& a : cons.of_node[n]) discover_attach(a);
  }

  // Closed components: number each from the start node giving the least
  // encoding, components ordered by encoding.
  std::vector<std::pair<std::string, std::vector<uint32_t>>> closed;
  std::vector<bool> grouped(nodes_.size(), false);
  for (uint32_t n = 0; n < nodes_.size(); ++n) {
    if (number[n] != kBound || grouped[n]) continue;
    // Collect the component.
    std::vector<uint32_t> comp;
    std::deque<uint32_t> q{n};
    grouped[n] = true;
    while (!q.empty()) {
      uint32_t u = q.front();
      q.pop_front();
      comp.push_back(u);
      auto visit = [&](const Attach& a) {
        if (a.node != kBound && !grouped[a.node]) {
          grouped[a.node] = true;
          q.push_back(a.node);
        }
      };
      for (const Attach& a : in_[u]) visit(a);
      for (const Attach& a : cons.of_node[u]) visit(a);
    }
    std::string best;
    uint32_t best_start = comp.front();
    for (uint32_t start : comp) {
      std::string e = component_encoding(sig, start, cons);
      if (best.empty() || e < best) {
        best = e;
        best_start = start;
      }
    }
    // Deterministic local order: BFS from the chosen start.
    std::vector<uint32_t> local;
    std::vector<bool> seen(nodes_.size(), false);
    std::deque<uint32_t> bq{best_start};
    seen[best_start] = true;
    while (!bq.empty()) {
      uint32_t u = bq.front();
      bq.pop_front();
      local.push_back(u);
      auto visit = [&](const Attach& a) {
        if (a.node != kBound && !seen[a.node]) {
          seen[a.node] = true;
          bq.push_back(a.node);
        }
      };
      for (const Attach& a : in_[u]) visit(a);
      for (const Attach& a : cons.of_node[u]) visit(a);
    }
    closed.emplace_back(std::move(best), std::move(local));
  }
  std::sort(closed.begin(), closed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [enc, local] : closed)
    for (uint32_t u : local) {
      number[u] = static_cast<uint32_t>(order.size());
      order.push_back(u);
    }
  return order;
}

std::string Diagram::component_encoding(const Signature& sig, uint32_t start,
                                        const Consumers& cons) const {
  (void)sig;
  std::vector<uint32_t> local(nodes_.size(), kBound);
  std::vector<uint32_t> seq;
  std::deque<uint32_t> q;
  auto discover = [&](uint32_t n) {
    if (local[n] != kBound) return;
    local[n] = static_cast<uint32_t>(seq.size());
    seq.push_back(n);
    q.push_back(n);
  };
  discover(start);
  while (!q.empty()) {
    uint32_t n = q.front();
    q.pop_front();
    for (const Attach& a : in_[n])
      if (a.node != kBound) discover(a.node);
    for (const Attach& a : cons.of_node[n])
      if (a.node != kBound) discover(a.node);
  }
  std::string e;
  for (uint32_t n : seq) {
    append_node_payload(e, nodes_[n]);
    e += ';';
  }
  for (uint32_t n : seq) {
    for (const Attach& a : in_[n]) {
      append_u64(e, local[a.node]);
      e += '.';
      append_u64(e, a.port);
      e += ' ';
    }
    e += '|';
  }
  return e;
}

std::string Diagram::canonical_form(const Signature& sig) const {
  const std::vector<uint32_t> order = canonical_order(sig);
  std::vector<uint32_t> number(nodes_.size(), kBound);
  for (uint32_t i = 0; i < order.size(); ++i) number[order[i]] = i;

  std::string s = "i[";
  for (SortId x : inputs_) {
    append_u64(s, x);
    s += ' ';
  }
  s += "]o[";
  for (SortId x : outputs_) {
    append_u64(s, x);
    s += ' ';
  }
  s += ']';
  for (uint32_t i = 0; i < order.size(); ++i) {
    s += 'n';
    append_node_payload(s, nodes_[order[i]]);
    s += ';';
  }
  auto enc = [&](const Attach& a) {
    if (a.node == kBound) {
      s += 'b';
      append_u64(s, a.port);
    } else {
      append_u64(s, number[a.node]);
      s += '.';
      append_u64(s, a.port);
    }
    s += ' ';
  };
  s += 'w';
  for (uint32_t i = 0; i < order.size(); ++i) {
    for (const Attach& a : in_[order[i]]) enc(a);
    s += '|';
  }
  s += 'o';
  for (const Attach& a : outsrc_) enc(a);
  return s;
}

}  // namespace polyg
