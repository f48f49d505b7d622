#include "polyg/term.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace polyg {

namespace {

CellId find_literal_cell(const Signature& sig, SortId target, int line, int col) {
  for (CellId c = 0; c < sig.cell_count(); ++c) {
    const TwoCell& tc = sig.cell(c);
    if (tc.kind == CellKind::Constructor && tc.literal_family && tc.target[0] == target)
      return c;
  }
  throw ElabError("sort " + sig.sort_name(target) + " has no literal constructor family", line,
                  col);
}

// --- Pattern side -----------------------------------------------------------

struct PatternBuild {
  OnePath inputs;
  std::vector<std::string> input_names;
  std::vector<std::string> slot_names;
  std::vector<Node> nodes;
  std::vector<std::vector<Attach>> node_in;

  uint32_t slot(const std::string& name) {
    for (uint32_t i = 0; i < slot_names.size(); ++i)
      if (slot_names[i] == name) return i;
    slot_names.push_back(name);
    return static_cast<uint32_t>(slot_names.size() - 1);
  }
};

Attach build_pattern_tree(const Signature& sig, PatternBuild& pb, const Term& t, SortId want) {
  switch (t.kind) {
    case Term::Kind::Var: {
      for (const std::string& n : pb.input_names)
        if (n == t.name)
          throw ElabError("pattern variable " + t.name + " used twice (patterns are linear)",
                          t.line, t.col);
      pb.inputs.push_back(want);
      pb.input_names.push_back(t.name);
      return {kBound, static_cast<uint32_t>(pb.inputs.size() - 1)};
    }
    case Term::Kind::LitNum: {
      CellId c = find_literal_cell(sig, want, t.line, t.col);
      pb.nodes.push_back({c, t.number, std::nullopt});
      pb.node_in.emplace_back();
      return {static_cast<uint32_t>(pb.nodes.size() - 1), 0};
    }
    case Term::Kind::LitVar: {
      CellId c = find_literal_cell(sig, want, t.line, t.col);
      pb.nodes.push_back({c, std::nullopt, pb.slot(t.name)});
      pb.node_in.emplace_back();
      return {static_cast<uint32_t>(pb.nodes.size() - 1), 0};
    }
    case Term::Kind::App: {
      auto c = sig.find_cell(t.name);
      if (!c) throw ElabError("unknown cell " + t.name, t.line, t.col);
      const TwoCell& tc = sig.cell(*c);
      if (tc.kind != CellKind::Constructor)
        throw ElabError("pattern arguments must be constructors, got " + t.name, t.line, t.col);
      if (tc.target[0] != want)
        throw ElabError("sort mismatch in pattern: " + t.name + " builds " +
                            sig.sort_name(tc.target[0]) + " where " + sig.sort_name(want) +
                            " is needed",
                        t.line, t.col);
      if (t.args.size() != tc.source.size())
        throw ElabError(t.name + " takes " + std::to_string(tc.source.size()) + " arguments",
                        t.line, t.col);
      std::vector<Attach> ins;
      for (size_t i = 0; i < t.args.size(); ++i)
        ins.push_back(build_pattern_tree(sig, pb, t.args[i], tc.source[i]));
      pb.nodes.push_back({*c, std::nullopt, std::nullopt});
      pb.node_in.push_back(std::move(ins));
      return {static_cast<uint32_t>(pb.nodes.size() - 1), 0};
    }
    case Term::Kind::Splice:
      throw ElabError("spliced circuits cannot appear in patterns", t.line, t.col);
  }
  throw ElabError("bad pattern term", t.line, t.col);
}

struct PatternResult {
  Diagram lhs;
  OnePath inputs;
  std::vector<std::string> input_names;
  std::vector<std::string> slot_names;
};

PatternResult elaborate_pattern(const Signature& sig, const Term& t) {
  if (t.kind != Term::Kind::App)
    throw ElabError("rule pattern must apply a function cell", t.line, t.col);
  auto c = sig.find_cell(t.name);
  if (!c) throw ElabError("unknown cell " + t.name, t.line, t.col);
  const TwoCell& tc = sig.cell(*c);
  if (tc.kind != CellKind::Function)
    throw ElabError("rule pattern must be anchored at a function cell, got " + t.name, t.line,
                    t.col);
  if (t.args.size() != tc.source.size())
    throw ElabError(t.name + " takes " + std::to_string(tc.source.size()) + " arguments", t.line,
                    t.col);

  PatternBuild pb;
  std::vector<Attach> anchor_in;
  for (size_t i = 0; i < t.args.size(); ++i)
    anchor_in.push_back(build_pattern_tree(sig, pb, t.args[i], tc.source[i]));
  pb.nodes.push_back({*c, std::nullopt, std::nullopt});
  pb.node_in.push_back(std::move(anchor_in));
  uint32_t anchor = static_cast<uint32_t>(pb.nodes.size() - 1);

  std::vector<Attach> out_src;
  for (uint32_t j = 0; j < tc.target.size(); ++j) out_src.push_back({anchor, j});
  PatternResult pr;
  pr.lhs = Diagram::raw(pb.inputs, tc.target, std::move(pb.nodes), std::move(pb.node_in),
                        std::move(out_src));
  pr.inputs = pb.inputs;
  pr.input_names = std::move(pb.input_names);
  pr.slot_names = std::move(pb.slot_names);
  return pr;
}

// --- Right side: slice-by-slice circuit builder ------------------------------

class CircuitBuilder {
 public:
  CircuitBuilder(const Signature& sig, OnePath inputs, std::vector<std::string> names)
      : sig_(sig), cur_(Diagram::identity(inputs)) {
    for (size_t i = 0; i < inputs.size(); ++i)
      wires_.push_back({next_id_++, names[i], inputs[i]});
  }

  /// Resolves a variable and consumes its name, so a second use reports the
  /// nonlinearity instead of silently sharing.
  uint64_t claim(const std::string& name, int line, int col) {
    for (Wire& w : wires_)
      if (w.name == name) {
        consumed_.insert(name);
        w.name.clear();
        return w.id;
      }
    if (consumed_.count(name))
      throw ElabError("variable " + name + " used twice (insert an explicit dup)", line, col);
    throw ElabError("unknown variable " + name, line, col);
  }

  SortId wire_sort(uint64_t id) const { return wires_[pos_of(id)].sort; }
  size_t position(uint64_t id) const { return pos_of(id); }
  size_t width() const { return wires_.size(); }

  /// Applies a cell to the given argument wires, first routing them together
  /// with explicit crossings. `insert_at` places a 0-input cell without any
  /// routing. Returns the fresh output wire ids.
  std::vector<uint64_t> apply_cell(CellId c, const std::vector<uint64_t>& args,
                                   std::optional<uint64_t> literal,
                                   std::optional<uint32_t> literal_var, int line, int col,
                                   std::optional<size_t> insert_at = {}) {
    const TwoCell& tc = sig_.cell(c);
    if (args.size() != tc.source.size())
      throw ElabError(tc.name + " takes " + std::to_string(tc.source.size()) + " arguments",
                      line, col);
    check_sorts(tc.source, args, tc.name, line, col);
    size_t at = args.empty() ? insert_at.value_or(wires_.size()) : gather(args);
    Diagram slice = Diagram::identity(prefix_sorts(at))
                        .beside(Diagram::cell(sig_, c, literal, literal_var))
                        .beside(Diagram::identity(suffix_sorts(at + args.size())));
    cur_ = cur_.then(slice);
    return splice_wires(at, args.size(), tc.target);
  }

  std::vector<uint64_t> apply_diagram(const Diagram& d, const std::vector<uint64_t>& args,
                                      int line, int col, std::optional<size_t> insert_at = {}) {
    check_sorts(d.inputs(), args, "spliced circuit", line, col);
    size_t at = args.empty() ? insert_at.value_or(wires_.size()) : gather(args);
    Diagram slice = Diagram::identity(prefix_sorts(at))
                        .beside(d)
                        .beside(Diagram::identity(suffix_sorts(at + args.size())));
    cur_ = cur_.then(slice);
    return splice_wires(at, args.size(), d.outputs());
  }

  void name_wire(uint64_t id, const std::string& name, int line, int col) {
    for (const Wire& w : wires_)
      if (w.name == name)
        throw ElabError("binder " + name + " shadows a live variable", line, col);
    wires_[pos_of(id)].name = name;
  }

  /// Routes the given wires into boundary order and finishes; anything left
  /// over is an unused variable.
  Diagram finish(const std::vector<uint64_t>& outputs, int line, int col) {
    if (outputs.size() != wires_.size()) {
      std::string leftover;
      for (const Wire& w : wires_) {
        bool used = std::find(outputs.begin(), outputs.end(), w.id) != outputs.end();
        if (!used) leftover += (leftover.empty() ? "" : ", ") + display_name(w);
      }
      throw ElabError("unused wires (erase them explicitly): " + leftover, line, col);
    }
    gather(outputs);
    return cur_;
  }

 private:
  struct Wire {
    uint64_t id;
    std::string name;
    SortId sort;
  };

  const Signature& sig_;
  Diagram cur_;
  std::vector<Wire> wires_;
  std::set<std::string> consumed_;
  uint64_t next_id_ = 1;

  static std::string display_name(const Wire& w) {
    return w.name.empty() ? "<anonymous>" : w.name;
  }

  size_t pos_of(uint64_t id) const {
    for (size_t i = 0; i < wires_.size(); ++i)
      if (wires_[i].id == id) return i;
    throw Error("internal: wire vanished");
  }

  OnePath prefix_sorts(size_t end) const {
    OnePath p;
    for (size_t i = 0; i < end; ++i) p.push_back(wires_[i].sort);
    return p;
  }
  OnePath suffix_sorts(size_t begin) const {
    OnePath p;
    for (size_t i = begin; i < wires_.size(); ++i) p.push_back(wires_[i].sort);
    return p;
  }

  void check_sorts(const OnePath& want, const std::vector<uint64_t>& args,
                   const std::string& what, int line, int col) {
    for (size_t i = 0; i < args.size(); ++i) {
      const Wire& w = wires_[pos_of(args[i])];
      if (w.sort != want[i])
        throw ElabError("sort mismatch: argument " + std::to_string(i + 1) + " of " + what +
                            " is " + sig_.sort_name(want[i]) + " but " + display_name(w) +
                            " carries " + sig_.sort_name(w.sort),
                        line, col);
    }
  }

  void swap_at(size_t p) {
    Diagram slice =
        Diagram::identity(prefix_sorts(p))
            .beside(Diagram::cell(sig_, sig_.tau(wires_[p].sort, wires_[p + 1].sort)))
            .beside(Diagram::identity(suffix_sorts(p + 2)));
    cur_ = cur_.then(slice);
    std::swap(wires_[p], wires_[p + 1]);
  }

  /// Insertion routing: each argument bubbles next to its predecessor.
  /// Returns the final position of the first argument.
  size_t gather(const std::vector<uint64_t>& args) {
    if (args.empty()) return wires_.size();
    for (size_t i = 1; i < args.size(); ++i) {
      for (;;) {
        size_t prev = pos_of(args[i - 1]);
        size_t here = pos_of(args[i]);
        if (here == prev + 1) break;
        if (here > prev + 1) swap_at(here - 1);
        else swap_at(here);
      }
    }
    return pos_of(args[0]);
  }

  std::vector<uint64_t> splice_wires(size_t at, size_t removed, const OnePath& added) {
    wires_.erase(wires_.begin() + at, wires_.begin() + at + removed);
    std::vector<uint64_t> ids;
    for (size_t j = 0; j < added.size(); ++j) {
      ids.push_back(next_id_);
      wires_.insert(wires_.begin() + at + j, {next_id_++, "", added[j]});
    }
    return ids;
  }
};

struct RhsContext {
  const Signature& sig;
  CircuitBuilder& cb;
  const std::vector<std::string>& slot_names;
};

uint32_t slot_index(const RhsContext& ctx, const std::string& name, int line, int col) {
  for (uint32_t i = 0; i < ctx.slot_names.size(); ++i)
    if (ctx.slot_names[i] == name) return i;
  throw ElabError("literal variable #" + name + " is not bound by the pattern", line, col);
}

/// A term consuming no live wires can be built at any position.
bool is_closed_term(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var: return false;
    case Term::Kind::LitNum:
    case Term::Kind::LitVar: return true;
    case Term::Kind::App:
    case Term::Kind::Splice:
      for (const Term& a : t.args)
        if (!is_closed_term(a)) return false;
      return true;
  }
  return false;
}

uint64_t term_wire(const RhsContext& ctx, const Term& t, std::optional<SortId> want,
                   std::optional<size_t> insert_at);

/// Elaborates an argument list: wire-consuming arguments first, then closed
/// ones inserted directly next to their neighbours so that building a value
/// in place never crosses wires.
std::vector<uint64_t> elaborate_args(const RhsContext& ctx, const std::vector<Term>& args,
                                     const OnePath& sorts, std::optional<size_t> closed_hint) {
  std::vector<std::optional<uint64_t>> ids(args.size());
  for (size_t i = 0; i < args.size(); ++i)
    if (!is_closed_term(args[i]))
      ids[i] = term_wire(ctx, args[i], sorts[i], std::nullopt);
  for (size_t i = 0; i < args.size(); ++i) {
    if (ids[i]) continue;
    std::optional<size_t> pos;
    if (i > 0 && ids[i - 1]) {
      pos = ctx.cb.position(**(ids.begin() + (i - 1))) + 1;
    } else {
      for (size_t j = i + 1; j < args.size() && !pos; ++j)
        if (ids[j]) pos = ctx.cb.position(*ids[j]);
      if (!pos) pos = closed_hint;
    }
    ids[i] = term_wire(ctx, args[i], sorts[i], pos);
  }
  std::vector<uint64_t> out;
  for (auto& id : ids) out.push_back(*id);
  return out;
}

uint64_t term_wire(const RhsContext& ctx, const Term& t, std::optional<SortId> want,
                   std::optional<size_t> insert_at) {
  switch (t.kind) {
    case Term::Kind::Var:
      return ctx.cb.claim(t.name, t.line, t.col);
    case Term::Kind::LitNum: {
      if (!want) throw ElabError("cannot infer the sort of a bare literal here", t.line, t.col);
      CellId c = find_literal_cell(ctx.sig, *want, t.line, t.col);
      return ctx.cb.apply_cell(c, {}, t.number, std::nullopt, t.line, t.col, insert_at)[0];
    }
    case Term::Kind::LitVar: {
      if (!want) throw ElabError("cannot infer the sort of a bare literal here", t.line, t.col);
      CellId c = find_literal_cell(ctx.sig, *want, t.line, t.col);
      return ctx.cb.apply_cell(c, {}, std::nullopt, slot_index(ctx, t.name, t.line, t.col),
                               t.line, t.col, insert_at)[0];
    }
    case Term::Kind::App: {
      auto c = ctx.sig.find_cell(t.name);
      if (!c) throw ElabError("unknown cell " + t.name, t.line, t.col);
      const TwoCell& tc = ctx.sig.cell(*c);
      if (tc.target.size() != 1)
        throw ElabError(t.name + " has " + std::to_string(tc.target.size()) +
                            " outputs; bind it with a let",
                        t.line, t.col);
      if (want && tc.target[0] != *want)
        throw ElabError("sort mismatch: " + t.name + " builds " +
                            ctx.sig.sort_name(tc.target[0]) + " where " +
                            ctx.sig.sort_name(*want) + " is needed",
                        t.line, t.col);
      if (t.args.size() != tc.source.size())
        throw ElabError(t.name + " takes " + std::to_string(tc.source.size()) + " arguments",
                        t.line, t.col);
      auto args = elaborate_args(ctx, t.args, tc.source, insert_at);
      return ctx.cb.apply_cell(*c, args, std::nullopt, std::nullopt, t.line, t.col, insert_at)[0];
    }
    case Term::Kind::Splice: {
      if (t.splice.outputs().size() != 1)
        throw ElabError("spliced circuit must have one output here", t.line, t.col);
      if (t.args.size() != t.splice.inputs().size())
        throw ElabError("spliced circuit arity mismatch", t.line, t.col);
      auto args = elaborate_args(ctx, t.args, t.splice.inputs(), insert_at);
      return ctx.cb.apply_diagram(t.splice, args, t.line, t.col, insert_at)[0];
    }
  }
  throw ElabError("bad term", t.line, t.col);
}

Diagram elaborate_rhs(const Signature& sig, const OnePath& inputs,
                      const std::vector<std::string>& input_names,
                      const std::vector<std::string>& slot_names, const OnePath& lhs_outputs,
                      const RhsSpec& spec) {
  CircuitBuilder cb(sig, inputs, input_names);
  RhsContext ctx{sig, cb, slot_names};

  for (const RhsSpec::Let& let : spec.lets) {
    const Term& call = let.call;
    if (call.kind != Term::Kind::App)
      throw ElabError("let needs a call on the right", call.line, call.col);

    if (call.name == "dup" || call.name == "erase") {
      if (call.args.size() != 1 || call.args[0].kind != Term::Kind::Var)
        throw ElabError(call.name + " takes one variable", call.line, call.col);
      uint64_t id = cb.claim(call.args[0].name, call.line, call.col);
      SortId s = cb.wire_sort(id);
      if (call.name == "dup") {
        if (let.binders.size() != 2)
          throw ElabError("dup binds two names", call.line, call.col);
        auto ids =
            cb.apply_cell(sig.delta(s), {id}, std::nullopt, std::nullopt, call.line, call.col);
        cb.name_wire(ids[0], let.binders[0], call.line, call.col);
        cb.name_wire(ids[1], let.binders[1], call.line, call.col);
      } else {
        if (!let.binders.empty())
          throw ElabError("erase binds nothing", call.line, call.col);
        cb.apply_cell(sig.eps(s), {id}, std::nullopt, std::nullopt, call.line, call.col);
      }
      continue;
    }

    auto c = sig.find_cell(call.name);
    if (!c) throw ElabError("unknown cell " + call.name, call.line, call.col);
    const TwoCell& tc = sig.cell(*c);
    if (let.binders.size() != tc.target.size())
      throw ElabError(call.name + " produces " + std::to_string(tc.target.size()) +
                          " outputs, let binds " + std::to_string(let.binders.size()),
                      call.line, call.col);
    if (call.args.size() != tc.source.size())
      throw ElabError(call.name + " takes " + std::to_string(tc.source.size()) + " arguments",
                      call.line, call.col);
    auto args = elaborate_args(ctx, call.args, tc.source, std::nullopt);
    auto ids = cb.apply_cell(*c, args, std::nullopt, std::nullopt, call.line, call.col);
    for (size_t j = 0; j < ids.size(); ++j)
      cb.name_wire(ids[j], let.binders[j], call.line, call.col);
  }

  if (spec.results.size() != lhs_outputs.size())
    throw ElabError("rule produces " + std::to_string(spec.results.size()) + " results, " +
                        std::to_string(lhs_outputs.size()) + " expected",
                    0, 0);
  std::vector<uint64_t> outs;
  for (size_t k = 0; k < spec.results.size(); ++k)
    outs.push_back(term_wire(ctx, spec.results[k], lhs_outputs[k], std::nullopt));
  int ln = spec.results.empty() ? 0 : spec.results.back().line;
  return cb.finish(outs, ln, 0);
}

}  // namespace

Rule build_rule(const Signature& sig, std::string name, const Term& pattern, const RhsSpec& rhs,
                const std::vector<GuardSpec>& guards) {
  PatternResult pr = elaborate_pattern(sig, pattern);
  Rule r;
  r.name = std::move(name);
  r.kind = RuleKind::Computation;
  r.lhs = std::move(pr.lhs);
  r.schema_slots = static_cast<uint32_t>(pr.slot_names.size());
  r.slot_names = pr.slot_names;
  r.rhs = elaborate_rhs(sig, pr.inputs, pr.input_names, pr.slot_names, r.lhs.outputs(), rhs);

  for (const GuardSpec& g : guards) {
    auto idx = [&](const std::string& n) -> uint32_t {
      for (uint32_t i = 0; i < pr.slot_names.size(); ++i)
        if (pr.slot_names[i] == n) return i;
      throw ElabError("guard variable " + n + " is not bound by the pattern");
    };
    Guard gg;
    gg.cmp = g.cmp;
    gg.lhs = idx(g.swapped ? g.rhs : g.lhs);
    gg.rhs = idx(g.swapped ? g.lhs : g.rhs);
    r.guards.push_back(gg);
  }

  auto bad = finalize_rule(sig, r);
  if (!bad.empty()) throw ElabError("rule " + r.name + ": " + bad.front());
  return r;
}

}  // namespace polyg
