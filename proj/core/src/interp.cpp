#include "polyg/interp.hpp"

#include <algorithm>

namespace polyg {

Interpretation Interpretation::build(const Program& program,
                                     std::map<CellId, uint64_t> constructor_weights,
                                     std::map<CellId, CellInterp> functions) {
  const Signature& sig = program.sig;
  Interpretation it;
  it.cells_.resize(sig.cell_count());
  it.weights_.resize(sig.cell_count());
  it.K_ = program_structure_bound(program);

  uint64_t a = 1;
  for (CellId c = 0; c < sig.cell_count(); ++c) {
    const TwoCell& tc = sig.cell(c);
    CellInterp& ci = it.cells_[c];
    switch (tc.kind) {
      case CellKind::Constructor: {
        uint64_t w = 1;
        if (auto f = constructor_weights.find(c); f != constructor_weights.end()) w = f->second;
        if (w == 0) throw Error("constructor weight must be positive: " + tc.name);
        it.weights_[c] = w;
        a = std::max(a, w);
        NatExpr cur(w);
        for (uint32_t i = 0; i < tc.source.size(); ++i) cur = cur + NatExpr::var(i);
        ci.current = {cur};
        ci.heat = NatExpr(uint64_t{0});
        break;
      }
      case CellKind::Tau:
        ci.current = {NatExpr::var(1), NatExpr::var(0)};
        ci.heat = NatExpr(uint64_t{0});
        break;
      case CellKind::Delta:
        ci.current = {NatExpr::var(0), NatExpr::var(0)};
        ci.heat = NatExpr(uint64_t{0});
        break;
      case CellKind::Eps:
        ci.current = {};
        ci.heat = NatExpr(uint64_t{0});
        break;
      case CellKind::Function: {
        auto f = functions.find(c);
        if (f == functions.end())
          throw Error("interpretation missing for function " + tc.name);
        if (f->second.current.size() != tc.target.size())
          throw Error("interpretation for " + tc.name + " has wrong output arity");
        for (const NatExpr& e : f->second.current)
          if (e.arity() > tc.source.size())
            throw Error("current of " + tc.name + " uses more variables than inputs");
        if (f->second.heat.arity() > tc.source.size())
          throw Error("heat of " + tc.name + " uses more variables than inputs");
        ci = f->second;
        break;
      }
    }
  }
  it.a_ = a;
  return it;
}

uint64_t Interpretation::constructor_weight(CellId c) const {
  const auto& w = weights_.at(c);
  if (!w) throw Error("cell is not a constructor");
  return *w;
}

namespace {

bool next_point(std::vector<uint64_t>& pt, uint64_t lo, uint64_t hi) {
  for (size_t i = 0; i < pt.size(); ++i) {
    if (pt[i] < hi) {
      pt[i]++;
      for (size_t j = 0; j < i; ++j) pt[j] = lo;
      return true;
    }
  }
  return false;
}

std::string point_str(std::span<const uint64_t> pt) {
  std::string s = "(";
  for (size_t i = 0; i < pt.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(pt[i]);
  }
  return s + ")";
}

}  // namespace

RuleCompatReport check_compatibility(const Signature& sig, const Rule& rule,
                                     const Interpretation& it, const GridOptions& grid) {
  RuleCompatReport rep;
  const size_t m = rule.lhs.inputs().size();
  std::vector<uint64_t> pt(m, grid.lo);
  bool heat_strict_everywhere = true;
  bool first = true;
  while (first || next_point(pt, grid.lo, grid.bound)) {
    first = false;
    std::span<const uint64_t> args(pt);
    std::vector<uint64_t> lc = eval_current(sig, rule.lhs, it, args);
    std::vector<uint64_t> rc = eval_current(sig, rule.rhs, it, args);
    for (size_t j = 0; j < lc.size(); ++j) {
      if (lc[j] < rc[j]) {
        rep.status = Compat::Violation;
        rep.witness = pt;
        rep.detail = "current drops at " + point_str(pt) + " output " + std::to_string(j) +
                     ": " + std::to_string(lc[j]) + " < " + std::to_string(rc[j]);
        return rep;
      }
    }
    uint64_t lh = eval_heat(sig, rule.lhs, it, args);
    uint64_t rh = eval_heat(sig, rule.rhs, it, args);
    if (lh < rh) {
      rep.status = Compat::Violation;
      rep.witness = pt;
      rep.detail = "heat rises at " + point_str(pt) + ": " + std::to_string(lh) + " < " +
                   std::to_string(rh);
      return rep;
    }
    if (lh == rh && heat_strict_everywhere) {
      heat_strict_everywhere = false;
      rep.detail = "heat equal at " + point_str(pt);
    }
    if (m == 0) break;
  }
  rep.status = heat_strict_everywhere ? Compat::Compatible : Compat::WeaklyCompatible;
  if (rep.status == Compat::Compatible) rep.detail.clear();
  return rep;
}

std::vector<std::string> shape_violations(const Program& program, const Interpretation& it,
                                          const GridOptions& grid) {
  const Signature& sig = program.sig;
  std::vector<std::string> bad;
  // Constructor shape and zero heats are imposed by Interpretation::build;
  // re-assert the weight positivity and check function superadditivity.
  for (CellId c = 0; c < sig.cell_count(); ++c) {
    const TwoCell& tc = sig.cell(c);
    if (tc.kind == CellKind::Constructor && it.constructor_weight(c) == 0)
      bad.push_back("constructor " + tc.name + " has zero weight");
    if (tc.kind != CellKind::Function) continue;
    const size_t m = tc.source.size();
    std::vector<uint64_t> pt(m, grid.lo);
    bool first = true;
    while (first || next_point(pt, grid.lo, grid.bound)) {
      first = false;
      uint64_t in_sum = 0, out_sum = 0;
      for (uint64_t v : pt) in_sum += v;
      for (const NatExpr& e : it.current(c)) out_sum += e.eval(pt);
      if (out_sum < in_sum) {
        bad.push_back("function " + tc.name + " is not superadditive at " + point_str(pt) +
                      ": " + std::to_string(out_sum) + " < " + std::to_string(in_sum));
        break;
      }
      if (m == 0) break;
    }
  }
  return bad;
}

SimpleReport check_simple(const Program& program, const Interpretation& it,
                          const GridOptions& grid) {
  SimpleReport rep;
  rep.a = it.max_constructor_weight();
  rep.K = it.structure_bound();
  rep.grid = grid.bound;
  rep.grid_lo = grid.lo;
  rep.violations = shape_violations(program, it, grid);
  rep.simple = rep.violations.empty();

  rep.all_computation_compatible = true;
  for (uint32_t r = 0; r < program.rules.size(); ++r) {
    if (program.rules[r].kind != RuleKind::Computation) continue;
    RuleCompatReport rc = check_compatibility(program.sig, program.rules[r], it, grid);
    if (rc.status != Compat::Compatible) rep.all_computation_compatible = false;
    rep.computation_rules.push_back({r, std::move(rc)});
  }
  return rep;
}

namespace {

std::vector<NatExpr> scaled_vars(size_t m, uint64_t a) {
  std::vector<NatExpr> args;
  args.reserve(m);
  for (size_t i = 0; i < m; ++i) args.push_back(NatExpr(a) * NatExpr::var(uint32_t(i)));
  return args;
}

}  // namespace

NatExpr derive_P(const Program& program, const Interpretation& it, CellId fn) {
  const TwoCell& tc = program.sig.cell(fn);
  auto args = scaled_vars(tc.source.size(), it.max_constructor_weight());
  NatExpr sum(uint64_t{0});
  for (const NatExpr& e : it.current(fn)) sum = sum + e.substitute(args);
  return sum.normalized();
}

NatExpr derive_S(const Program& program, const Interpretation& it, CellId fn) {
  NatExpr p = derive_P(program, it, fn);
  return (NatExpr(uint64_t{it.structure_bound()}) * p * p).normalized();
}

NatExpr derive_Q(const Program& program, const Interpretation& it, CellId fn) {
  const TwoCell& tc = program.sig.cell(fn);
  auto args = scaled_vars(tc.source.size(), it.max_constructor_weight());
  return it.heat(fn).substitute(args).normalized();
}

NatExpr derive_R(const Program& program, const Interpretation& it, CellId fn) {
  NatExpr q = derive_Q(program, it, fn);
  NatExpr s = derive_S(program, it, fn);
  return (q * (NatExpr(uint64_t{1}) + s)).normalized();
}

}  // namespace polyg
