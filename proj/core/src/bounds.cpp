#include "polyg/bounds.hpp"

namespace polyg {

namespace {

uint64_t value_current(const Program& p, const Interpretation& it, const Value& v) {
  Diagram d = value_diagram(p.sig, v);
  std::span<const uint64_t> none;
  return eval_current<uint64_t>(p.sig, d, it, none).at(0);
}

}  // namespace

BoundReport verify_bounds(const Program& p, const Interpretation& it, CellId fn,
                          std::span<const Value> args, const EngineOptions& eng,
                          const GridOptions& grid) {
  std::vector<std::string> shape = shape_violations(p, it, grid);
  if (!shape.empty()) {
    std::string why = "interpretation is not simple:";
    for (const std::string& v : shape) why += " " + v;
    throw NotSimple(why);
  }

  BoundReport rep;
  rep.P = derive_P(p, it, fn);
  rep.S = derive_S(p, it, fn);
  rep.Q = derive_Q(p, it, fn);
  rep.R = derive_R(p, it, fn);
  for (const Value& v : args) rep.arg_sizes.push_back(value_cells(v));

  const uint64_t a = it.max_constructor_weight();
  auto size_check = [&](const std::string& name, const Value& v) {
    uint64_t cells = value_cells(v);
    uint64_t cur = value_current(p, it, v);
    BoundCheck c;
    c.name = name;
    c.measured = cur;
    c.bound = a * cells;
    c.pass = cells <= cur && cur <= a * cells;
    c.note = "cells " + std::to_string(cells) + " <= current " + std::to_string(cur) +
             " <= a*cells " + std::to_string(a * cells);
    rep.checks.push_back(std::move(c));
  };
  for (size_t i = 0; i < args.size(); ++i)
    size_check("value-size(arg " + std::to_string(i + 1) + ")", args[i]);

  EngineOptions opt = eng;
  opt.instrument = &it;
  EvalResult ev = evaluate(p, fn, args, EvalMode::Confluent, opt);
  rep.trace = std::move(ev.trace);
  rep.fuel_exhausted = ev.fuel_exhausted;
  rep.result = std::move(ev.values);
  for (size_t i = 0; i < rep.result.size(); ++i)
    size_check("value-size(result " + std::to_string(i + 1) + ")", rep.result[i]);

  auto bound_check = [&](const std::string& name, uint64_t measured, const NatExpr& e,
                         uint64_t scale_extra = 0) {
    BoundCheck c;
    c.name = name;
    c.measured = measured;
    c.bound = e.eval(rep.arg_sizes) + scale_extra;
    c.pass = measured <= c.bound;
    rep.checks.push_back(std::move(c));
  };
  bound_check("peak-current", rep.trace.peak_current_sum, rep.P);
  bound_check("computation-steps", rep.trace.k, rep.Q);
  bound_check("structure-steps", rep.trace.l, (rep.Q * rep.S).normalized());
  bound_check("total-steps", rep.trace.size(), rep.R);

  rep.all_pass = !rep.fuel_exhausted;
  for (const BoundCheck& c : rep.checks) rep.all_pass &= c.pass;
  return rep;
}

}  // namespace polyg
