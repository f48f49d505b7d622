#include "polyg/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "polyg/bounds.hpp"
#include "polyg/builtins.hpp"
#include "polyg/exporter.hpp"
#include "polyg/parser.hpp"
#include "polyg/printer.hpp"
#include "polyg/turing.hpp"

namespace polyg {

namespace {

struct CliError {
  int code;
};

ProgramBundle load_program(const std::string& path, std::ostream& err) {
  ParseResult r = parse_program_file(path);
  if (!r.ok()) {
    for (const Diagnostic& d : r.diagnostics) err << path << ":" << d.str() << "\n";
    throw CliError{kExitDiagnostics};
  }
  return {std::move(*r.program), std::move(r.interp)};
}

CellId find_function(const Program& p, const std::string& name, std::ostream& err) {
  auto c = p.sig.find_cell(name);
  if (!c || p.sig.cell(*c).kind != CellKind::Function) {
    err << "no function named " << name << " in " << p.name << "\n";
    throw CliError{kExitDiagnostics};
  }
  return *c;
}

std::vector<Value> parse_args(const Program& p, CellId fn, const std::vector<std::string>& texts,
                              std::ostream& err) {
  const TwoCell& tc = p.sig.cell(fn);
  if (texts.size() != tc.source.size()) {
    err << tc.name << " takes " << tc.source.size() << " arguments, got " << texts.size()
        << "\n";
    throw CliError{kExitDiagnostics};
  }
  std::vector<Value> vs;
  for (size_t i = 0; i < texts.size(); ++i) {
    try {
      vs.push_back(parse_value(p.sig, texts[i], tc.source[i]));
    } catch (const Error& e) {
      err << e.what() << "\n";
      throw CliError{kExitDiagnostics};
    }
  }
  return vs;
}

Strategy strategy_of(const std::string& name, std::ostream& err) {
  if (name == "innermost") return Strategy::LeftmostInnermost;
  if (name == "outermost") return Strategy::LeftmostOutermost;
  if (name == "random") return Strategy::Random;
  err << "unknown strategy " << name << " (innermost, outermost, random)\n";
  throw CliError{kExitDiagnostics};
}

int cmd_eval(const std::string& file, const std::string& fn_name,
             const std::vector<std::string>& arg_texts, const std::string& mode,
             const std::string& strategy, uint64_t seed, uint64_t fuel,
             const std::string& trace_path, bool show_all, std::ostream& out,
             std::ostream& err) {
  ProgramBundle b = load_program(file, err);
  CellId fn = find_function(b.program, fn_name, err);
  std::vector<Value> args = parse_args(b.program, fn, arg_texts, err);

  EngineOptions eng;
  eng.strategy = strategy_of(strategy, err);
  eng.seed = seed;
  eng.fuel = fuel;
  if (!trace_path.empty() && b.interp) eng.instrument = &*b.interp;

  EvalMode m = mode == "exhaustive" ? EvalMode::Exhaustive : EvalMode::Confluent;
  EvalResult r;
  try {
    r = evaluate(b.program, fn, args, m, eng);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitDiagnostics;
  }
  if (r.fuel_exhausted || r.budget_exhausted) {
    err << (r.fuel_exhausted ? "fuel exhausted after " : "state budget exhausted after ")
        << (r.fuel_exhausted ? r.trace.size() : 0) << " steps\n";
    return kExitExhausted;
  }
  if (show_all && m == EvalMode::Exhaustive) {
    for (const auto& nf : r.normal_forms) out << print_values(b.program.sig, nf) << "\n";
  }
  out << print_values(b.program.sig, r.values) << "\n";
  if (!trace_path.empty()) {
    std::ofstream tf(trace_path);
    tf << trace_json(b.program, r.trace).dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_check(const std::string& file, uint64_t grid, uint64_t grid_lo, bool as_json,
              std::ostream& out, std::ostream& err) {
  ProgramBundle b = load_program(file, err);
  if (!b.interp) {
    err << b.program.name << " declares no interpretation; nothing to check\n";
    return kExitDiagnostics;
  }
  SimpleReport rep = check_simple(b.program, *b.interp, {grid, grid_lo});
  if (as_json) {
    out << check_json(b.program, rep).dump(2) << "\n";
  } else {
    out << "program " << b.program.name << ": "
        << (rep.simple ? "simple interpretation" : "NOT simple") << " (a=" << rep.a
        << ", K=" << rep.K << "), grid {" << rep.grid_lo << ".." << rep.grid << "}^m\n";
    for (const std::string& v : rep.violations) out << "  violation: " << v << "\n";
    for (const auto& pr : rep.computation_rules) {
      out << "  rule " << b.program.rules[pr.rule].name << ": ";
      switch (pr.report.status) {
        case Compat::Compatible: out << "compatible"; break;
        case Compat::WeaklyCompatible: out << "weakly compatible (" << pr.report.detail << ")";
          break;
        case Compat::Violation: out << "VIOLATION " << pr.report.detail; break;
      }
      out << "\n";
    }
    out << (rep.certified()
                ? "verdict: simple and compatible with every computation rule (on the grid)\n"
            : rep.simple
                ? "verdict: simple, but not compatible with every computation rule\n"
                : "verdict: not simple\n");
  }
  return rep.simple ? kExitOk : kExitDiagnostics;
}

int cmd_bounds(const std::string& file, const std::string& fn_name,
               const std::vector<std::string>& arg_texts, uint64_t grid, bool as_json,
               std::ostream& out, std::ostream& err) {
  ProgramBundle b = load_program(file, err);
  CellId fn = find_function(b.program, fn_name, err);
  if (!b.interp) {
    err << b.program.name << " declares no interpretation; bounds need one\n";
    return kExitDiagnostics;
  }
  std::vector<Value> args = parse_args(b.program, fn, arg_texts, err);
  BoundReport rep;
  try {
    rep = verify_bounds(b.program, *b.interp, fn, args, {}, {grid, 1});
  } catch (const NotSimple& e) {
    err << e.what() << "\n";
    return kExitDiagnostics;
  }
  if (as_json) {
    out << bounds_json(b.program, *b.interp, fn, rep).dump(2) << "\n";
  } else {
    const TwoCell& tc = b.program.sig.cell(fn);
    std::vector<std::string> names = b.interp->cell(fn).param_names;
    for (size_t i = names.size(); i < tc.source.size(); ++i)
      names.push_back("x" + std::to_string(i + 1));
    out << "function " << tc.name << " on sizes (";
    for (size_t i = 0; i < rep.arg_sizes.size(); ++i)
      out << (i ? ", " : "") << rep.arg_sizes[i];
    out << ")\n";
    out << "  P = " << rep.P.str(names) << "   (peak value size)\n";
    out << "  Q = " << rep.Q.str(names) << "   (computation steps)\n";
    out << "  S = " << rep.S.str(names) << "   (structure heat per step)\n";
    out << "  R = " << rep.R.str(names) << "   (total steps)\n";
    out << "  measured: k=" << rep.trace.k << " l=" << rep.trace.l << " size="
        << rep.trace.size() << " peak=" << rep.trace.peak_current_sum << "\n";
    for (const BoundCheck& c : rep.checks)
      out << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name << ": " << c.measured
          << " <= " << c.bound << "\n";
    out << "  result: " << print_values(b.program.sig, rep.result) << "\n";
  }
  if (rep.fuel_exhausted) return kExitExhausted;
  return rep.all_pass ? kExitOk : kExitDiagnostics;
}

int cmd_compile_tm(const std::string& file, const std::string& out_path,
                   const std::string& clock, bool allow_nondet, std::ostream& out,
                   std::ostream& err) {
  TuringMachine tm;
  try {
    tm = parse_tm_file(file);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitDiagnostics;
  }
  ProgramBundle b;
  try {
    if (clock.empty()) {
      b = compile_tm(tm, allow_nondet);
    } else {
      NatExpr p = parse_expression(clock, {"n"});
      b = compile_clocked_tm(tm, p);
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitDiagnostics;
  }
  std::string text = print_program(b.program, b.interp ? &*b.interp : nullptr);
  // the output must load back
  ParseResult again = parse_program(text);
  if (!again.ok()) {
    err << "internal: compiled program does not reparse\n";
    for (const Diagnostic& d : again.diagnostics) err << "  " << d.str() << "\n";
    return kExitDiagnostics;
  }
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(out_path);
    if (!f) {
      err << "cannot write " << out_path << "\n";
      return kExitDiagnostics;
    }
    f << text;
  }
  return kExitOk;
}

int cmd_export(const std::string& file, const std::string& format, const std::string& rule,
               bool include_structure, const std::vector<std::string>& trace_spec,
               std::ostream& out, std::ostream& err) {
  ProgramBundle b = load_program(file, err);
  if (!trace_spec.empty()) {
    if (format == "dot") {
      err << "traces export as json only\n";
      return kExitDiagnostics;
    }
    CellId fn = find_function(b.program, trace_spec[0], err);
    std::vector<std::string> arg_texts(trace_spec.begin() + 1, trace_spec.end());
    std::vector<Value> args = parse_args(b.program, fn, arg_texts, err);
    EngineOptions eng;
    if (b.interp) eng.instrument = &*b.interp;
    EvalResult r = evaluate(b.program, fn, args, EvalMode::Confluent, eng);
    if (r.fuel_exhausted) {
      err << "fuel exhausted\n";
      return kExitExhausted;
    }
    out << trace_json(b.program, r.trace).dump(2) << "\n";
    return kExitOk;
  }
  if (format == "dot") {
    out << program_dot(b.program, rule, include_structure);
  } else {
    out << program_json(b.program, rule, include_structure).dump(2) << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"circuit rewriting engine with polynomial resource certificates", "polyg"};
  app.require_subcommand(1);

  std::string file, fn_name, mode = "confluent", strategy = "innermost";
  uint64_t seed = 0, fuel = 1'000'000, grid = 8, grid_lo = 1;
  std::string trace_path, out_path, clock, format = "json", rule, trace_fn;
  bool as_json = false, allow_nondet = false, show_all = false, include_structure = false;

  CLI::App* eval = app.add_subcommand("eval", "normalize a function applied to values");
  eval->add_option("file", file)->required();
  eval->add_option("function", fn_name)->required();
  eval->allow_extras();  // argument values
  eval->add_option("--mode", mode, "confluent | exhaustive");
  eval->add_option("--strategy", strategy, "innermost | outermost | random");
  eval->add_option("--seed", seed);
  eval->add_option("--fuel", fuel);
  eval->add_option("--trace", trace_path, "write the run's trace as json");
  eval->add_flag("--all", show_all, "with --mode exhaustive, print every normal form");

  CLI::App* check = app.add_subcommand("check", "simplicity and rule compatibility report");
  check->add_option("file", file)->required();
  check->add_option("--grid", grid, "grid upper bound (default 8)");
  check->add_option("--grid-lo", grid_lo, "grid lower bound, 0 or 1 (default 1)");
  check->add_flag("--json", as_json);

  CLI::App* bounds = app.add_subcommand("bounds", "verify derived bounds on one run");
  bounds->add_option("file", file)->required();
  bounds->add_option("function", fn_name)->required();
  bounds->allow_extras();  // argument values
  bounds->add_option("--grid", grid);
  bounds->add_flag("--json", as_json);

  CLI::App* ctm = app.add_subcommand("compile-tm", "turn a machine file into a program");
  ctm->add_option("file", file)->required();
  ctm->add_option("-o,--output", out_path, "program file to write (default: stdout)");
  ctm->add_option("--clock", clock, "clock polynomial in n; makes the clocked variant");
  ctm->add_flag("--allow-nondet", allow_nondet);

  CLI::App* exp = app.add_subcommand("export", "render rules or traces");
  exp->add_option("file", file)->required();
  exp->add_option("--format", format, "dot | json");
  exp->add_option("--rule", rule, "restrict to one rule");
  exp->add_flag("--structure", include_structure, "include generated structure rules");
  exp->add_option("--trace", trace_fn, "FN: export the trace of running FN on the extras");
  exp->allow_extras();

  try {
    std::vector<const char*> argv{"polyg"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << e.what() << "\n";
    return kExitDiagnostics;
  }

  try {
    if (eval->parsed())
      return cmd_eval(file, fn_name, eval->remaining(), mode, strategy, seed, fuel, trace_path,
                      show_all, out, err);
    if (check->parsed()) return cmd_check(file, grid, grid_lo, as_json, out, err);
    if (bounds->parsed())
      return cmd_bounds(file, fn_name, bounds->remaining(), grid, as_json, out, err);
    if (ctm->parsed()) return cmd_compile_tm(file, out_path, clock, allow_nondet, out, err);
    if (exp->parsed()) {
      std::vector<std::string> trace_spec;
      if (!trace_fn.empty()) {
        trace_spec.push_back(trace_fn);
        for (const std::string& a : exp->remaining()) trace_spec.push_back(a);
      }
      return cmd_export(file, format, rule, include_structure, trace_spec, out, err);
    }
  } catch (const CliError& e) {
    return e.code;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitDiagnostics;
  }
  return kExitDiagnostics;
}

}  // namespace polyg

