#include "polyg/turing.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "polyg/structure.hpp"
#include "polyg/term.hpp"

namespace polyg {

std::vector<const TuringMachine::Transition*> TuringMachine::at(const std::string& state,
                                                                char letter) const {
  std::vector<const Transition*> out;
  for (const Transition& t : transitions)
    if (t.from == state && t.read == letter) out.push_back(&t);
  return out;
}

bool TuringMachine::deterministic() const {
  std::set<std::pair<std::string, char>> seen;
  for (const Transition& t : transitions)
    if (!seen.insert({t.from, t.read}).second) return false;
  return true;
}

std::vector<std::string> TuringMachine::states() const {
  std::vector<std::string> out{initial};
  auto add = [&](const std::string& s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  };
  for (const Transition& t : transitions) {
    add(t.from);
    add(t.to);
  }
  return out;
}

std::vector<char> TuringMachine::letters_with_blank() const {
  std::vector<char> out = alphabet;
  out.push_back('_');
  return out;
}

TuringMachine parse_tm(const std::string& text) {
  TuringMachine tm;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto bad = [&](const std::string& msg) {
    throw Error("machine file line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    lineno++;
    if (auto h = line.find("//"); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "machine") {
      if (!(ls >> tm.name)) bad("expected machine name");
    } else if (kw == "alphabet") {
      std::string sym;
      while (ls >> sym) {
        if (sym.size() != 1 || !(std::isalnum(sym[0])))
          bad("letters are single alphanumeric characters");
        tm.alphabet.push_back(sym[0]);
      }
    } else if (kw == "start") {
      if (!(ls >> tm.initial)) bad("expected start state");
    } else if (kw == "trans") {
      TuringMachine::Transition t;
      std::string read, arrow, write, move;
      if (!(ls >> t.from >> read >> arrow >> t.to >> write >> move) || arrow != "->")
        bad("expected `trans q a -> q' b M`");
      if (read.size() != 1 || write.size() != 1) bad("letters are single characters");
      t.read = read[0];
      t.write = write[0];
      if (move == "L") t.move = TuringMachine::Move::Left;
      else if (move == "R") t.move = TuringMachine::Move::Right;
      else bad("move must be L or R");
      auto known = [&](char c) {
        return c == '_' ||
               std::find(tm.alphabet.begin(), tm.alphabet.end(), c) != tm.alphabet.end();
      };
      if (!known(t.read) || !known(t.write)) bad("transition uses a letter not in the alphabet");
      tm.transitions.push_back(t);
    } else {
      bad("unknown keyword " + kw);
    }
  }
  if (tm.name.empty()) throw Error("machine file names no machine");
  if (tm.initial.empty()) throw Error("machine " + tm.name + " names no start state");
  return tm;
}

TuringMachine parse_tm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_tm(ss.str());
}

TmRun tm_simulate(const TuringMachine& tm, const std::string& input, uint64_t max_steps) {
  std::string left;  // nearest cell first
  char head = '_';
  std::string right = input;
  std::string state = tm.initial;
  TmRun run;
  for (;;) {
    auto ts = tm.at(state, head);
    if (ts.empty()) break;
    if (ts.size() > 1)
      throw NondeterministicMachine("machine " + tm.name + " is not deterministic at (" + state +
                                    ", " + head + ")");
    if (run.steps >= max_steps) return run;  // halted stays false
    const auto& t = *ts[0];
    if (t.move == TuringMachine::Move::Right) {
      left.insert(left.begin(), t.write);
      head = right.empty() ? '_' : right.front();
      if (!right.empty()) right.erase(right.begin());
    } else {
      right.insert(right.begin(), t.write);
      head = left.empty() ? '_' : left.front();
      if (!left.empty()) left.erase(left.begin());
    }
    state = t.to;
    run.steps++;
  }
  while (!right.empty() && right.back() == '_') right.pop_back();
  run.output = right;
  run.halted = true;
  return run;
}

namespace {

std::string sym_cell(char c) { return std::string("sym_") + c; }
std::string sym_token(char c) { return c == '_' ? "blank" : std::string(1, c); }

struct TmCells {
  SortId mon;
  CellId eow;
  std::map<char, CellId> letters;
};

TmCells declare_word_cells(Signature& sig, const TuringMachine& tm) {
  TmCells cells;
  cells.mon = sig.add_sort("mon");
  cells.eow = sig.add_constructor("eow", {}, cells.mon);
  for (char c : tm.letters_with_blank())
    cells.letters[c] = sig.add_constructor(sym_cell(c), {cells.mon}, cells.mon);
  return cells;
}

std::string step_name(const std::string& prefix, const std::string& q, char a) {
  return prefix + "_" + q + "_" + sym_token(a);
}

void push_rule(Program& prog, const std::string& name, const Term& pattern, const RhsSpec& rhs) {
  Rule r = build_rule(prog.sig, name, pattern, rhs);
  r.source_text = [&] {
    // reconstructed the same way the parser stores it
    struct Render {
      static void term(const Term& t, std::string& out) {
        switch (t.kind) {
          case Term::Kind::Var: out += t.name; return;
          case Term::Kind::LitNum: out += std::to_string(t.number); return;
          case Term::Kind::LitVar: out += "#" + t.name; return;
          case Term::Kind::Splice: out += "<circuit>"; return;
          case Term::Kind::App:
            out += t.name;
            if (!t.args.empty()) {
              out += '(';
              for (size_t i = 0; i < t.args.size(); ++i) {
                if (i) out += ", ";
                term(t.args[i], out);
              }
              out += ')';
            }
        }
      }
    };
    std::string s;
    Render::term(pattern, s);
    s += " =>";
    for (const auto& let : rhs.lets) {
      s += " let (";
      for (size_t i = 0; i < let.binders.size(); ++i) {
        if (i) s += ", ";
        s += let.binders[i];
      }
      s += ") = ";
      Render::term(let.call, s);
      s += " in";
    }
    if (rhs.results.size() == 1) {
      s += " ";
      Render::term(rhs.results[0], s);
    } else {
      s += " (";
      for (size_t i = 0; i < rhs.results.size(); ++i) {
        if (i) s += ", ";
        Render::term(rhs.results[i], s);
      }
      s += ")";
    }
    return s;
  }();
  prog.rules.push_back(std::move(r));
}

void check_compilable(const TuringMachine& tm, bool allow_nondeterministic) {
  if (!allow_nondeterministic && !tm.deterministic())
    throw NondeterministicMachine("machine " + tm.name +
                                  " has several transitions for one (state, letter) pair");
  for (const std::string& q : tm.states())
    for (char c : q) {
      if (!std::isalnum(c) && c != '_')
        throw Error("state names must be identifiers: " + q);
    }
}

}  // namespace

ProgramBundle compile_tm(const TuringMachine& tm, bool allow_nondeterministic) {
  check_compilable(tm, allow_nondeterministic);
  Program prog;
  prog.name = tm.name;
  TmCells cells = declare_word_cells(prog.sig, tm);

  CellId main_fn = prog.sig.add_function(tm.name, {cells.mon}, {cells.mon});
  (void)main_fn;
  for (const std::string& q : tm.states())
    for (char a : tm.letters_with_blank())
      prog.sig.add_function(step_name("step", q, a), {cells.mon, cells.mon}, {cells.mon});

  // Load: empty left tape, input as the right word, head on a blank.
  push_rule(prog, "init", Term::app(tm.name, {Term::var("w")}),
            {{}, {Term::app(step_name("step", tm.initial, '_'),
                            {Term::app("eow"), Term::var("w")})}});

  for (const TuringMachine::Transition& t : tm.transitions) {
    std::string base = "t_" + t.from + "_" + sym_token(t.read);
    auto multi = tm.at(t.from, t.read);
    if (multi.size() > 1) base += "_" + t.to + "_" + sym_token(t.write);
    std::string step = step_name("step", t.from, t.read);
    if (t.move == TuringMachine::Move::Right) {
      for (char d : tm.letters_with_blank())
        push_rule(prog, base + "_reads_" + sym_token(d),
                  Term::app(step, {Term::var("l"), Term::app(sym_cell(d), {Term::var("r")})}),
                  {{}, {Term::app(step_name("step", t.to, d),
                                  {Term::app(sym_cell(t.write), {Term::var("l")}), Term::var("r")})}});
      push_rule(prog, base + "_reads_end",
                Term::app(step, {Term::var("l"), Term::app("eow")}),
                {{}, {Term::app(step_name("step", t.to, '_'),
                                {Term::app(sym_cell(t.write), {Term::var("l")}), Term::app("eow")})}});
    } else {
      for (char d : tm.letters_with_blank())
        push_rule(prog, base + "_reads_" + sym_token(d),
                  Term::app(step, {Term::app(sym_cell(d), {Term::var("l")}), Term::var("r")}),
                  {{}, {Term::app(step_name("step", t.to, d),
                                  {Term::var("l"), Term::app(sym_cell(t.write), {Term::var("r")})})}});
      push_rule(prog, base + "_reads_end",
                Term::app(step, {Term::app("eow"), Term::var("r")}),
                {{}, {Term::app(step_name("step", t.to, '_'),
                                {Term::app("eow"), Term::app(sym_cell(t.write), {Term::var("r")})})}});
    }
  }

  // Halting pairs surrender the right word and erase the left.
  for (const std::string& q : tm.states())
    for (char a : tm.letters_with_blank())
      if (tm.at(q, a).empty()) {
        RhsSpec rhs;
        rhs.lets.push_back({{}, Term::app("erase", {Term::var("l")})});
        rhs.results.push_back(Term::var("r"));
        push_rule(prog, "halt_" + q + "_" + sym_token(a),
                  Term::app(step_name("step", q, a), {Term::var("l"), Term::var("r")}), rhs);
      }

  std::vector<SortId> sorts{cells.mon};
  for (Rule& r : generate_structure_rules(prog.sig, sorts)) prog.rules.push_back(std::move(r));
  return {std::move(prog), std::nullopt};
}

// --- Clocked construction ----------------------------------------------------

namespace {

/// Univariate polynomial into a circuit over the arithmetic cells: copy
/// chains for the variable, Peano constants, adds and mults. Tracks the
/// symbolic current and heat of the built circuit alongside.
struct PolyCircuit {
  std::vector<RhsSpec::Let> lets;
  Term term;
  NatExpr current, heat;
};

Term peano(uint64_t n) {
  Term t = Term::app("zero");
  for (uint64_t i = 0; i < n; ++i) t = Term::app("succ", {t});
  return t;
}

PolyCircuit compile_clock_poly(const NatExpr& clock, const std::string& var) {
  NatExpr p = clock.normalized();
  // monomials c * x^e of a univariate polynomial
  std::vector<std::pair<uint64_t, uint64_t>> monos;  // (exponent, coeff)
  std::function<void(const NatExpr&)> scan = [&](const NatExpr& e) {
    switch (e.kind()) {
      case NatExpr::Kind::Const:
        if (e.value()) monos.emplace_back(0, e.value());
        return;
      case NatExpr::Kind::Var:
        if (e.var_index() != 0) throw Error("clock polynomial must use one variable");
        monos.emplace_back(1, 1);
        return;
      case NatExpr::Kind::Add:
        for (const NatExpr& k : e.kids()) scan(k);
        return;
      case NatExpr::Kind::Mul: {
        uint64_t coeff = 1, exp = 0;
        for (const NatExpr& k : e.kids()) {
          if (k.kind() == NatExpr::Kind::Const) coeff *= k.value();
          else if (k.kind() == NatExpr::Kind::Var && k.var_index() == 0) exp++;
          else throw Error("clock must be a plain polynomial");
        }
        monos.emplace_back(exp, coeff);
        return;
      }
      default: throw Error("clock must be a plain polynomial (no max, ceil or floor)");
    }
  };
  scan(p);
  if (monos.empty()) monos.emplace_back(0, 0);

  PolyCircuit out{{}, Term::var(var), NatExpr(uint64_t(0)), NatExpr(uint64_t(0))};
  uint64_t uses = 0;
  for (auto [e, c] : monos) uses += e;

  // Copy chain for the variable: uses-1 copies give `uses` handles.
  std::vector<std::string> handles;
  if (uses == 0) {
    out.lets.push_back({{}, Term::app("erase", {Term::var(var)})});
  } else if (uses == 1) {
    handles.push_back(var);
  } else {
    std::string feed = var;
    for (uint64_t i = 1; i < uses; ++i) {
      std::string a = "c" + std::to_string(i), b = "c" + std::to_string(i) + "r";
      out.lets.push_back({{a, b}, Term::app("dup", {Term::var(feed)})});
      handles.push_back(a);
      feed = b;
    }
    handles.push_back(feed);
  }

  const NatExpr x = NatExpr::var(0);
  auto mult_of = [&](Term a, NatExpr ca, Term b, NatExpr cb, NatExpr& heat) {
    heat = heat + (ca + NatExpr(1)) * cb;
    NatExpr cur = ca * cb + cb;
    return std::pair<Term, NatExpr>(Term::app("mult", {std::move(a), std::move(b)}), cur);
  };

  size_t next_handle = 0;
  std::optional<std::pair<Term, NatExpr>> acc;  // term and its current
  NatExpr heat(uint64_t{0});
  for (auto [e, c] : monos) {
    // build c * x^e
    std::pair<Term, NatExpr> m{peano(c), NatExpr(c + 1)};
    bool have = c != 1 || e == 0;
    if (!have) {
      m = {Term::var(handles[next_handle++]), x};
      e--;
    }
    for (uint64_t i = 0; i < e; ++i)
      m = mult_of(std::move(m.first), m.second, Term::var(handles[next_handle++]), x, heat);
    if (!acc) {
      acc = std::move(m);
    } else {
      heat = heat + acc->second;  // add's heat is its first argument
      acc = {Term::app("add", {std::move(acc->first), std::move(m.first)}),
             acc->second + m.second};
    }
  }
  out.term = std::move(acc->first);
  out.current = acc->second.normalized();
  out.heat = heat.normalized();
  return out;
}

const char* kArithCells = "arith";  // marker for names below

}  // namespace

ProgramBundle compile_clocked_tm(const TuringMachine& tm, const NatExpr& clock) {
  check_compilable(tm, /*allow_nondeterministic=*/false);
  (void)kArithCells;
  Program prog;
  prog.name = tm.name;
  Signature& sig = prog.sig;

  SortId nat = sig.add_sort("nat");
  CellId zero = sig.add_constructor("zero", {}, nat);
  CellId succ = sig.add_constructor("succ", {nat}, nat);
  (void)zero;
  (void)succ;
  CellId add = sig.add_function("add", {nat, nat}, {nat});
  CellId mult = sig.add_function("mult", {nat, nat}, {nat});
  TmCells cells = declare_word_cells(sig, tm);
  CellId size_fn = sig.add_function("size", {cells.mon}, {nat});
  CellId main_fn = sig.add_function(tm.name, {cells.mon}, {cells.mon});

  // Arithmetic rules (shared with the builtin program).
  push_rule(prog, "add_zero", Term::app("add", {Term::app("zero"), Term::var("y")}),
            {{}, {Term::var("y")}});
  push_rule(prog, "add_succ",
            Term::app("add", {Term::app("succ", {Term::var("x")}), Term::var("y")}),
            {{}, {Term::app("succ", {Term::app("add", {Term::var("x"), Term::var("y")})})}});
  {
    RhsSpec rhs;
    rhs.lets.push_back({{}, Term::app("erase", {Term::var("x")})});
    rhs.results.push_back(Term::app("zero"));
    push_rule(prog, "mult_zero", Term::app("mult", {Term::var("x"), Term::app("zero")}), rhs);
  }
  {
    RhsSpec rhs;
    rhs.lets.push_back({{"x1", "x2"}, Term::app("dup", {Term::var("x")})});
    rhs.results.push_back(
        Term::app("add", {Term::var("x1"), Term::app("mult", {Term::var("x2"), Term::var("y")})}));
    push_rule(prog, "mult_succ",
              Term::app("mult", {Term::var("x"), Term::app("succ", {Term::var("y")})}), rhs);
  }

  // size counts letters (including written blanks).
  push_rule(prog, "size_end", Term::app("size", {Term::app("eow")}), {{}, {Term::app("zero")}});
  for (char d : tm.letters_with_blank())
    push_rule(prog, "size_" + sym_token(d),
              Term::app("size", {Term::app(sym_cell(d), {Term::var("w")})}),
              {{}, {Term::app("succ", {Term::app("size", {Term::var("w")})})}});

  for (const std::string& q : tm.states())
    for (char a : tm.letters_with_blank())
      sig.add_function(step_name("cstep", q, a), {nat, cells.mon, cells.mon}, {cells.mon});

  // Load: clock the machine with P(size of the input).
  PolyCircuit pc = compile_clock_poly(clock, "s");
  {
    RhsSpec rhs;
    rhs.lets.push_back({{"w1", "w2"}, Term::app("dup", {Term::var("w")})});
    rhs.lets.push_back({{"s"}, Term::app("size", {Term::var("w1")})});
    for (auto& l : pc.lets) rhs.lets.push_back(l);
    rhs.results.push_back(Term::app(step_name("cstep", tm.initial, '_'),
                                    {pc.term, Term::app("eow"), Term::var("w2")}));
    push_rule(prog, "init", Term::app(tm.name, {Term::var("w")}), rhs);
  }

  // Transitions consume one tick; a zero clock or a halting pair surrenders
  // the right word.
  for (const TuringMachine::Transition& t : tm.transitions) {
    std::string base = "t_" + t.from + "_" + sym_token(t.read);
    std::string step = step_name("cstep", t.from, t.read);
    Term tick = Term::app("succ", {Term::var("n")});
    if (t.move == TuringMachine::Move::Right) {
      for (char d : tm.letters_with_blank())
        push_rule(prog, base + "_reads_" + sym_token(d),
                  Term::app(step, {tick, Term::var("l"),
                                   Term::app(sym_cell(d), {Term::var("r")})}),
                  {{}, {Term::app(step_name("cstep", t.to, d),
                                  {Term::var("n"), Term::app(sym_cell(t.write), {Term::var("l")}),
                                   Term::var("r")})}});
      push_rule(prog, base + "_reads_end",
                Term::app(step, {tick, Term::var("l"), Term::app("eow")}),
                {{}, {Term::app(step_name("cstep", t.to, '_'),
                                {Term::var("n"), Term::app(sym_cell(t.write), {Term::var("l")}),
                                 Term::app("eow")})}});
    } else {
      for (char d : tm.letters_with_blank())
        push_rule(prog, base + "_reads_" + sym_token(d),
                  Term::app(step, {tick, Term::app(sym_cell(d), {Term::var("l")}),
                                   Term::var("r")}),
                  {{}, {Term::app(step_name("cstep", t.to, d),
                                  {Term::var("n"), Term::var("l"),
                                   Term::app(sym_cell(t.write), {Term::var("r")})})}});
      push_rule(prog, base + "_reads_end",
                Term::app(step, {tick, Term::app("eow"), Term::var("r")}),
                {{}, {Term::app(step_name("cstep", t.to, '_'),
                                {Term::var("n"), Term::app("eow"),
                                 Term::app(sym_cell(t.write), {Term::var("r")})})}});
    }
    // clock ran out mid-run
    RhsSpec out_of_time;
    out_of_time.lets.push_back({{}, Term::app("erase", {Term::var("l")})});
    out_of_time.results.push_back(Term::var("r"));
    push_rule(prog, base + "_timeout",
              Term::app(step, {Term::app("zero"), Term::var("l"), Term::var("r")}), out_of_time);
  }
  for (const std::string& q : tm.states())
    for (char a : tm.letters_with_blank())
      if (tm.at(q, a).empty()) {
        RhsSpec rhs;
        rhs.lets.push_back({{}, Term::app("erase", {Term::var("n")})});
        rhs.lets.push_back({{}, Term::app("erase", {Term::var("l")})});
        rhs.results.push_back(Term::var("r"));
        push_rule(prog, "halt_" + q + "_" + sym_token(a),
                  Term::app(step_name("cstep", q, a),
                            {Term::var("n"), Term::var("l"), Term::var("r")}),
                  rhs);
      }

  std::vector<SortId> sorts{nat, cells.mon};
  for (Rule& r : generate_structure_rules(sig, sorts)) prog.rules.push_back(std::move(r));

  // Interpretation: the remaining clock is the step cells' heat.
  std::map<CellId, uint64_t> weights;
  for (CellId c = 0; c < sig.cell_count(); ++c)
    if (sig.cell(c).kind == CellKind::Constructor) weights[c] = 1;
  std::map<CellId, CellInterp> fns;
  NatExpr i = NatExpr::var(0), j = NatExpr::var(1), k = NatExpr::var(2);
  fns[add] = {{i + j}, i, {"i", "j"}};
  fns[mult] = {{i * j + j}, (i + NatExpr(1)) * j, {"i", "j"}};
  fns[size_fn] = {{i}, i, {"i"}};
  for (const std::string& q : tm.states())
    for (char a : tm.letters_with_blank())
      fns[*sig.find_cell(step_name("cstep", q, a))] = {{i + j + k}, i, {"i", "j", "k"}};
  fns[main_fn] = {{(pc.current + i + NatExpr(1)).normalized()},
                  (pc.heat + pc.current + i + NatExpr(1)).normalized(),
                  {"i"}};

  Interpretation it = Interpretation::build(prog, weights, fns);
  return {std::move(prog), std::move(it)};
}

}  // namespace polyg

