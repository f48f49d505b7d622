#include "polyg/parser.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "polyg/structure.hpp"
#include "polyg/term.hpp"

namespace polyg {

namespace {

struct Token {
  enum class Kind : uint8_t { Ident, Number, String, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  uint64_t number = 0;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : s_(text) { next(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    next();
    return t;
  }

 private:
  const std::string& s_;
  size_t i_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;

  int get() {
    if (i_ >= s_.size()) return -1;
    char c = s_[i_++];
    if (c == '\n') {
      line_++;
      col_ = 1;
    } else {
      col_++;
    }
    return c;
  }
  int look(size_t ahead = 0) const { return i_ + ahead < s_.size() ? s_[i_ + ahead] : -1; }

  void next() {
    for (;;) {
      while (look() != -1 && std::isspace(look())) get();
      if (look() == '/' && look(1) == '/') {
        while (look() != -1 && look() != '\n') get();
        continue;
      }
      break;
    }
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    int c = look();
    if (c == -1) {
      tok_.kind = Token::Kind::End;
      return;
    }
    if (std::isalpha(c) || c == '_') {
      std::string id;
      while (look() != -1 && (std::isalnum(look()) || look() == '_')) id += char(get());
      tok_.kind = Token::Kind::Ident;
      tok_.text = std::move(id);
      return;
    }
    if (std::isdigit(c)) {
      uint64_t v = 0;
      while (look() != -1 && std::isdigit(look())) v = v * 10 + uint64_t(get() - '0');
      tok_.kind = Token::Kind::Number;
      tok_.number = v;
      return;
    }
    if (c == '"') {
      get();
      std::string body;
      while (look() != -1 && look() != '"') body += char(get());
      if (look() == '"') get();
      tok_.kind = Token::Kind::String;
      tok_.text = std::move(body);
      return;
    }
    // multi-char operators first
    static const char* two[] = {"->", "=>", "<=", ">="};
    for (const char* op : two) {
      if (c == op[0] && look(1) == op[1]) {
        get();
        get();
        tok_.kind = Token::Kind::Punct;
        tok_.text = op;
        return;
      }
    }
    get();
    tok_.kind = Token::Kind::Punct;
    tok_.text = std::string(1, char(c));
  }
};

struct ParseFail {
  Diagnostic d;
};

[[noreturn]] void fail(const Token& at, const std::string& msg) {
  throw ParseFail{{at.line, at.col, msg}};
}

bool lex_eat_punct(Lexer& lex, const char* p) {
  if (lex.peek().kind == Token::Kind::Punct && lex.peek().text == p) {
    lex.take();
    return true;
  }
  return false;
}

void lex_expect_punct(Lexer& lex, const char* p) {
  if (!lex_eat_punct(lex, p)) fail(lex.peek(), std::string("expected '") + p + "'");
}

NatExpr expr_parse(Lexer& lex, const std::vector<std::string>& params);

NatExpr expr_atom(Lexer& lex, const std::vector<std::string>& params) {
  const Token& t = lex.peek();
  if (t.kind == Token::Kind::Number) return NatExpr(lex.take().number);
  if (t.kind == Token::Kind::Punct && t.text == "(") {
    lex.take();
    NatExpr e = expr_parse(lex, params);
    lex_expect_punct(lex, ")");
    return e;
  }
  if (t.kind == Token::Kind::Ident) {
    Token id = lex.take();
    if (id.text == "max") {
      lex_expect_punct(lex, "(");
      NatExpr a = expr_parse(lex, params);
      lex_expect_punct(lex, ",");
      NatExpr b = expr_parse(lex, params);
      lex_expect_punct(lex, ")");
      return NatExpr::max_of(a, b);
    }
    if (id.text == "ceil" || id.text == "floor") {
      lex_expect_punct(lex, "(");
      NatExpr a = expr_parse(lex, params);
      lex_expect_punct(lex, "/");
      if (lex.peek().kind != Token::Kind::Number) fail(lex.peek(), "expected constant divisor");
      uint64_t d = lex.take().number;
      lex_expect_punct(lex, ")");
      return id.text == "ceil" ? NatExpr::ceil_div(a, d) : NatExpr::floor_div(a, d);
    }
    for (uint32_t i = 0; i < params.size(); ++i)
      if (params[i] == id.text) return NatExpr::var(i);
    fail(id, "unknown variable " + id.text + " in expression");
  }
  fail(t, "expected an expression");
}

NatExpr expr_mul(Lexer& lex, const std::vector<std::string>& params) {
  NatExpr e = expr_atom(lex, params);
  while (lex_eat_punct(lex, "*")) e = e * expr_atom(lex, params);
  return e;
}

NatExpr expr_parse(Lexer& lex, const std::vector<std::string>& params) {
  NatExpr e = expr_mul(lex, params);
  while (lex_eat_punct(lex, "+")) e = e + expr_mul(lex, params);
  return e;
}

class ProgramParser {
 public:
  explicit ProgramParser(const std::string& text) : lex_(text) {}

  ParseResult run() {
    ParseResult res;
    try {
      parse();
      finish();
      res.program = std::move(prog_);
      res.interp = std::move(interp_);
    } catch (const ParseFail& f) {
      res.diagnostics.push_back(f.d);
    } catch (const ElabError& e) {
      res.diagnostics.push_back({e.line, e.col, e.what()});
    } catch (const Error& e) {
      res.diagnostics.push_back({0, 0, e.what()});
    }
    return res;
  }

  static std::string render_rule_source(const Term& pattern, const RhsSpec& rhs,
                                        const std::vector<GuardSpec>& guards) {
    std::string s;
    render_term(pattern, s);
    s += " =>";
    for (const auto& let : rhs.lets) {
      s += " let (";
      for (size_t i = 0; i < let.binders.size(); ++i) {
        if (i) s += ", ";
        s += let.binders[i];
      }
      s += ") = ";
      render_term(let.call, s);
      s += " in";
    }
    if (rhs.results.size() == 1) {
      s += " ";
      render_term(rhs.results[0], s);
    } else {
      s += " (";
      for (size_t i = 0; i < rhs.results.size(); ++i) {
        if (i) s += ", ";
        render_term(rhs.results[i], s);
      }
      s += ")";
    }
    for (size_t i = 0; i < guards.size(); ++i) {
      s += i ? ", " : " when ";
      const GuardSpec& g = guards[i];
      const char* op = g.swapped
                           ? (g.cmp == Guard::Cmp::Le ? ">=" : ">")
                           : (g.cmp == Guard::Cmp::Le ? "<=" : g.cmp == Guard::Cmp::Lt ? "<" : "=");
      s += g.lhs + " " + op + " " + g.rhs;
    }
    return s;
  }

 private:
  Lexer lex_;
  Program prog_;
  std::optional<Interpretation> interp_;
  std::map<CellId, uint64_t> weights_;
  std::map<CellId, CellInterp> fn_interps_;
  bool any_interp_ = false;

  bool at_ident(const char* kw) {
    return lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == kw;
  }
  Token expect_ident(const char* what) {
    if (lex_.peek().kind != Token::Kind::Ident) fail(lex_.peek(), std::string("expected ") + what);
    return lex_.take();
  }
  void expect_punct(const char* p) {
    if (lex_.peek().kind != Token::Kind::Punct || lex_.peek().text != p)
      fail(lex_.peek(), std::string("expected '") + p + "'");
    lex_.take();
  }
  bool eat_punct(const char* p) {
    if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == p) {
      lex_.take();
      return true;
    }
    return false;
  }

  SortId sort_ref(const Token& t) {
    auto s = prog_.sig.find_sort(t.text);
    if (!s) fail(t, "unknown sort " + t.text);
    return *s;
  }

  OnePath sort_list_until(const char* stop) {
    OnePath p;
    while (!(lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == stop)) {
      Token t = expect_ident("sort name");
      p.push_back(sort_ref(t));
    }
    return p;
  }

  void parse() {
    Token kw = expect_ident("'polygraph'");
    if (kw.text != "polygraph") fail(kw, "program must start with 'polygraph <name>'");
    prog_.name = expect_ident("program name").text;

    for (;;) {
      const Token& t = lex_.peek();
      if (t.kind == Token::Kind::End) break;
      if (t.kind != Token::Kind::Ident) fail(t, "expected a declaration");
      if (t.text == "sort") parse_sorts();
      else if (t.text == "constructor") parse_constructor();
      else if (t.text == "function") parse_function();
      else if (t.text == "rule") parse_rule();
      else if (t.text == "interp") parse_interp();
      else fail(t, "unknown declaration '" + t.text + "'");
    }
  }

  void parse_sorts() {
    lex_.take();
    Token t = expect_ident("sort name");
    prog_.sig.add_sort(t.text);
    while (lex_.peek().kind == Token::Kind::Ident && !is_keyword(lex_.peek().text))
      prog_.sig.add_sort(lex_.take().text);
  }

  static bool is_keyword(const std::string& s) {
    static const char* kws[] = {"sort",   "constructor", "function", "rule",    "interp",
                                "when",   "let",         "in",       "current", "heat",
                                "weight", "literal",     "polygraph"};
    for (const char* k : kws)
      if (s == k) return true;
    return false;
  }

  void parse_constructor() {
    lex_.take();
    std::string name = expect_ident("constructor name").text;
    expect_punct(":");
    OnePath src = sort_list_until("->");
    expect_punct("->");
    SortId target = sort_ref(expect_ident("target sort"));
    uint64_t weight = 1;
    bool literal = false;
    for (;;) {
      if (at_ident("weight")) {
        lex_.take();
        if (lex_.peek().kind != Token::Kind::Number) fail(lex_.peek(), "expected weight value");
        weight = lex_.take().number;
      } else if (at_ident("literal")) {
        lex_.take();
        literal = true;
      } else {
        break;
      }
    }
    CellId c = prog_.sig.add_constructor(name, src, target, literal);
    weights_[c] = weight;
  }

  void parse_function() {
    lex_.take();
    std::string name = expect_ident("function name").text;
    expect_punct(":");
    OnePath src = sort_list_until("->");
    expect_punct("->");
    OnePath tgt;
    while (lex_.peek().kind == Token::Kind::Ident && !is_keyword(lex_.peek().text) &&
           prog_.sig.find_sort(lex_.peek().text))
      tgt.push_back(sort_ref(lex_.take()));
    prog_.sig.add_function(name, src, tgt);
  }

  Term parse_term() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Punct && t.text == "#") {
      Token hash = lex_.take();
      Token id = expect_ident("literal variable");
      Term r = Term::litvar(id.text);
      r.line = hash.line;
      r.col = hash.col;
      return r;
    }
    if (t.kind == Token::Kind::Number) {
      Token n = lex_.take();
      Term r = Term::lit(n.number);
      r.line = n.line;
      r.col = n.col;
      return r;
    }
    Token id = expect_ident("term");
    if (eat_punct("(")) {
      std::vector<Term> args;
      if (!eat_punct(")")) {
        do {
          args.push_back(parse_term());
        } while (eat_punct(","));
        expect_punct(")");
      }
      Term r = Term::app(id.text, std::move(args));
      r.line = id.line;
      r.col = id.col;
      return r;
    }
    // Bare identifier: a nullary cell if declared, else a variable.
    Term r = prog_.sig.find_cell(id.text) ? Term::app(id.text) : Term::var(id.text);
    r.line = id.line;
    r.col = id.col;
    return r;
  }

  void parse_rule() {
    lex_.take();
    std::string name = expect_ident("rule name").text;
    expect_punct(":");
    Term pattern = parse_term();
    RhsSpec rhs;
    expect_punct("=>");
    while (at_ident("let")) {
      lex_.take();
      RhsSpec::Let let;
      if (eat_punct("(")) {
        if (!eat_punct(")")) {
          do {
            let.binders.push_back(expect_ident("binder").text);
          } while (eat_punct(","));
          expect_punct(")");
        }
      } else {
        let.binders.push_back(expect_ident("binder").text);
      }
      expect_punct("=");
      let.call = parse_term();
      if (!at_ident("in")) fail(lex_.peek(), "expected 'in' after let binding");
      lex_.take();
      rhs.lets.push_back(std::move(let));
    }
    if (eat_punct("(")) {
      if (!eat_punct(")")) {
        do {
          rhs.results.push_back(parse_term());
        } while (eat_punct(","));
        expect_punct(")");
      }
    } else {
      rhs.results.push_back(parse_term());
    }
    std::vector<GuardSpec> guards;
    if (at_ident("when")) {
      lex_.take();
      do {
        GuardSpec g;
        g.lhs = expect_ident("guard variable").text;
        const Token& op = lex_.peek();
        if (op.kind != Token::Kind::Punct) fail(op, "expected comparison");
        std::string o = lex_.take().text;
        if (o == "<=") g.cmp = Guard::Cmp::Le;
        else if (o == "<") g.cmp = Guard::Cmp::Lt;
        else if (o == "=") g.cmp = Guard::Cmp::Eq;
        else if (o == ">") {
          g.cmp = Guard::Cmp::Lt;
          g.swapped = true;
        } else if (o == ">=") {
          g.cmp = Guard::Cmp::Le;
          g.swapped = true;
        } else {
          fail(op, "expected one of <=, <, =, >, >=");
        }
        g.rhs = expect_ident("guard variable").text;
        guards.push_back(std::move(g));
      } while (eat_punct(","));
    }
    Rule r = build_rule(prog_.sig, name, pattern, rhs, guards);
    r.source_text = render_rule_source(pattern, rhs, guards);
    prog_.rules.push_back(std::move(r));
  }

  static void render_term(const Term& t, std::string& out) {
    switch (t.kind) {
      case Term::Kind::Var: out += t.name; break;
      case Term::Kind::LitNum: out += std::to_string(t.number); break;
      case Term::Kind::LitVar: out += "#" + t.name; break;
      case Term::Kind::Splice: out += "<circuit>"; break;
      case Term::Kind::App:
        out += t.name;
        if (!t.args.empty()) {
          out += '(';
          for (size_t i = 0; i < t.args.size(); ++i) {
            if (i) out += ", ";
            render_term(t.args[i], out);
          }
          out += ')';
        }
        break;
    }
  }

  NatExpr parse_expr(const std::vector<std::string>& params) { return expr_parse(lex_, params); }

  void parse_interp() {
    lex_.take();
    Token name = expect_ident("function name");
    auto c = prog_.sig.find_cell(name.text);
    if (!c) fail(name, "unknown cell " + name.text);
    const TwoCell& tc = prog_.sig.cell(*c);
    if (tc.kind != CellKind::Function)
      fail(name, "interpretations are declared for function cells only");
    std::vector<std::string> params;
    expect_punct("(");
    if (!eat_punct(")")) {
      do {
        params.push_back(expect_ident("parameter").text);
      } while (eat_punct(","));
      expect_punct(")");
    }
    if (params.size() != tc.source.size())
      fail(name, name.text + " has " + std::to_string(tc.source.size()) + " inputs");
    expect_punct(":");
    if (!at_ident("current")) fail(lex_.peek(), "expected 'current'");
    lex_.take();
    CellInterp ci;
    ci.param_names = params;
    if (!tc.target.empty()) {
      do {
        ci.current.push_back(parse_expr(params));
      } while (eat_punct(","));
    }
    if (!at_ident("heat")) fail(lex_.peek(), "expected 'heat'");
    lex_.take();
    ci.heat = parse_expr(params);
    if (ci.current.size() != tc.target.size())
      fail(name, name.text + " needs " + std::to_string(tc.target.size()) +
                     " current expressions");
    fn_interps_[*c] = std::move(ci);
    any_interp_ = true;
  }

  void finish() {
    // Structure rules for every constructor over every sort.
    std::vector<SortId> sorts;
    for (SortId s = 0; s < prog_.sig.sort_count(); ++s) sorts.push_back(s);
    for (Rule& r : generate_structure_rules(prog_.sig, sorts))
      prog_.rules.push_back(std::move(r));

    if (any_interp_) interp_ = Interpretation::build(prog_, weights_, fn_interps_);
  }
};

}  // namespace

ParseResult parse_program(const std::string& text) { return ProgramParser(text).run(); }

ParseResult parse_program_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    ParseResult res;
    res.diagnostics.push_back({0, 0, "cannot open " + path});
    return res;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str());
}

// --- Value terms -------------------------------------------------------------

namespace {

std::optional<CellId> literal_cell_for(const Signature& sig, SortId s) {
  for (CellId c = 0; c < sig.cell_count(); ++c) {
    const TwoCell& tc = sig.cell(c);
    if (tc.kind == CellKind::Constructor && tc.literal_family && tc.target[0] == s) return c;
  }
  return std::nullopt;
}

std::optional<CellId> named_ctor(const Signature& sig, const std::string& name, SortId target) {
  auto c = sig.find_cell(name);
  if (!c) return std::nullopt;
  const TwoCell& tc = sig.cell(*c);
  if (tc.kind != CellKind::Constructor || tc.target[0] != target) return std::nullopt;
  return c;
}

Value number_value(const Signature& sig, const Token& at, uint64_t n, SortId want) {
  if (auto lit = literal_cell_for(sig, want)) return Value{*lit, n, {}};
  auto zero = named_ctor(sig, "zero", want);
  auto succ = named_ctor(sig, "succ", want);
  if (zero && succ && sig.cell(*succ).source == OnePath{want}) {
    Value v{*zero, {}, {}};
    for (uint64_t i = 0; i < n; ++i) v = Value{*succ, {}, {v}};
    return v;
  }
  fail(at, "sort " + sig.sort_name(want) + " has no numeric constructors");
}

Value parse_value_tok(const Signature& sig, Lexer& lex, SortId want) {
  Token t = lex.take();
  if (t.kind == Token::Kind::Number) return number_value(sig, t, t.number, want);
  if (t.kind == Token::Kind::Punct && t.text == "[") {
    auto nil = named_ctor(sig, "nil", want);
    auto cons = named_ctor(sig, "cons", want);
    if (!nil || !cons || sig.cell(*cons).source.size() != 2)
      fail(t, "sort " + sig.sort_name(want) + " has no list constructors");
    SortId elem = sig.cell(*cons).source[0];
    std::vector<Value> items;
    if (!(lex.peek().kind == Token::Kind::Punct && lex.peek().text == "]")) {
      for (;;) {
        items.push_back(parse_value_tok(sig, lex, elem));
        if (lex.peek().kind == Token::Kind::Punct && lex.peek().text == ",") {
          lex.take();
          continue;
        }
        break;
      }
    }
    if (!(lex.peek().kind == Token::Kind::Punct && lex.peek().text == "]"))
      fail(lex.peek(), "expected ']'");
    lex.take();
    Value v{*nil, {}, {}};
    for (auto it = items.rbegin(); it != items.rend(); ++it) v = Value{*cons, {}, {*it, v}};
    return v;
  }
  if (t.kind == Token::Kind::String) {
    auto end = named_ctor(sig, "eow", want);
    if (!end) fail(t, "sort " + sig.sort_name(want) + " has no word constructors");
    Value v{*end, {}, {}};
    for (auto it = t.text.rbegin(); it != t.text.rend(); ++it) {
      auto letter = named_ctor(sig, std::string("sym_") + *it, want);
      if (!letter) fail(t, std::string("no letter cell for '") + *it + "'");
      v = Value{*letter, {}, {v}};
    }
    return v;
  }
  if (t.kind == Token::Kind::Ident) {
    auto c = sig.find_cell(t.text);
    if (!c) fail(t, "unknown constructor " + t.text);
    const TwoCell& tc = sig.cell(*c);
    if (tc.kind != CellKind::Constructor) fail(t, t.text + " is not a constructor");
    if (tc.target[0] != want)
      fail(t, t.text + " builds " + sig.sort_name(tc.target[0]) + ", expected " +
                  sig.sort_name(want));
    if (tc.literal_family) fail(t, t.text + " needs a numeric index");
    Value v{*c, {}, {}};
    if (!tc.source.empty()) {
      if (!(lex.peek().kind == Token::Kind::Punct && lex.peek().text == "("))
        fail(lex.peek(), "expected '('");
      lex.take();
      for (size_t i = 0; i < tc.source.size(); ++i) {
        if (i) {
          if (!(lex.peek().kind == Token::Kind::Punct && lex.peek().text == ","))
            fail(lex.peek(), "expected ','");
          lex.take();
        }
        v.children.push_back(parse_value_tok(sig, lex, tc.source[i]));
      }
      if (!(lex.peek().kind == Token::Kind::Punct && lex.peek().text == ")"))
        fail(lex.peek(), "expected ')'");
      lex.take();
    }
    return v;
  }
  fail(t, "expected a value");
}

}  // namespace

Value parse_value(const Signature& sig, const std::string& text, SortId want) {
  Lexer lex(text);
  try {
    Value v = parse_value_tok(sig, lex, want);
    if (lex.peek().kind != Token::Kind::End)
      throw Error("trailing input after value: " + text);
    return v;
  } catch (const ParseFail& f) {
    throw Error("bad value '" + text + "': " + f.d.message);
  }
}

NatExpr parse_expression(const std::string& text, const std::vector<std::string>& params) {
  Lexer lex(text);
  try {
    NatExpr e = expr_parse(lex, params);
    if (lex.peek().kind != Token::Kind::End)
      throw Error("trailing input after expression: " + text);
    return e;
  } catch (const ParseFail& f) {
    throw Error("bad expression '" + text + "': " + f.d.message);
  }
}

}  // namespace polyg

