#include "polyg/natexpr.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace polyg {

struct NatExpr::Rep {
  Kind kind = Kind::Const;
  uint64_t value = 0;     // Const
  uint32_t var = 0;       // Var
  uint64_t divisor = 1;   // CeilDiv/FloorDiv
  std::vector<NatExpr> kids;
};

namespace {
std::shared_ptr<const NatExpr::Rep> make_rep(NatExpr::Rep r) {
  return std::make_shared<const NatExpr::Rep>(std::move(r));
}
}  // namespace

NatExpr::NatExpr(uint64_t c) : rep_(make_rep({Kind::Const, c, 0, 1, {}})) {}

NatExpr NatExpr::var(uint32_t index) {
  return NatExpr(make_rep({Kind::Var, 0, index, 1, {}}));
}

NatExpr NatExpr::max_of(NatExpr a, NatExpr b) {
  return NatExpr(make_rep({Kind::Max, 0, 0, 1, {std::move(a), std::move(b)}}));
}

NatExpr NatExpr::ceil_div(NatExpr e, uint64_t divisor) {
  if (divisor == 0) throw std::invalid_argument("division by zero in expression");
  return NatExpr(make_rep({Kind::CeilDiv, 0, 0, divisor, {std::move(e)}}));
}

NatExpr NatExpr::floor_div(NatExpr e, uint64_t divisor) {
  if (divisor == 0) throw std::invalid_argument("division by zero in expression");
  return NatExpr(make_rep({Kind::FloorDiv, 0, 0, divisor, {std::move(e)}}));
}

NatExpr operator+(const NatExpr& a, const NatExpr& b) {
  return NatExpr(make_rep({NatExpr::Kind::Add, 0, 0, 1, {a, b}}));
}

NatExpr operator*(const NatExpr& a, const NatExpr& b) {
  return NatExpr(make_rep({NatExpr::Kind::Mul, 0, 0, 1, {a, b}}));
}

NatExpr::Kind NatExpr::kind() const { return rep_->kind; }
uint64_t NatExpr::value() const { return rep_->value; }
uint32_t NatExpr::var_index() const { return rep_->var; }
uint64_t NatExpr::divisor() const { return rep_->divisor; }
std::span<const NatExpr> NatExpr::kids() const { return rep_->kids; }

uint64_t NatExpr::eval(std::span<const uint64_t> args) const { return eval_at<uint64_t>(args); }

NatExpr NatExpr::substitute(std::span<const NatExpr> args) const {
  return eval_at<NatExpr>(args);
}

uint32_t NatExpr::arity() const {
  switch (kind()) {
    case Kind::Const: return 0;
    case Kind::Var: return var_index() + 1;
    default: {
      uint32_t m = 0;
      for (const NatExpr& k : kids()) m = std::max(m, k.arity());
      return m;
    }
  }
}

int expr_compare(const NatExpr& a, const NatExpr& b) {
  if (a.rep_ == b.rep_) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case NatExpr::Kind::Const:
      return a.value() == b.value() ? 0 : (a.value() < b.value() ? -1 : 1);
    case NatExpr::Kind::Var:
      return a.var_index() == b.var_index() ? 0 : (a.var_index() < b.var_index() ? -1 : 1);
    case NatExpr::Kind::CeilDiv:
    case NatExpr::Kind::FloorDiv:
      if (a.divisor() != b.divisor()) return a.divisor() < b.divisor() ? -1 : 1;
      return expr_compare(a.kids()[0], b.kids()[0]);
    default: {
      if (a.kids().size() != b.kids().size())
        return a.kids().size() < b.kids().size() ? -1 : 1;
      for (size_t i = 0; i < a.kids().size(); ++i)
        if (int c = expr_compare(a.kids()[i], b.kids()[i]); c != 0) return c;
      return 0;
    }
  }
}

bool NatExpr::same_tree(const NatExpr& other) const { return expr_compare(*this, other) == 0; }

// ---------------------------------------------------------------------------
// Normalization: polynomials over atomic factors.

namespace {

struct ExprLess {
  bool operator()(const NatExpr& a, const NatExpr& b) const { return expr_compare(a, b) < 0; }
};

// A monomial: atoms with exponents, sorted by atom.
using Mono = std::vector<std::pair<NatExpr, uint32_t>>;

int mono_compare(const Mono& a, const Mono& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (int c = expr_compare(a[i].first, b[i].first); c != 0) return c;
    if (a[i].second != b[i].second) return a[i].second < b[i].second ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

struct MonoLess {
  bool operator()(const Mono& a, const Mono& b) const { return mono_compare(a, b) < 0; }
};

using Poly = std::map<Mono, uint64_t, MonoLess>;

Poly poly_const(uint64_t c) {
  Poly p;
  if (c) p.emplace(Mono{}, c);
  return p;
}

Poly poly_atom(NatExpr atom) {
  Poly p;
  p.emplace(Mono{{std::move(atom), 1}}, 1);
  return p;
}

void poly_add_into(Poly& a, const Poly& b) {
  for (const auto& [m, c] : b) {
    auto [it, fresh] = a.emplace(m, c);
    if (!fresh) it->second += c;
  }
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Mono m;
      m.reserve(ma.size() + mb.size());
      size_t i = 0, j = 0;
      while (i < ma.size() && j < mb.size()) {
        int c = expr_compare(ma[i].first, mb[j].first);
        if (c < 0) m.push_back(ma[i++]);
        else if (c > 0) m.push_back(mb[j++]);
        else {
          m.emplace_back(ma[i].first, ma[i].second + mb[j].second);
          ++i, ++j;
        }
      }
      while (i < ma.size()) m.push_back(ma[i++]);
      while (j < mb.size()) m.push_back(mb[j++]);
      auto [it, fresh] = out.emplace(std::move(m), ca * cb);
      if (!fresh) it->second += ca * cb;
    }
  return out;
}

bool poly_equal(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return false;
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end(); ++ia, ++ib)
    if (ia->second != ib->second || mono_compare(ia->first, ib->first) != 0) return false;
  return true;
}

NatExpr poly_to_expr(const Poly& p);

Poly normalize_poly(const NatExpr& e) {
  using K = NatExpr::Kind;
  switch (e.kind()) {
    case K::Const: return poly_const(e.value());
    case K::Var: return poly_atom(e);
    case K::Add: {
      Poly p;
      for (const NatExpr& k : e.kids()) poly_add_into(p, normalize_poly(k));
      return p;
    }
    case K::Mul: {
      Poly p = poly_const(1);
      for (const NatExpr& k : e.kids()) p = poly_mul(p, normalize_poly(k));
      return p;
    }
    case K::Max: {
      Poly a = normalize_poly(e.kids()[0]);
      Poly b = normalize_poly(e.kids()[1]);
      if (poly_equal(a, b)) return a;
      NatExpr ea = poly_to_expr(a), eb = poly_to_expr(b);
      if (ea.kind() == K::Const && eb.kind() == K::Const)
        return poly_const(std::max(ea.value(), eb.value()));
      if (expr_compare(eb, ea) < 0) std::swap(ea, eb);
      return poly_atom(NatExpr::max_of(ea, eb));
    }
    case K::CeilDiv:
    case K::FloorDiv: {
      Poly inner = normalize_poly(e.kids()[0]);
      uint64_t d = e.divisor();
      if (d == 1) return inner;
      NatExpr ei = poly_to_expr(inner);
      if (ei.kind() == K::Const)
        return poly_const(e.kind() == K::CeilDiv ? nat_ceil_div(ei.value(), d)
                                                 : nat_floor_div(ei.value(), d));
      return poly_atom(e.kind() == K::CeilDiv ? NatExpr::ceil_div(ei, d)
                                              : NatExpr::floor_div(ei, d));
    }
  }
  return poly_const(0);
}

// ceil(e/2) + floor(e/2) = e, applied to matching degree-1 atom pairs.
void fuse_rounding_pairs(Poly& p) {
  for (bool changed = true; changed;) {
    changed = false;
    for (auto it = p.begin(); it != p.end() && !changed; ++it) {
      const Mono& m = it->first;
      if (m.size() != 1 || m[0].second != 1) continue;
      const NatExpr& atom = m[0].first;
      if (atom.kind() != NatExpr::Kind::CeilDiv || atom.divisor() != 2) continue;
      Mono partner{{NatExpr::floor_div(atom.kids()[0], 2), 1}};
      auto jt = p.find(partner);
      if (jt == p.end()) continue;
      uint64_t take = std::min(it->second, jt->second);
      it->second -= take;
      jt->second -= take;
      Poly inner = normalize_poly(atom.kids()[0]);
      Poly scaled = poly_mul(inner, poly_const(take));
      if (it->second == 0) p.erase(it);
      if (jt->second == 0) p.erase(jt);
      poly_add_into(p, scaled);
      changed = true;
    }
  }
}

NatExpr nary(NatExpr::Kind k, std::vector<NatExpr> kids);

NatExpr poly_to_expr(const Poly& p) {
  if (p.empty()) return NatExpr(uint64_t{0});
  std::vector<NatExpr> terms;
  for (const auto& [m, c] : p) {
    if (c == 0) continue;
    std::vector<NatExpr> factors;
    if (c != 1 || m.empty()) factors.push_back(NatExpr(c));
    for (const auto& [atom, exp] : m)
      for (uint32_t e = 0; e < exp; ++e) factors.push_back(atom);
    terms.push_back(factors.size() == 1 ? factors[0]
                                        : nary(NatExpr::Kind::Mul, std::move(factors)));
  }
  if (terms.empty()) return NatExpr(uint64_t{0});
  return terms.size() == 1 ? terms[0] : nary(NatExpr::Kind::Add, std::move(terms));
}

}  // namespace

NatExpr NatExpr::normalized() const {
  Poly p = normalize_poly(*this);
  fuse_rounding_pairs(p);
  return poly_to_expr(p);
}

bool NatExpr::equivalent(const NatExpr& other) const {
  return normalized().same_tree(other.normalized());
}

namespace {

// Left fold; the argument order is already canonical.
NatExpr nary(NatExpr::Kind k, std::vector<NatExpr> kids) {
  NatExpr acc = kids[0];
  for (size_t i = 1; i < kids.size(); ++i)
    acc = k == NatExpr::Kind::Add ? (acc + kids[i]) : (acc * kids[i]);
  return acc;
}

int precedence(NatExpr::Kind k) {
  switch (k) {
    case NatExpr::Kind::Add: return 1;
    case NatExpr::Kind::Mul: return 2;
    default: return 3;
  }
}

void print(const NatExpr& e, std::span<const std::string> names, std::string& out, int parent) {
  using K = NatExpr::Kind;
  int prec = precedence(e.kind());
  bool paren = prec < parent;
  if (paren) out += '(';
  switch (e.kind()) {
    case K::Const: out += std::to_string(e.value()); break;
    case K::Var:
      if (e.var_index() < names.size()) out += names[e.var_index()];
      else out += "x" + std::to_string(e.var_index() + 1);
      break;
    case K::Add:
      for (size_t i = 0; i < e.kids().size(); ++i) {
        if (i) out += " + ";
        print(e.kids()[i], names, out, prec);
      }
      break;
    case K::Mul:
      for (size_t i = 0; i < e.kids().size(); ++i) {
        if (i) out += "*";
        print(e.kids()[i], names, out, prec);
      }
      break;
    case K::Max:
      out += "max(";
      print(e.kids()[0], names, out, 0);
      out += ", ";
      print(e.kids()[1], names, out, 0);
      out += ')';
      break;
    case K::CeilDiv:
    case K::FloorDiv:
      out += e.kind() == K::CeilDiv ? "ceil(" : "floor(";
      print(e.kids()[0], names, out, 0);
      out += '/';
      out += std::to_string(e.divisor());
      out += ')';
      break;
  }
  if (paren) out += ')';
}

}  // namespace

std::string NatExpr::str(std::span<const std::string> var_names) const {
  std::string out;
  print(normalized(), var_names, out, 0);
  return out;
}

std::string NatExpr::str() const { return str({}); }

}  // namespace polyg
