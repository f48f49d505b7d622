#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyg/rule.hpp"

namespace polyg {

struct ElabError : Error {
  ElabError(std::string msg, int line = 0, int col = 0)
      : Error(std::move(msg)), line(line), col(col) {}
  int line, col;
};

/// Surface syntax of rule sides: variables are wires, `#name` binds a
/// literal index, numbers are concrete literals, applications are cells.
/// Splice embeds a prebuilt single-output circuit (used by generated
/// programs, never by the text format).
struct Term {
  enum class Kind : uint8_t { Var, App, LitNum, LitVar, Splice };
  Kind kind = Kind::Var;
  std::string name;        // Var, App, LitVar
  uint64_t number = 0;     // LitNum
  std::vector<Term> args;  // App, Splice
  Diagram splice;          // Splice
  int line = 0, col = 0;

  static Term var(std::string n) { return {Kind::Var, std::move(n), 0, {}, {}, 0, 0}; }
  static Term app(std::string n, std::vector<Term> a = {}) {
    return {Kind::App, std::move(n), 0, std::move(a), {}, 0, 0};
  }
  static Term lit(uint64_t v) { return {Kind::LitNum, {}, v, {}, {}, 0, 0}; }
  static Term litvar(std::string n) { return {Kind::LitVar, std::move(n), 0, {}, {}, 0, 0}; }
  static Term splice_of(Diagram d, std::vector<Term> a) {
    return {Kind::Splice, {}, 0, std::move(a), std::move(d), 0, 0};
  }
};

/// A right side: let-bindings followed by the result tuple. `dup` and
/// `erase` are the explicit copy/erase markers; anything else named in a
/// let call is a cell.
struct RhsSpec {
  struct Let {
    std::vector<std::string> binders;
    Term call;
  };
  std::vector<Let> lets;
  std::vector<Term> results;
};

struct GuardSpec {
  std::string lhs;
  Guard::Cmp cmp;
  std::string rhs;
  bool swapped = false;  // surface used > or >=
};

/// Elaborates `pattern => rhs [when guards]` into a rule: the pattern gives
/// a constructor-tree left side over one function cell, with inputs ordered
/// by first occurrence; the right side gets explicit copies/erasures from
/// its lets and deterministically routed crossings wherever wire order has
/// to change.
Rule build_rule(const Signature& sig, std::string name, const Term& pattern, const RhsSpec& rhs,
                const std::vector<GuardSpec>& guards = {});

}  // namespace polyg
