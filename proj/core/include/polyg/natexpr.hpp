#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace polyg {

/// Monotone maps N^m -> N: variables, constants, +, *, max, and rounding
/// division by a constant. Every construct is monotone, so expressions are
/// monotone by construction. Values are immutable and cheap to copy.
class NatExpr {
 public:
  enum class Kind : uint8_t { Const, Var, Add, Mul, Max, CeilDiv, FloorDiv };

  NatExpr() : NatExpr(uint64_t{0}) {}
  NatExpr(uint64_t c);
  static NatExpr var(uint32_t index);
  static NatExpr max_of(NatExpr a, NatExpr b);
  static NatExpr ceil_div(NatExpr e, uint64_t divisor);
  static NatExpr floor_div(NatExpr e, uint64_t divisor);

  friend NatExpr operator+(const NatExpr& a, const NatExpr& b);
  friend NatExpr operator*(const NatExpr& a, const NatExpr& b);

  Kind kind() const;
  uint64_t value() const;    // Const
  uint32_t var_index() const;
  uint64_t divisor() const;
  std::span<const NatExpr> kids() const;

  uint64_t eval(std::span<const uint64_t> args) const;

  /// Evaluates over any semiring-ish carrier providing N(uint64_t), +, *,
  /// nat_max(N,N), nat_ceil_div(N,c), nat_floor_div(N,c). Instantiated with
  /// uint64_t (numbers) and NatExpr (substitution).
  template <class N>
  N eval_at(std::span<const N> args) const;

  NatExpr substitute(std::span<const NatExpr> args) const;

  /// Canonical form: sums of monomials over atomic factors, constants folded,
  /// max/div simplified where sound (max(e,e)=e, e/1=e,
  /// ceil(e/2)+floor(e/2)=e). Deterministic, so equal canonical trees mean
  /// equal expressions up to commutative normalization.
  NatExpr normalized() const;
  bool equivalent(const NatExpr& other) const;
  bool same_tree(const NatExpr& other) const;

  uint32_t arity() const;
  std::string str(std::span<const std::string> var_names) const;
  std::string str() const;

  struct Rep;  // implementation detail, defined in natexpr.cpp

 private:
  std::shared_ptr<const Rep> rep_;
  explicit NatExpr(std::shared_ptr<const Rep> r) : rep_(std::move(r)) {}
  friend int expr_compare(const NatExpr& a, const NatExpr& b);
};

int expr_compare(const NatExpr& a, const NatExpr& b);

inline uint64_t nat_max(uint64_t a, uint64_t b) { return a < b ? b : a; }
inline uint64_t nat_ceil_div(uint64_t v, uint64_t d) { return (v + d - 1) / d; }
inline uint64_t nat_floor_div(uint64_t v, uint64_t d) { return v / d; }
inline NatExpr nat_max(const NatExpr& a, const NatExpr& b) { return NatExpr::max_of(a, b); }
inline NatExpr nat_ceil_div(const NatExpr& e, uint64_t d) { return NatExpr::ceil_div(e, d); }
inline NatExpr nat_floor_div(const NatExpr& e, uint64_t d) { return NatExpr::floor_div(e, d); }

template <class N>
N NatExpr::eval_at(std::span<const N> args) const {
  switch (kind()) {
    case Kind::Const: return N(value());
    case Kind::Var: return args[var_index()];
    case Kind::Add: {
      N acc = kids()[0].eval_at(args);
      for (size_t i = 1; i < kids().size(); ++i) acc = acc + kids()[i].eval_at(args);
      return acc;
    }
    case Kind::Mul: {
      N acc = kids()[0].eval_at(args);
      for (size_t i = 1; i < kids().size(); ++i) acc = acc * kids()[i].eval_at(args);
      return acc;
    }
    case Kind::Max: {
      N acc = kids()[0].eval_at(args);
      for (size_t i = 1; i < kids().size(); ++i) acc = nat_max(acc, kids()[i].eval_at(args));
      return acc;
    }
    case Kind::CeilDiv: return nat_ceil_div(kids()[0].eval_at(args), divisor());
    case Kind::FloorDiv: return nat_floor_div(kids()[0].eval_at(args), divisor());
  }
  return N(uint64_t{0});
}

}  // namespace polyg
