#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polyg/natexpr.hpp"
#include "polyg/rule.hpp"

namespace polyg {

struct CellInterp {
  std::vector<NatExpr> current;  // one expression per output
  NatExpr heat;
  std::vector<std::string> param_names;  // for printing only
};

/// Current and heat maps for every 2-cell of a signature. Constructor
/// currents are imposed as (sum of inputs) + weight with zero heat, so the
/// constructor part cannot be ill-shaped by input. Structure cells get the
/// fixed swap/copy/erase currents and zero heat. Function cells are free.
class Interpretation {
 public:
  static Interpretation build(const Program& program,
                              std::map<CellId, uint64_t> constructor_weights,
                              std::map<CellId, CellInterp> functions);

  const std::vector<NatExpr>& current(CellId c) const { return cells_.at(c).current; }
  const NatExpr& heat(CellId c) const { return cells_.at(c).heat; }
  const CellInterp& cell(CellId c) const { return cells_.at(c); }
  uint64_t constructor_weight(CellId c) const;

  uint64_t max_constructor_weight() const { return a_; }  // the bound a
  uint32_t structure_bound() const { return K_; }         // the constant K

 private:
  std::vector<CellInterp> cells_;
  std::vector<std::optional<uint64_t>> weights_;
  uint64_t a_ = 1;
  uint32_t K_ = 0;
};

// --- Compositional evaluation over the port graph --------------------------

/// Per-node input values, computed by topological propagation.
template <class N>
std::vector<std::vector<N>> flow_values(const Signature& sig, const Diagram& d,
                                        const Interpretation& it, std::span<const N> inputs);

template <class N>
std::vector<N> eval_current(const Signature& sig, const Diagram& d, const Interpretation& it,
                            std::span<const N> inputs);

template <class N>
N eval_heat(const Signature& sig, const Diagram& d, const Interpretation& it,
            std::span<const N> inputs);

/// Heat where only structure cells contribute: tau yields i*j, delta i^2,
/// eps i; constructors and functions contribute nothing. Currents still
/// propagate through everything.
template <class N>
N structure_heat(const Signature& sig, const Diagram& d, const Interpretation& it,
                 std::span<const N> inputs);

// --- Grid checks ------------------------------------------------------------

struct GridOptions {
  uint64_t bound = 8;  // grid {lo..bound}^m
  uint64_t lo = 1;     // values carry at least 1; 0 selects the wider grid
};

enum class Compat : uint8_t { Compatible, WeaklyCompatible, Violation };

struct RuleCompatReport {
  Compat status = Compat::Compatible;
  std::vector<uint64_t> witness;  // least failing point, if any
  std::string detail;
};

/// Evaluates both sides of a rule on every grid point. Compatible: currents
/// never drop and heat strictly drops everywhere. WeaklyCompatible: both
/// merely never drop. This is falsification on a grid, not a proof.
RuleCompatReport check_compatibility(const Signature& sig, const Rule& rule,
                                     const Interpretation& it, const GridOptions& grid = {});

struct SimpleReport {
  bool simple = false;  // the interpretation meets the shape conditions
  uint64_t a = 1;
  uint32_t K = 0;
  std::vector<std::string> violations;  // shape condition failures
  struct PerRule {
    uint32_t rule;
    RuleCompatReport report;
  };
  std::vector<PerRule> computation_rules;
  bool all_computation_compatible = false;
  uint64_t grid = 8, grid_lo = 1;

  /// Shape conditions plus compatibility with every computation rule.
  bool certified() const { return simple && all_computation_compatible; }
};

/// Shape conditions alone: constructor weights positive, zero constructor
/// and structure heat (imposed by construction), and function
/// superadditivity on the grid.
std::vector<std::string> shape_violations(const Program& program, const Interpretation& it,
                                          const GridOptions& grid = {});

/// Shape conditions (constructor weights positive, zero constructor and
/// structure heat, function superadditivity on the grid), the constants a
/// and K, and a compatibility verdict for every computation rule.
SimpleReport check_simple(const Program& program, const Interpretation& it,
                          const GridOptions& grid = {});

// --- Derived bounds ---------------------------------------------------------

/// P: result-size estimate, sum of output currents at (a*x1, ..., a*xm).
NatExpr derive_P(const Program& program, const Interpretation& it, CellId fn);
/// S = K * P^2: structure-heat increase per computation step.
NatExpr derive_S(const Program& program, const Interpretation& it, CellId fn);
/// Q: computation-step bound, the heat map at (a*x1, ..., a*xm).
NatExpr derive_Q(const Program& program, const Interpretation& it, CellId fn);
/// R = Q * (1 + S): total step bound.
NatExpr derive_R(const Program& program, const Interpretation& it, CellId fn);

// --- Template implementations ----------------------------------------------

template <class N>
std::vector<std::vector<N>> flow_values(const Signature& sig, const Diagram& d,
                                        const Interpretation& it, std::span<const N> inputs) {
  (void)sig;
  std::vector<std::vector<N>> node_out(d.node_count());
  std::vector<std::vector<N>> node_in(d.node_count());
  auto value_of = [&](const Attach& a) -> const N& {
    return a.node == kBound ? inputs[a.port] : node_out[a.node][a.port];
  };
  for (uint32_t n : d.topological_order()) {
    const Node& nd = d.node(n);
    auto& ins = node_in[n];
    for (const Attach& a : d.node_inputs(n)) ins.push_back(value_of(a));
    const std::vector<NatExpr>& cur = it.current(nd.cell);
    auto& outs = node_out[n];
    outs.reserve(cur.size());
    for (const NatExpr& e : cur) outs.push_back(e.template eval_at<N>(ins));
  }
  return node_in;
}

namespace detail {
template <class N>
std::vector<std::vector<N>> out_values(const Signature& sig, const Diagram& d,
                                       const Interpretation& it, std::span<const N> inputs) {
  std::vector<std::vector<N>> node_out(d.node_count());
  auto value_of = [&](const Attach& a) -> const N& {
    return a.node == kBound ? inputs[a.port] : node_out[a.node][a.port];
  };
  for (uint32_t n : d.topological_order()) {
    const Node& nd = d.node(n);
    std::vector<N> ins;
    for (const Attach& a : d.node_inputs(n)) ins.push_back(value_of(a));
    const std::vector<NatExpr>& cur = it.current(nd.cell);
    auto& outs = node_out[n];
    outs.reserve(cur.size());
    for (const NatExpr& e : cur) outs.push_back(e.template eval_at<N>(ins));
  }
  (void)sig;
  return node_out;
}
}  // namespace detail

template <class N>
std::vector<N> eval_current(const Signature& sig, const Diagram& d, const Interpretation& it,
                            std::span<const N> inputs) {
  auto node_out = detail::out_values(sig, d, it, inputs);
  std::vector<N> out;
  out.reserve(d.outputs().size());
  for (uint32_t k = 0; k < d.outputs().size(); ++k) {
    const Attach& a = d.output_source(k);
    out.push_back(a.node == kBound ? inputs[a.port] : node_out[a.node][a.port]);
  }
  return out;
}

template <class N>
N eval_heat(const Signature& sig, const Diagram& d, const Interpretation& it,
            std::span<const N> inputs) {
  auto node_in = flow_values(sig, d, it, inputs);
  N total(uint64_t{0});
  for (uint32_t n = 0; n < d.node_count(); ++n)
    total = total + it.heat(d.node(n).cell).template eval_at<N>(node_in[n]);
  return total;
}

template <class N>
N structure_heat(const Signature& sig, const Diagram& d, const Interpretation& it,
                 std::span<const N> inputs) {
  auto node_in = flow_values(sig, d, it, inputs);
  N total(uint64_t{0});
  for (uint32_t n = 0; n < d.node_count(); ++n) {
    const auto& ins = node_in[n];
    switch (sig.cell(d.node(n).cell).kind) {
      case CellKind::Tau: total = total + ins[0] * ins[1]; break;
      case CellKind::Delta: total = total + ins[0] * ins[0]; break;
      case CellKind::Eps: total = total + ins[0]; break;
      default: break;
    }
  }
  return total;
}

}  // namespace polyg
