#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "polyg/interp.hpp"
#include "polyg/rule.hpp"
#include "polyg/value.hpp"

namespace polyg {

struct StaleMatch : Error {
  using Error::Error;
};

/// A located redex: the rule, the host node its anchor maps to, and the
/// bindings for pattern wires and literal schema slots.
struct Match {
  uint32_t rule = 0;
  uint32_t anchor = 0;
  std::vector<Attach> wire_binding;      // per lhs input, the host producer
  std::vector<uint64_t> literal_binding; // per schema slot
  std::vector<uint32_t> matched_nodes;   // host nodes consumed by the pattern
};

struct StepRecord {
  uint32_t rule = 0;
  RuleKind kind = RuleKind::Computation;
  CellId anchor_cell = 0;
  // Filled when an interpretation is attached: state measures after the step.
  uint64_t heat = 0;
  uint64_t structure_heat = 0;
  uint64_t current_sum = 0;  // max over node input sums and the output sum
};

struct Trace {
  std::vector<StepRecord> steps;
  uint64_t k = 0;  // computation steps
  uint64_t l = 0;  // structure steps
  uint64_t size() const { return k + l; }

  bool instrumented = false;
  uint64_t initial_heat = 0;
  uint64_t initial_structure_heat = 0;
  uint64_t initial_current_sum = 0;
  uint64_t peak_current_sum = 0;  // max over all intermediate states
};

enum class Strategy : uint8_t { LeftmostInnermost, LeftmostOutermost, Random };

struct EngineOptions {
  Strategy strategy = Strategy::LeftmostInnermost;
  uint64_t seed = 0;
  uint64_t fuel = 1'000'000;
  const Interpretation* instrument = nullptr;
};

struct NormalizeResult {
  Diagram result;
  Trace trace;
  bool fuel_exhausted = false;
};

/// All redexes of `d`, deterministic: ordered by canonical anchor position,
/// then rule index. Guards are evaluated on the bound literals.
std::vector<Match> find_redexes(const Program& p, const Diagram& d);

/// Tries to match one rule with its anchor at host node `anchor`.
std::optional<Match> match_at(const Program& p, const Diagram& d, uint32_t rule, uint32_t anchor);

/// Replaces the matched pattern by the instantiated right side. Throws
/// StaleMatch when the match does not (or no longer does) hold in `d`.
Diagram apply(const Program& p, const Diagram& d, const Match& m);

/// Drops closed components made only of constructors and erasers (the
/// residue of erased values). Not a rewriting step.
Diagram collect_garbage(const Program& p, const Diagram& d);

NormalizeResult normalize(const Program& p, const Diagram& start, const EngineOptions& = {});

struct EnumerateOptions {
  uint64_t max_states = 1'000'000;
  uint64_t max_depth = 10'000;
};

struct EnumerateResult {
  std::vector<Diagram> normal_forms;
  bool budget_exhausted = false;
  uint64_t states_explored = 0;
};

/// Breadth-first exploration of the reduction graph, memoized on canonical
/// forms; returns every normal form reachable within budget.
EnumerateResult enumerate_normal_forms(const Program& p, const Diagram& start,
                                       const EnumerateOptions& = {});

enum class EvalMode : uint8_t { Confluent, Exhaustive };

struct EvalResult {
  std::vector<Value> values;
  Trace trace;                                 // confluent mode
  std::vector<std::vector<Value>> normal_forms;  // exhaustive mode, sorted ascending
  bool fuel_exhausted = false;
  bool budget_exhausted = false;
};

/// Applies a function cell to argument values. Confluent mode normalizes
/// under the chosen strategy and decodes the outputs; exhaustive mode
/// enumerates all normal forms and returns the greatest value family.
EvalResult evaluate(const Program& p, CellId fn, std::span<const Value> args,
                    EvalMode mode = EvalMode::Confluent, const EngineOptions& eng = {},
                    const EnumerateOptions& enumerate = {});

}  // namespace polyg
