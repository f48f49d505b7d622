#pragma once

#include "polyg/engine.hpp"
#include "polyg/interp.hpp"

namespace polyg {

struct NotSimple : Error {
  using Error::Error;
};

struct BoundCheck {
  std::string name;
  bool pass = false;
  uint64_t measured = 0;
  uint64_t bound = 0;
  std::string note;
};

struct BoundReport {
  NatExpr P, S, Q, R;
  std::vector<uint64_t> arg_sizes;
  std::vector<BoundCheck> checks;
  Trace trace;
  std::vector<Value> result;
  bool fuel_exhausted = false;
  bool all_pass = false;
};

/// Runs one instrumented evaluation and compares the measured quantities
/// against the derived bounds: argument and result sizes against their
/// currents, the peak current sum against P, computation steps against Q,
/// structure steps against Q*S, and total steps against R. Refuses (throws
/// NotSimple) when the interpretation does not meet the shape conditions.
BoundReport verify_bounds(const Program& p, const Interpretation& it, CellId fn,
                          std::span<const Value> args, const EngineOptions& eng = {},
                          const GridOptions& grid = {});

}  // namespace polyg
