#pragma once

#include "polyg/interp.hpp"

namespace polyg {

struct ProgramBundle {
  Program program;
  std::optional<Interpretation> interp;
};

/// Peano arithmetic: addition recursing on its first argument, multiplication
/// on its second, with the interpretation whose heat maps bound the step
/// counts of both.
ProgramBundle builtin_arith();

/// Fusion sort over literal-indexed naturals: sort/split/merge with guarded
/// merge schemas, plus the halving interpretation.
ProgramBundle builtin_sort();

/// A two-outcome nullary function; the minimal non-confluent program.
ProgramBundle builtin_coin();

/// Text of the corresponding program files (the fixtures ship the same).
const char* builtin_arith_text();
const char* builtin_sort_text();
const char* builtin_coin_text();

}  // namespace polyg
