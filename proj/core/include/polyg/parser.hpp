#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polyg/engine.hpp"
#include "polyg/interp.hpp"

namespace polyg {

struct Diagnostic {
  int line = 0, col = 0;
  std::string message;
  std::string str() const {
    return std::to_string(line) + ":" + std::to_string(col) + ": " + message;
  }
};

struct ParseResult {
  std::optional<Program> program;
  std::optional<Interpretation> interp;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return program.has_value() && diagnostics.empty(); }
};

/// Parses the program text format. On success the program carries its
/// computation rules plus the generated structure rules for every
/// constructor. The interpretation is present when the file has interp
/// declarations (they must then cover every function).
ParseResult parse_program(const std::string& text);

ParseResult parse_program_file(const std::string& path);

/// Parses one value term (`cons(2, nil)`, decimal and `[..]`/`"..."` sugar)
/// against an expected sort.
Value parse_value(const Signature& sig, const std::string& text, SortId want);

/// Parses a monotone arithmetic expression over the given parameter names
/// (used for clock polynomials and ad-hoc expressions). Throws Error.
NatExpr parse_expression(const std::string& text, const std::vector<std::string>& params);

}  // namespace polyg
