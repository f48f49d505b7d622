#pragma once

#include <optional>
#include <string>

#include "polyg/interp.hpp"
#include "polyg/value.hpp"

namespace polyg {

/// Renders a program (and its interpretation, when given) back into the text
/// format. Generated structure rules are omitted; they are re-derived on
/// parse. parse(print(parse(t))) gives the same abstract program as parse(t).
std::string print_program(const Program& p, const Interpretation* interp = nullptr);

/// Value with the numeric / list / word sugar applied when the signature
/// supports it.
std::string print_value(const Signature& sig, const Value& v);

std::string print_values(const Signature& sig, std::span<const Value> vs);

}  // namespace polyg
