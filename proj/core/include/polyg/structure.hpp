#pragma once

#include "polyg/rule.hpp"

namespace polyg {

/// Swap circuit moving the last wire to the front: [x..., z] => [z, x...].
/// Built inductively from single tau cells.
Diagram tau_path(const Signature& sig, const OnePath& x, SortId z);

/// Mirror swap moving the first wire to the back: [z, x...] => [x..., z].
Diagram tau_path_rev(const Signature& sig, SortId z, const OnePath& x);

/// Copy circuit: x => x ++ x, duplicating the whole block in order.
Diagram delta_path(const Signature& sig, const OnePath& x);

/// Erase circuit: x => [], one eps per wire.
Diagram eps_path(const Signature& sig, const OnePath& x);

/// The structure rules for every constructor: a copy rule, an erase rule,
/// and for every sort in `used_sorts` both crossing rules (constructor
/// sliding right over a wire and left under one). Literal constructor
/// families yield one schematic rule carrying the index through.
std::vector<Rule> generate_structure_rules(const Signature& sig,
                                           const std::vector<SortId>& used_sorts);

}  // namespace polyg
