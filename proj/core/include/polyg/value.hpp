#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polyg/diagram.hpp"

namespace polyg {

struct NotAValue : Error {
  using Error::Error;
};

/// A closed constructor tree (one output of a value diagram).
struct Value {
  CellId root = 0;
  std::optional<uint64_t> literal;
  std::vector<Value> children;

  bool operator==(const Value&) const = default;
};

/// Number of constructor cells in the tree.
uint64_t value_cells(const Value& v);

/// Decodes a closed all-constructor diagram into one tree per output.
/// Throws NotAValue if the diagram has inputs or non-constructor nodes.
std::vector<Value> decode_values(const Signature& sig, const Diagram& d);

/// Rebuilds the diagram of a value (no inputs, one output).
Diagram value_diagram(const Signature& sig, const Value& v);

/// Juxtaposition of several values as one diagram.
Diagram values_diagram(const Signature& sig, std::span<const Value> vs);

/// Total order on values of one sort: smaller cell count first, then root
/// constructor by declaration index (literal roots by index), then children
/// left to right. Returns <0, 0, >0.
int value_compare(const Value& a, const Value& b);

/// Lexicographic lift to tuples; both sides must have equal length.
int value_tuple_compare(std::span<const Value> a, std::span<const Value> b);

}  // namespace polyg
