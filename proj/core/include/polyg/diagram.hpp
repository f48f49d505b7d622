#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polyg/signature.hpp"

namespace polyg {

/// One side of a wire. `node == kBound` refers to the diagram boundary:
/// as a producer it is the input boundary, as a consumer the output boundary;
/// `port` is the position there.
struct Attach {
  uint32_t node = 0;
  uint32_t port = 0;
  bool operator==(const Attach&) const = default;
};

inline constexpr uint32_t kBound = 0xffffffffu;

/// A 2-cell instance. Literal-family cells carry either a concrete index or,
/// inside rule diagrams, a schema slot filled in at match time.
struct Node {
  CellId cell = 0;
  std::optional<uint64_t> literal;
  std::optional<uint32_t> literal_var;
};

struct TypeMismatch : Error {
  TypeMismatch(size_t position, const std::string& expected, const std::string& found)
      : Error("type mismatch at position " + std::to_string(position) + ": expected " +
              expected + ", found " + found),
        position(position), expected(expected), found(found) {}
  size_t position;
  std::string expected, found;
};

/// A circuit: an acyclic port graph of 2-cell instances with ordered input
/// and output boundaries. Every port carries exactly one wire. Wires are
/// stored on the consumer side (per node in-port and per diagram output, the
/// producing endpoint). Equality of circuits modulo topological deformation
/// is plain graph identity in this representation; `canonical_form` decides
/// it up to node renumbering.
class Diagram {
 public:
  Diagram() = default;

  static Diagram identity(OnePath sorts);
  static Diagram cell(const Signature& sig, CellId c, std::optional<uint64_t> literal = {},
                      std::optional<uint32_t> literal_var = {});

  const OnePath& inputs() const { return inputs_; }
  const OnePath& outputs() const { return outputs_; }
  size_t node_count() const { return nodes_.size(); }
  const Node& node(uint32_t i) const { return nodes_[i]; }
  std::span<const Attach> node_inputs(uint32_t i) const { return in_[i]; }
  const Attach& output_source(uint32_t k) const { return outsrc_[k]; }

  /// Producer-side sort of an attachment.
  SortId producer_sort(const Signature& sig, const Attach& a) const;

  std::vector<std::string> validate(const Signature& sig) const;

  /// Nodes in a dependency-respecting order (producers first).
  std::vector<uint32_t> topological_order() const;

  /// Deterministic numbering invariant under port-graph isomorphism that
  /// respects boundary order. Boundary-connected parts are numbered by a
  /// traversal seeded from the input then output boundaries; closed
  /// components are numbered afterwards, ordered by their own encodings.
  std::vector<uint32_t> canonical_order(const Signature& sig) const;

  /// Two diagrams get equal strings iff they are isomorphic as
  /// boundary-anchored port graphs.
  std::string canonical_form(const Signature& sig) const;

  struct Consumers {
    std::vector<Attach> of_input;               // per diagram input
    std::vector<std::vector<Attach>> of_node;   // per node, per out-port
  };
  Consumers consumers() const;

  // Builders (pure; `this` is untouched).
  Diagram beside(const Diagram& g) const;                 // parallel composition
  Diagram then(const Diagram& g) const;                   // sequential, outputs feed g

  friend Diagram compose_parallel(const Diagram& f, const Diagram& g) { return f.beside(g); }
  friend Diagram compose_sequential(const Diagram& f, const Diagram& g) { return f.then(g); }

  /// Raw constructor for code that builds graphs directly (engine, tests).
  static Diagram raw(OnePath inputs, OnePath outputs, std::vector<Node> nodes,
                     std::vector<std::vector<Attach>> node_in, std::vector<Attach> out_src);

 private:
  OnePath inputs_, outputs_;
  std::vector<Node> nodes_;
  std::vector<std::vector<Attach>> in_;
  std::vector<Attach> outsrc_;

  std::string component_encoding(const Signature& sig, uint32_t start,
                                 const Consumers& cons) const;
};

inline Diagram identity_diagram(OnePath sorts) { return Diagram::identity(std::move(sorts)); }
inline size_t cell_count(const Diagram& d) { return d.node_count(); }
inline std::vector<std::string> validate(const Diagram& d, const Signature& sig) {
  return d.validate(sig);
}
inline std::string canonical_form(const Diagram& d, const Signature& sig) {
  return d.canonical_form(sig);
}

}  // namespace polyg
