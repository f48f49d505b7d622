#include "polyg/value.hpp"

namespace polyg {

uint64_t value_cells(const Value& v) {
  uint64_t n = 1;
  for (const Value& c : v.children) n += value_cells(c);
  return n;
}

namespace {

Value decode_tree(const Signature& sig, const Diagram& d, const Attach& a) {
  if (a.node == kBound) throw NotAValue("value has a free input wire");
  const Node& nd = d.node(a.node);
  const TwoCell& c = sig.cell(nd.cell);
  if (c.kind != CellKind::Constructor)
    throw NotAValue("normal form still contains " + c.name + " (not a constructor)");
  if (nd.literal_var) throw NotAValue("unresolved literal schema slot in value");
  Value v{nd.cell, nd.literal, {}};
  for (const Attach& in : d.node_inputs(a.node)) v.children.push_back(decode_tree(sig, d, in));
  return v;
}

}  // namespace

std::vector<Value> decode_values(const Signature& sig, const Diagram& d) {
  if (!d.inputs().empty()) throw NotAValue("diagram is not closed");
  std::vector<Value> out;
  out.reserve(d.outputs().size());
  for (uint32_t k = 0; k < d.outputs().size(); ++k)
    out.push_back(decode_tree(sig, d, d.output_source(k)));
  // Nodes not feeding any output (erased residue) make this not a clean
  // value family.
  uint64_t counted = 0;
  for (const Value& v : out) counted += value_cells(v);
  if (counted != d.node_count()) throw NotAValue("diagram has erased residue next to the result");
  return out;
}

Diagram value_diagram(const Signature& sig, const Value& v) {
  Diagram args = Diagram::identity({});
  for (const Value& c : v.children) args = args.beside(value_diagram(sig, c));
  return args.then(Diagram::cell(sig, v.root, v.literal));
}

Diagram values_diagram(const Signature& sig, std::span<const Value> vs) {
  Diagram d = Diagram::identity({});
  for (const Value& v : vs) d = d.beside(value_diagram(sig, v));
  return d;
}

int value_compare(const Value& a, const Value& b) {
  uint64_t ca = value_cells(a), cb = value_cells(b);
  if (ca != cb) return ca < cb ? -1 : 1;
  if (a.root != b.root) return a.root < b.root ? -1 : 1;
  if (a.literal != b.literal) return a.literal < b.literal ? -1 : 1;
  if (a.children.size() != b.children.size())
    return a.children.size() < b.children.size() ? -1 : 1;
  for (size_t i = 0; i < a.children.size(); ++i)
    if (int c = value_compare(a.children[i], b.children[i]); c != 0) return c;
  return 0;
}

int value_tuple_compare(std::span<const Value> a, std::span<const Value> b) {
  if (a.size() != b.size())
    throw TypeMismatch(std::min(a.size(), b.size()), std::to_string(a.size()) + " values",
                       std::to_string(b.size()) + " values");
  for (size_t i = 0; i < a.size(); ++i)
    if (int c = value_compare(a[i], b[i]); c != 0) return c;
  return 0;
}

}  // namespace polyg
