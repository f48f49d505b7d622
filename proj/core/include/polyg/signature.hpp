#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace polyg {

using SortId = uint32_t;
using CellId = uint32_t;

/// A product type: an ordered list of sorts. The empty list is the unit.
using OnePath = std::vector<SortId>;

enum class CellKind : uint8_t {
  Constructor,  // exactly one output wire
  Function,
  Tau,    // wire crossing, [a,b] => [b,a]
  Delta,  // duplication,   [a]   => [a,a]
  Eps,    // erasure,       [a]   => []
};

inline bool is_structure(CellKind k) {
  return k == CellKind::Tau || k == CellKind::Delta || k == CellKind::Eps;
}

struct TwoCell {
  std::string name;
  OnePath source;
  OnePath target;
  CellKind kind = CellKind::Function;
  // A family of nullary constructors indexed by a natural number (one cell
  // standing for infinitely many); instances carry the index.
  bool literal_family = false;
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The cell alphabet: sorts plus constructor/function/structure 2-cells.
/// Structure cells (tau per sort pair, delta and eps per sort) are created
/// eagerly when sorts are added, so a built signature is immutable-by-use.
class Signature {
 public:
  SortId add_sort(const std::string& name);
  CellId add_constructor(const std::string& name, OnePath source, SortId target,
                         bool literal_family = false);
  CellId add_function(const std::string& name, OnePath source, OnePath target);

  size_t sort_count() const { return sorts_.size(); }
  size_t cell_count() const { return cells_.size(); }

  const std::string& sort_name(SortId s) const { return sorts_.at(s); }
  const TwoCell& cell(CellId c) const { return cells_.at(c); }

  std::optional<SortId> find_sort(const std::string& name) const;
  std::optional<CellId> find_cell(const std::string& name) const;

  CellId tau(SortId a, SortId b) const;
  CellId delta(SortId a) const;
  CellId eps(SortId a) const;

  std::string path_str(const OnePath& p) const;

 private:
  std::vector<std::string> sorts_;
  std::vector<TwoCell> cells_;
  std::unordered_map<std::string, SortId> sort_by_name_;
  std::unordered_map<std::string, CellId> cell_by_name_;
  std::unordered_map<uint64_t, CellId> tau_;  // key a*2^32+b
  std::vector<CellId> delta_, eps_;           // indexed by sort

  CellId add_cell(TwoCell c);
};

}  // namespace polyg
