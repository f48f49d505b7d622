#include "polyg/signature.hpp"

namespace polyg {

CellId Signature::add_cell(TwoCell c) {
  if (cell_by_name_.count(c.name))
    throw Error("duplicate 2-cell name: " + c.name);
  CellId id = static_cast<CellId>(cells_.size());
  cell_by_name_.emplace(c.name, id);
  cells_.push_back(std::move(c));
  return id;
}

SortId Signature::add_sort(const std::string& name) {
  if (sort_by_name_.count(name)) throw Error("duplicate sort name: " + name);
  SortId id = static_cast<SortId>(sorts_.size());
  sorts_.push_back(name);
  sort_by_name_.emplace(name, id);

  // Structure cells for the new sort. Names use ':' so they cannot collide
  // with user identifiers.
  delta_.push_back(add_cell({"delta:" + name, {id}, {id, id}, CellKind::Delta, false}));
  eps_.push_back(add_cell({"eps:" + name, {id}, {}, CellKind::Eps, false}));
  for (SortId other = 0; other <= id; ++other) {
    const std::string& on = sorts_[other];
    tau_[(uint64_t(id) << 32) | other] =
        add_cell({"tau:" + name + "," + on, {id, other}, {other, id}, CellKind::Tau, false});
    if (other != id)
      tau_[(uint64_t(other) << 32) | id] =
          add_cell({"tau:" + on + "," + name, {other, id}, {id, other}, CellKind::Tau, false});
  }
  return id;
}

CellId Signature::add_constructor(const std::string& name, OnePath source, SortId target,
                                  bool literal_family) {
  if (literal_family && !source.empty())
    throw Error("literal constructor family must be nullary: " + name);
  return add_cell({name, std::move(source), {target}, CellKind::Constructor, literal_family});
}

CellId Signature::add_function(const std::string& name, OnePath source, OnePath target) {
  return add_cell({name, std::move(source), std::move(target), CellKind::Function, false});
}

std::optional<SortId> Signature::find_sort(const std::string& name) const {
  auto it = sort_by_name_.find(name);
  if (it == sort_by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<CellId> Signature::find_cell(const std::string& name) const {
  auto it = cell_by_name_.find(name);
  if (it == cell_by_name_.end()) return std::nullopt;
  return it->second;
}

CellId Signature::tau(SortId a, SortId b) const {
  auto it = tau_.find((uint64_t(a) << 32) | b);
  if (it == tau_.end()) throw Error("unknown sort pair in tau lookup");
  return it->second;
}

CellId Signature::delta(SortId a) const { return delta_.at(a); }
CellId Signature::eps(SortId a) const { return eps_.at(a); }

std::string Signature::path_str(const OnePath& p) const {
  if (p.empty()) return "*";
  std::string s;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += " ";
    s += sort_name(p[i]);
  }
  return s;
}

}  // namespace polyg
