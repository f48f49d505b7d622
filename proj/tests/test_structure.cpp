#include <doctest.h>

#include "polyg/interp.hpp"
#include "polyg/structure.hpp"

using namespace polyg;

namespace {

// Fusion-sort shaped signature: two sorts, three constructor families,
// three functions.
struct Fixture {
  Program prog;
  SortId nat, list;
  CellId num, nil, cons, sortf, splitf, mergef;
  Interpretation interp;

  Fixture() : interp(make()) {}

  Interpretation make() {
    Signature& sig = prog.sig;
    nat = sig.add_sort("nat");
    list = sig.add_sort("list");
    num = sig.add_constructor("num", {}, nat, true);
    nil = sig.add_constructor("nil", {}, list);
    cons = sig.add_constructor("cons", {nat, list}, list);
    sortf = sig.add_function("sort", {list}, {list});
    splitf = sig.add_function("split", {list}, {list, list});
    mergef = sig.add_function("merge", {list, list}, {list});
    NatExpr i = NatExpr::var(0), j = NatExpr::var(1);
    std::map<CellId, CellInterp> fns;
    fns[sortf] = {{i}, NatExpr(2) * i * i, {"i"}};
    fns[splitf] = {{NatExpr::ceil_div(i, 2), NatExpr::floor_div(i, 2)}, i, {"i"}};
    fns[mergef] = {{i + j}, i + j, {"i", "j"}};
    return Interpretation::build(prog, {{num, 1}, {nil, 1}, {cons, 1}}, fns);
  }

  std::vector<uint64_t> currents(const Diagram& d, std::vector<uint64_t> in) const {
    return eval_current<uint64_t>(prog.sig, d, interp, in);
  }
};

}  // namespace

TEST_CASE("tau_path base cases") {
  Fixture fx;
  Diagram base = tau_path(fx.prog.sig, {fx.nat}, fx.list);
  CHECK(base.node_count() == 1);
  CHECK(base.inputs() == OnePath{fx.nat, fx.list});
  CHECK(base.outputs() == OnePath{fx.list, fx.nat});
  CHECK(base.validate(fx.prog.sig).empty());

  Diagram empty = tau_path(fx.prog.sig, {}, fx.list);
  CHECK(empty.node_count() == 0);
  CHECK(empty.inputs() == OnePath{fx.list});
}

TEST_CASE("tau_path realizes the rotate-last-to-front permutation") {
  Fixture fx;
  // Oracle: the current vector permutation (i,j,k) -> (k,i,j).
  Diagram t = tau_path(fx.prog.sig, {fx.nat, fx.nat}, fx.list);
  CHECK(t.validate(fx.prog.sig).empty());
  for (uint64_t i = 1; i <= 3; ++i)
    for (uint64_t j = 1; j <= 3; ++j)
      for (uint64_t k = 1; k <= 3; ++k)
        CHECK(fx.currents(t, {i, j, k}) == std::vector<uint64_t>{k, i, j});

  Diagram rev = tau_path_rev(fx.prog.sig, fx.list, {fx.nat, fx.nat});
  CHECK(rev.validate(fx.prog.sig).empty());
  for (uint64_t i = 1; i <= 3; ++i)
    CHECK(fx.currents(rev, {9, i, i + 1}) == std::vector<uint64_t>{i, i + 1, 9});
}

TEST_CASE("delta_path duplicates the current block") {
  Fixture fx;
  Diagram d1 = delta_path(fx.prog.sig, {fx.nat});
  CHECK(d1.node_count() == 1);

  Diagram d2 = delta_path(fx.prog.sig, {fx.nat, fx.list});
  CHECK(d2.validate(fx.prog.sig).empty());
  CHECK(cell_count(d2) == 3);  // two copies, one crossing
  for (uint64_t i = 1; i <= 4; ++i)
    for (uint64_t j = 1; j <= 4; ++j)
      CHECK(fx.currents(d2, {i, j}) == std::vector<uint64_t>{i, j, i, j});

  Diagram d3 = delta_path(fx.prog.sig, {fx.nat, fx.nat, fx.list});
  CHECK(d3.validate(fx.prog.sig).empty());
  CHECK(fx.currents(d3, {1, 2, 3}) == std::vector<uint64_t>{1, 2, 3, 1, 2, 3});
}

TEST_CASE("eps_path erases everything") {
  Fixture fx;
  CHECK(eps_path(fx.prog.sig, {}).node_count() == 0);
  Diagram e1 = eps_path(fx.prog.sig, {fx.nat});
  CHECK(e1.node_count() == 1);
  CHECK(e1.outputs().empty());

  Diagram e2 = eps_path(fx.prog.sig, {fx.nat, fx.list});
  std::vector<uint64_t> in{3, 4};
  CHECK(structure_heat<uint64_t>(fx.prog.sig, e2, fx.interp, in) == 7);
}

TEST_CASE("generated structure rule census") {
  Fixture fx;
  auto rules = generate_structure_rules(fx.prog.sig, {fx.nat, fx.list});
  // per constructor: copy + erase + two crossings per sort
  CHECK(rules.size() == 3 * (2 + 2 * 2));
  for (const Rule& r : rules) {
    CHECK(r.kind == RuleKind::Structure);
    CHECK(r.lhs.validate(fx.prog.sig).empty());
    CHECK(r.rhs.validate(fx.prog.sig).empty());
  }
}

TEST_CASE("copy rule for cons has the expected shapes") {
  Fixture fx;
  auto rules = generate_structure_rules(fx.prog.sig, {fx.nat, fx.list});
  const Rule* copy = nullptr;
  const Rule* erase_nil = nullptr;
  for (const Rule& r : rules) {
    if (r.name == "str:cons:copy") copy = &r;
    if (r.name == "str:nil:erase") erase_nil = &r;
  }
  REQUIRE(copy);
  REQUIRE(erase_nil);
  CHECK(cell_count(copy->lhs) == 2);
  CHECK(cell_count(copy->rhs) == 5);  // delta_path([nat,list]) + two cons
  CHECK(cell_count(erase_nil->rhs) == 0);
  CHECK(erase_nil->rhs.outputs().empty());
}

TEST_CASE("structure rules preserve currents and weakly drop heat") {
  Fixture fx;
  GridOptions grid{4, 1};
  auto rules = generate_structure_rules(fx.prog.sig, {fx.nat, fx.list});
  for (const Rule& r : rules) {
    // Current preservation: exact equality on the grid.
    size_t m = r.lhs.inputs().size();
    std::vector<uint64_t> pt(m, grid.lo);
    bool more = true;
    while (more) {
      CHECK(eval_current<uint64_t>(fx.prog.sig, r.lhs, fx.interp, pt) ==
            eval_current<uint64_t>(fx.prog.sig, r.rhs, fx.interp, pt));
      more = false;
      for (size_t i = 0; i < m && !more; ++i)
        if (pt[i] < grid.bound) {
          pt[i]++;
          for (size_t j = 0; j < i; ++j) pt[j] = grid.lo;
          more = true;
        }
    }
    auto rep = check_compatibility(fx.prog.sig, r, fx.interp, grid);
    CHECK(rep.status != Compat::Violation);
  }
}

TEST_CASE("structure heat strictly decreases across structure rules") {
  Fixture fx;
  GridOptions grid{4, 1};
  auto rules = generate_structure_rules(fx.prog.sig, {fx.nat, fx.list});
  for (const Rule& r : rules) {
    size_t m = r.lhs.inputs().size();
    std::vector<uint64_t> pt(m, grid.lo);
    bool more = true;
    while (more) {
      uint64_t lh = structure_heat<uint64_t>(fx.prog.sig, r.lhs, fx.interp, pt);
      uint64_t rh = structure_heat<uint64_t>(fx.prog.sig, r.rhs, fx.interp, pt);
      CHECK(lh > rh);
      more = false;
      for (size_t i = 0; i < m && !more; ++i)
        if (pt[i] < grid.bound) {
          pt[i]++;
          for (size_t j = 0; j < i; ++j) pt[j] = grid.lo;
          more = true;
        }
    }
  }
}

TEST_CASE("structure paths validate with declared boundaries") {
  Fixture fx;
  OnePath xs[] = {{}, {fx.nat}, {fx.nat, fx.list}, {fx.list, fx.list, fx.nat}};
  for (const OnePath& x : xs) {
    Diagram t = tau_path(fx.prog.sig, x, fx.list);
    CHECK(t.validate(fx.prog.sig).empty());
    OnePath want_in = x;
    want_in.push_back(fx.list);
    CHECK(t.inputs() == want_in);

    Diagram d = delta_path(fx.prog.sig, x);
    CHECK(d.validate(fx.prog.sig).empty());
    OnePath xx = x;
    xx.insert(xx.end(), x.begin(), x.end());
    CHECK(d.outputs() == xx);

    Diagram e = eps_path(fx.prog.sig, x);
    CHECK(e.validate(fx.prog.sig).empty());
    CHECK(e.inputs() == x);
    CHECK(e.outputs().empty());
  }
}
