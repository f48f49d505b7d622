#include <doctest.h>

#include <random>

#include "polyg/diagram.hpp"

using namespace polyg;

namespace {

struct Fixture {
  Signature sig;
  SortId nat, list;
  CellId zero, succ, num, nil, cons, twist;

  Fixture() {
    nat = sig.add_sort("nat");
    list = sig.add_sort("list");
    zero = sig.add_constructor("zero", {}, nat);
    succ = sig.add_constructor("succ", {nat}, nat);
    num = sig.add_constructor("num", {}, nat, /*literal_family=*/true);
    nil = sig.add_constructor("nil", {}, list);
    cons = sig.add_constructor("cons", {nat, list}, list);
    twist = sig.add_function("twist", {nat, nat}, {nat, nat});
  }

  Diagram numeral(uint64_t n) const {
    Diagram d = Diagram::cell(sig, zero);
    for (uint64_t i = 0; i < n; ++i) d = d.then(Diagram::cell(sig, succ));
    return d;
  }

  Diagram literal_list(std::initializer_list<uint64_t> xs) const {
    Diagram d = Diagram::cell(sig, nil);
    std::vector<uint64_t> rev(xs);
    for (auto it = rev.rbegin(); it != rev.rend(); ++it)
      d = Diagram::cell(sig, num, *it).beside(d).then(Diagram::cell(sig, cons));
    return d;
  }
};

}  // namespace

TEST_CASE("identity diagrams") {
  Fixture fx;
  Diagram empty = Diagram::identity({});
  CHECK(empty.node_count() == 0);
  CHECK(empty.inputs().empty());
  CHECK(empty.outputs().empty());
  CHECK(empty.validate(fx.sig).empty());

  Diagram one = Diagram::identity({fx.nat});
  CHECK(one.node_count() == 0);
  CHECK(one.validate(fx.sig).empty());
  CHECK(cell_count(one) == 0);
}

TEST_CASE("parallel composition juxtaposes") {
  Fixture fx;
  Diagram a = Diagram::identity({fx.nat});
  Diagram b = Diagram::identity({fx.list});
  Diagram ab = compose_parallel(a, b);
  CHECK(ab.inputs() == OnePath{fx.nat, fx.list});
  CHECK(ab.outputs() == OnePath{fx.nat, fx.list});
  CHECK(ab.validate(fx.sig).empty());

  Diagram pair = compose_parallel(fx.numeral(2), fx.numeral(3));
  CHECK(pair.inputs().empty());
  CHECK(pair.outputs() == OnePath{fx.nat, fx.nat});
  CHECK(cell_count(pair) == 3 + 4);
}

TEST_CASE("cell_count is additive under both compositions") {
  Fixture fx;
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Diagram f = fx.numeral(rng() % 5);
    Diagram g = fx.numeral(rng() % 5);
    size_t cf = cell_count(f), cg = cell_count(g);
    CHECK(cell_count(compose_parallel(f, g)) == cf + cg);
    Diagram chain = f.then(Diagram::cell(fx.sig, fx.succ));
    CHECK(cell_count(chain) == cf + 1);
  }
}

TEST_CASE("sequential composition fuses boundaries") {
  Fixture fx;
  Diagram t2 = fx.numeral(2);
  Diagram s = Diagram::cell(fx.sig, fx.succ);
  Diagram t3 = t2.then(s);
  CHECK(t3.inputs().empty());
  CHECK(t3.outputs() == OnePath{fx.nat});
  CHECK(t3.validate(fx.sig).empty());
  CHECK(cell_count(t3) == 4);

  // Identity is neutral up to canonical form.
  Diagram viaId = t3.then(Diagram::identity({fx.nat}));
  CHECK(viaId.canonical_form(fx.sig) == t3.canonical_form(fx.sig));
}

TEST_CASE("sequential composition rejects boundary mismatches") {
  Fixture fx;
  CHECK_THROWS_AS(Diagram::identity({fx.nat}).then(Diagram::cell(fx.sig, fx.cons)),
                  TypeMismatch);
  CHECK_THROWS_AS(Diagram::identity({fx.list}).then(Diagram::cell(fx.sig, fx.succ)),
                  TypeMismatch);
}

TEST_CASE("numeral and list sizes") {
  Fixture fx;
  for (uint64_t n = 0; n <= 6; ++n) CHECK(cell_count(fx.numeral(n)) == n + 1);
  // two literals, two cons, one nil
  CHECK(cell_count(fx.literal_list({2, 1})) == 5);
}

TEST_CASE("validate flags sort-mismatched wires") {
  Fixture fx;
  // cons fed (nat, nat): second wire has the wrong sort.
  std::vector<Node> nodes{{fx.zero, {}, {}}, {fx.zero, {}, {}}, {fx.cons, {}, {}}};
  std::vector<std::vector<Attach>> in{{}, {}, {{0, 0}, {1, 0}}};
  Diagram bad = Diagram::raw({}, {fx.list}, nodes, in, {{2, 0}});
  auto v = bad.validate(fx.sig);
  REQUIRE(!v.empty());
  bool mentions_sort = false;
  for (const auto& m : v) mentions_sort |= m.find("sort mismatch") != std::string::npos;
  CHECK(mentions_sort);
}

TEST_CASE("validate flags cycles") {
  Fixture fx;
  // twist wired to itself: out0 -> in0, out1 -> in1.
  std::vector<Node> nodes{{fx.twist, {}, {}}};
  std::vector<std::vector<Attach>> in{{{0, 0}, {0, 1}}};
  Diagram cyc = Diagram::raw({}, {}, nodes, in, {});
  auto v = cyc.validate(fx.sig);
  REQUIRE(!v.empty());
  bool mentions_cycle = false;
  for (const auto& m : v) mentions_cycle |= m.find("cycle") != std::string::npos;
  CHECK(mentions_cycle);
}

TEST_CASE("validate flags double-used and dangling ports") {
  Fixture fx;
  // One zero feeding both outputs.
  std::vector<Node> nodes{{fx.zero, {}, {}}};
  Diagram dbl = Diagram::raw({}, {fx.nat, fx.nat}, nodes, {{}}, {{0, 0}, {0, 0}});
  CHECK(!dbl.validate(fx.sig).empty());

  // Literal family cell without index.
  std::vector<Node> nodes2{{fx.num, {}, {}}};
  Diagram noidx = Diagram::raw({}, {fx.nat}, nodes2, {{}}, {{0, 0}});
  CHECK(!noidx.validate(fx.sig).empty());
}

TEST_CASE("interchange: both composition orders name the same circuit") {
  Fixture fx;
  Diagram f = fx.numeral(1);
  Diagram g = fx.numeral(2);
  Diagram f2 = Diagram::cell(fx.sig, fx.succ);
  Diagram g2 = Diagram::cell(fx.sig, fx.succ);

  Diagram lhs = compose_parallel(f, g).then(compose_parallel(f2, g2));
  Diagram rhs = compose_parallel(f.then(f2), g.then(g2));
  CHECK(lhs.canonical_form(fx.sig) == rhs.canonical_form(fx.sig));

  // And with an open diagram around a function cell.
  Diagram tw = Diagram::cell(fx.sig, fx.twist);
  Diagram l2 = compose_parallel(tw, Diagram::identity({fx.list}));
  Diagram a = compose_parallel(Diagram::cell(fx.sig, fx.succ).beside(Diagram::cell(fx.sig, fx.succ)),
                               Diagram::identity({fx.list}));
  Diagram one = l2.then(a);
  Diagram two = compose_parallel(tw.then(Diagram::cell(fx.sig, fx.succ).beside(Diagram::cell(fx.sig, fx.succ))),
                                 Diagram::identity({fx.list}));
  CHECK(one.canonical_form(fx.sig) == two.canonical_form(fx.sig));
}

TEST_CASE("canonical form is deterministic and boundary-sensitive") {
  Fixture fx;
  Diagram d = fx.literal_list({3, 1, 2});
  CHECK(d.canonical_form(fx.sig) == d.canonical_form(fx.sig));

  Diagram ab = compose_parallel(fx.numeral(0), fx.numeral(1));
  Diagram ba = compose_parallel(fx.numeral(1), fx.numeral(0));
  CHECK(ab.canonical_form(fx.sig) != ba.canonical_form(fx.sig));

  // Literal index distinguishes diagrams.
  Diagram l1 = fx.literal_list({1});
  Diagram l2 = fx.literal_list({2});
  CHECK(l1.canonical_form(fx.sig) != l2.canonical_form(fx.sig));
}

TEST_CASE("canonical form equates different build orders of one value") {
  Fixture fx;
  // cons(2, cons(1, nil)) assembled outside-in vs inside-out.
  Diagram inner = Diagram::cell(fx.sig, fx.num, 1).beside(Diagram::cell(fx.sig, fx.nil))
                      .then(Diagram::cell(fx.sig, fx.cons));
  Diagram whole1 = Diagram::cell(fx.sig, fx.num, 2).beside(inner).then(Diagram::cell(fx.sig, fx.cons));

  Diagram top = Diagram::cell(fx.sig, fx.num, 2).beside(Diagram::cell(fx.sig, fx.num, 1));
  Diagram mid = top.beside(Diagram::cell(fx.sig, fx.nil));
  Diagram whole2 = mid.then(Diagram::identity({fx.nat}).beside(Diagram::cell(fx.sig, fx.cons)))
                       .then(Diagram::cell(fx.sig, fx.cons));
  CHECK(whole1.canonical_form(fx.sig) == whole2.canonical_form(fx.sig));
  CHECK(whole1.canonical_form(fx.sig) == fx.literal_list({2, 1}).canonical_form(fx.sig));
}

TEST_CASE("closed components are ordered deterministically") {
  Fixture fx;
  // Two erased numerals next to a live one, assembled in both orders.
  auto erased = [&](uint64_t n) {
    return fx.numeral(n).then(Diagram::cell(fx.sig, fx.sig.eps(fx.nat)));
  };
  Diagram live = fx.numeral(1);
  Diagram d1 = erased(2).beside(erased(4)).beside(live);
  Diagram d2 = erased(4).beside(erased(2)).beside(live);
  CHECK(d1.validate(fx.sig).empty());
  CHECK(d1.canonical_form(fx.sig) == d2.canonical_form(fx.sig));
}
