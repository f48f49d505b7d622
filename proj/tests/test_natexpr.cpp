#include <doctest.h>

#include <random>

#include "polyg/natexpr.hpp"

using namespace polyg;

namespace {
const NatExpr x = NatExpr::var(0);
const NatExpr y = NatExpr::var(1);
}  // namespace

TEST_CASE("evaluation") {
  NatExpr e = NatExpr(2) * x * x + y + NatExpr(1);
  std::vector<uint64_t> args{3, 4};
  CHECK(e.eval(args) == 23);
  args = {0, 0};
  CHECK(e.eval(args) == 1);

  NatExpr d = NatExpr::ceil_div(x, 2) + NatExpr::floor_div(x, 3);
  args = {7, 0};
  CHECK(d.eval(args) == 4 + 2);

  NatExpr m = NatExpr::max_of(x, y + NatExpr(1));
  args = {5, 3};
  CHECK(m.eval(args) == 5);
  args = {2, 3};
  CHECK(m.eval(args) == 4);
}

TEST_CASE("commutative normalization") {
  CHECK((x + y).equivalent(y + x));
  CHECK((x * y).equivalent(y * x));
  CHECK(((x + y) * (x + y)).equivalent(x * x + NatExpr(2) * x * y + y * y));
  CHECK(!(x + y).equivalent(x * y));
  CHECK((x + NatExpr(0)).equivalent(x));
  CHECK((x * NatExpr(1)).equivalent(x));
  CHECK((x * NatExpr(0)).equivalent(NatExpr(uint64_t{0})));
  CHECK(NatExpr(NatExpr(2) + NatExpr(3)).equivalent(NatExpr(5)));
}

TEST_CASE("rounding pair fuses to the plain sum") {
  NatExpr split_sum = NatExpr::ceil_div(x, 2) + NatExpr::floor_div(x, 2);
  CHECK(split_sum.equivalent(x));
  // and scaled copies fuse too
  NatExpr scaled = NatExpr(3) * NatExpr::ceil_div(x, 2) + NatExpr(3) * NatExpr::floor_div(x, 2);
  CHECK(scaled.normalized().same_tree((NatExpr(3) * x).normalized()));
  // but mismatched divisors stay put
  NatExpr mixed = NatExpr::ceil_div(x, 2) + NatExpr::floor_div(x, 3);
  CHECK(!mixed.equivalent(x));
}

TEST_CASE("division simplifications") {
  CHECK(NatExpr::ceil_div(x, 1).equivalent(x));
  CHECK(NatExpr::floor_div(x, 1).equivalent(x));
  CHECK(NatExpr::ceil_div(NatExpr(7), 2).equivalent(NatExpr(4)));
  CHECK(NatExpr::floor_div(NatExpr(7), 2).equivalent(NatExpr(3)));
}

TEST_CASE("max simplifications") {
  CHECK(NatExpr::max_of(x + y, y + x).equivalent(x + y));
  CHECK(NatExpr::max_of(NatExpr(3), NatExpr(5)).equivalent(NatExpr(5)));
  CHECK(NatExpr::max_of(x, y).equivalent(NatExpr::max_of(y, x)));
}

TEST_CASE("substitution matches evaluation") {
  NatExpr e = NatExpr(2) * x * x + NatExpr::ceil_div(y, 2);
  std::vector<NatExpr> subs{x + y, NatExpr(4)};
  NatExpr s = e.substitute(subs);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    std::vector<uint64_t> pt{rng() % 10, rng() % 10};
    std::vector<uint64_t> inner{pt[0] + pt[1], 4};
    CHECK(s.eval(pt) == e.eval(inner));
  }
}

TEST_CASE("normalization preserves meaning") {
  std::mt19937_64 rng(23);
  auto random_expr = [&](auto&& self, int depth) -> NatExpr {
    switch (rng() % (depth > 2 ? 3 : 7)) {
      case 0: return NatExpr(rng() % 5);
      case 1: return NatExpr::var(rng() % 2);
      case 2: return NatExpr(rng() % 3);
      case 3: return self(self, depth + 1) + self(self, depth + 1);
      case 4: return self(self, depth + 1) * self(self, depth + 1);
      case 5: return NatExpr::max_of(self(self, depth + 1), self(self, depth + 1));
      default: return NatExpr::ceil_div(self(self, depth + 1), 1 + rng() % 3);
    }
  };
  for (int t = 0; t < 200; ++t) {
    NatExpr e = random_expr(random_expr, 0);
    NatExpr n = e.normalized();
    for (int s = 0; s < 5; ++s) {
      std::vector<uint64_t> pt{rng() % 8, rng() % 8};
      CHECK(e.eval(pt) == n.eval(pt));
    }
  }
}

TEST_CASE("monotonicity of the expression language") {
  std::mt19937_64 rng(5);
  NatExpr e = NatExpr(2) * x * y + NatExpr::max_of(x, NatExpr::floor_div(y, 2)) +
              NatExpr::ceil_div(x + y, 3);
  for (int t = 0; t < 100; ++t) {
    uint64_t a = rng() % 20, b = rng() % 20;
    std::vector<uint64_t> lo{a, b}, hi{a + rng() % 5, b + rng() % 5};
    CHECK(e.eval(lo) <= e.eval(hi));
  }
}

TEST_CASE("printing uses the canonical form") {
  std::vector<std::string> names{"x", "y"};
  CHECK((NatExpr::ceil_div(x, 2) + NatExpr::floor_div(x, 2)).str(names) == "x");
  CHECK((x + x).str(names) == "2*x");
  CHECK((NatExpr(2) * x * x).str(names) == "2*x*x");
  CHECK(NatExpr(uint64_t{0}).str(names) == "0");
  CHECK((y * x).str(names) == "x*y");
}
