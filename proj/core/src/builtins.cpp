#include "polyg/builtins.hpp"

#include "polyg/parser.hpp"

namespace polyg {

namespace {

ProgramBundle from_text(const char* text) {
  ParseResult r = parse_program(text);
  if (!r.ok()) {
    std::string msg = "builtin program failed to parse";
    for (const Diagnostic& d : r.diagnostics) msg += "; " + d.str();
    throw Error(msg);
  }
  return {std::move(*r.program), std::move(r.interp)};
}

const char* kArith = R"(polygraph arith

sort nat

constructor zero : -> nat
constructor succ : nat -> nat

function add  : nat nat -> nat
function mult : nat nat -> nat

rule add_zero : add(zero, y) => y
rule add_succ : add(succ(x), y) => succ(add(x, y))
rule mult_zero : mult(x, zero) => let () = erase(x) in zero
rule mult_succ : mult(x, succ(y)) => let (x1, x2) = dup(x) in add(x1, mult(x2, y))

interp add(i, j) : current i + j heat i
interp mult(i, j) : current i*j + j heat (i + 1)*j
)";

const char* kSort = R"(polygraph sort

sort nat
sort list

constructor num  : -> nat literal
constructor nil  : -> list
constructor cons : nat list -> list

function sort  : list -> list
function split : list -> list list
function merge : list list -> list

rule sort_nil    : sort(nil) => nil
rule sort_single : sort(cons(x, nil)) => cons(x, nil)
rule sort_rec    : sort(cons(x, cons(y, l))) =>
                   let (a, b) = split(l) in
                   merge(sort(cons(x, a)), sort(cons(y, b)))

rule split_nil  : split(nil) => (nil, nil)
rule split_cons : split(cons(x, l)) => let (a, b) = split(l) in (cons(x, b), a)

rule merge_nil_left  : merge(nil, l) => l
rule merge_nil_right : merge(l, nil) => l
rule merge_le : merge(cons(#p, l), cons(#q, m)) => cons(#p, merge(l, cons(#q, m))) when p <= q
rule merge_gt : merge(cons(#p, l), cons(#q, m)) => cons(#q, merge(cons(#p, l), m)) when p > q

interp sort(i)     : current i heat 2*i*i
interp split(i)    : current ceil(i/2), floor(i/2) heat i
interp merge(i, j) : current i + j heat i + j
)";

const char* kCoin = R"(polygraph coin

sort nat

constructor zero : -> nat
constructor succ : nat -> nat

function coin : -> nat

rule coin_zero : coin => zero
rule coin_one  : coin => succ(zero)
)";

}  // namespace

ProgramBundle builtin_arith() { return from_text(kArith); }
ProgramBundle builtin_sort() { return from_text(kSort); }
ProgramBundle builtin_coin() { return from_text(kCoin); }

const char* builtin_arith_text() { return kArith; }
const char* builtin_sort_text() { return kSort; }
const char* builtin_coin_text() { return kCoin; }

}  // namespace polyg

