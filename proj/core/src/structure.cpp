#include "polyg/structure.hpp"

namespace polyg {

Diagram tau_path(const Signature& sig, const OnePath& x, SortId z) {
  if (x.empty()) return Diagram::identity({z});
  SortId head = x.front();
  OnePath rest(x.begin() + 1, x.end());
  // [head, rest, z] => [head, z, rest] => [z, head, rest]
  Diagram lower = Diagram::identity({head}).beside(tau_path(sig, rest, z));
  Diagram upper = Diagram::cell(sig, sig.tau(head, z)).beside(Diagram::identity(rest));
  return lower.then(upper);
}

Diagram tau_path_rev(const Signature& sig, SortId z, const OnePath& x) {
  if (x.empty()) return Diagram::identity({z});
  SortId head = x.front();
  OnePath rest(x.begin() + 1, x.end());
  // [z, head, rest] => [head, z, rest] => [head, rest, z]
  Diagram first = Diagram::cell(sig, sig.tau(z, head)).beside(Diagram::identity(rest));
  Diagram lower = Diagram::identity({head}).beside(tau_path_rev(sig, z, rest));
  return first.then(lower);
}

Diagram delta_path(const Signature& sig, const OnePath& x) {
  if (x.empty()) return Diagram::identity({});
  SortId head = x.front();
  OnePath rest(x.begin() + 1, x.end());
  if (rest.empty()) return Diagram::cell(sig, sig.delta(head));
  // [head, rest] => [head, head, rest, rest] => [head, rest, head, rest]
  Diagram copies = Diagram::cell(sig, sig.delta(head)).beside(delta_path(sig, rest));
  Diagram route = Diagram::identity({head})
                      .beside(tau_path_rev(sig, head, rest))
                      .beside(Diagram::identity(rest));
  return copies.then(route);
}

Diagram eps_path(const Signature& sig, const OnePath& x) {
  Diagram d = Diagram::identity({});
  for (SortId s : x) d = d.beside(Diagram::cell(sig, sig.eps(s)));
  return d;
}

namespace {

Diagram ctor_cell(const Signature& sig, CellId c) {
  if (sig.cell(c).literal_family) return Diagram::cell(sig, c, std::nullopt, 0u);
  return Diagram::cell(sig, c);
}

Rule make_rule(const Signature& sig, std::string name, Diagram lhs, Diagram rhs,
               bool schematic) {
  Rule r;
  r.name = std::move(name);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.kind = RuleKind::Structure;
  r.schema_slots = schematic ? 1 : 0;
  if (schematic) r.slot_names = {"n"};
  auto bad = finalize_rule(sig, r);
  if (!bad.empty()) throw Error("generated structure rule is ill-formed: " + bad.front());
  return r;
}

}  // namespace

std::vector<Rule> generate_structure_rules(const Signature& sig,
                                           const std::vector<SortId>& used_sorts) {
  std::vector<Rule> rules;
  for (CellId c = 0; c < sig.cell_count(); ++c) {
    const TwoCell& tc = sig.cell(c);
    if (tc.kind != CellKind::Constructor) continue;
    const OnePath& x = tc.source;
    SortId out = tc.target[0];
    bool lit = tc.literal_family;

    // Copy: constructor into delta becomes copies of the constructor over a
    // copy of its arguments.
    rules.push_back(make_rule(
        sig, "str:" + tc.name + ":copy",
        ctor_cell(sig, c).then(Diagram::cell(sig, sig.delta(out))),
        delta_path(sig, x).then(ctor_cell(sig, c).beside(ctor_cell(sig, c))), lit));

    // Erase: constructor into eps erases the arguments.
    rules.push_back(make_rule(sig, "str:" + tc.name + ":erase",
                              ctor_cell(sig, c).then(Diagram::cell(sig, sig.eps(out))),
                              eps_path(sig, x), lit));

    for (SortId z : used_sorts) {
      const std::string& zn = sig.sort_name(z);
      // Constructor output crossing rightward over a z wire.
      rules.push_back(make_rule(
          sig, "str:" + tc.name + ":over:" + zn,
          ctor_cell(sig, c).beside(Diagram::identity({z})).then(Diagram::cell(sig, sig.tau(out, z))),
          tau_path(sig, x, z).then(Diagram::identity({z}).beside(ctor_cell(sig, c))), lit));
      // And leftward under one.
      rules.push_back(make_rule(
          sig, "str:" + tc.name + ":under:" + zn,
          Diagram::identity({z}).beside(ctor_cell(sig, c)).then(Diagram::cell(sig, sig.tau(z, out))),
          tau_path_rev(sig, z, x).then(ctor_cell(sig, c).beside(Diagram::identity({z}))), lit));
    }
  }
  return rules;
}

}  // namespace polyg
