#include "qbforge/gadgets.hpp"

#include <algorithm>

namespace qbforge {
namespace {

std::vector<Variable> dedupe_interface(std::initializer_list<Variable> vars) {
  std::vector<Variable> out;
  for (Variable v : vars)
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

void append_gadget(GadgetInstance& parent, const GadgetInstance& sub) {
  parent.clauses.insert(parent.clauses.end(), sub.clauses.begin(), sub.clauses.end());
  parent.fresh_existentials.insert(parent.fresh_existentials.end(), sub.fresh_existentials.begin(),
                                   sub.fresh_existentials.end());
  parent.fresh_universals.insert(parent.fresh_universals.end(), sub.fresh_universals.begin(),
                                 sub.fresh_universals.end());
}

bool literal_value(Literal l, const Assignment& a) {
  bool v = a.at(l.var);
  return l.negated ? !v : v;
}

}  // namespace

GadgetInstance build_S(Literal l1, Literal l2, Literal l3, VariableAllocator& alloc) {
  GadgetInstance g;
  g.name = "S";
  const Variable a = alloc.fresh(), b = alloc.fresh(), c = alloc.fresh();
  g.fresh_existentials = {a, b, c};
  g.interface = dedupe_interface({l1.var, l2.var, l3.var});
  g.clauses = {
      Clause{l1, neg(a), pos(b)}, Clause{l2, neg(b), pos(c)},      Clause{l3, pos(a), neg(c)},
      Clause{pos(a), pos(b), pos(c)}, Clause{neg(a), neg(b), neg(c)},
  };
  g.contract.semantics = Semantics::sat;
  g.contract.claim = "extension exists iff some interface literal is true";
  g.contract.admits = [l1, l2, l3](const Assignment& iface) {
    return literal_value(l1, iface) || literal_value(l2, iface) || literal_value(l3, iface);
  };
  // The three internals admit a tiny exhaustive completion.
  g.complete = [clauses = g.clauses, a, b, c](const Assignment& fixed) {
    for (int bits = 0; bits < 8; ++bits) {
      Assignment full = fixed;
      full.set(a, bits & 1);
      full.set(b, bits & 2);
      full.set(c, bits & 4);
      if (evaluate_matrix(clauses, full, Semantics::sat)) {
        Assignment out;
        out.set(a, bits & 1);
        out.set(b, bits & 2);
        out.set(c, bits & 4);
        return out;
      }
    }
    throw PreconditionError("S-enforcer completion requested for an inadmissible interface");
  };
  return g;
}

GadgetInstance build_S_universal(Literal l1, Literal l2, Literal l3, VariableAllocator& alloc) {
  GadgetInstance g = build_S(l1, l2, l3, alloc);
  g.name = "S_u";
  g.universal_ok = {l1.var};  // first slot tolerates a universal variable
  return g;
}

GadgetInstance build_x2(Variable x, VariableAllocator& alloc) {
  GadgetInstance g;
  g.name = "x2";
  const Variable y = alloc.fresh();
  g.fresh_existentials = {y};
  g.interface = {x};
  GadgetInstance s1 = build_S(pos(x), pos(y), pos(y), alloc);
  GadgetInstance s2 = build_S(pos(x), neg(y), neg(y), alloc);
  append_gadget(g, s1);
  append_gadget(g, s2);
  g.contract.semantics = Semantics::sat;
  g.contract.claim = "extension exists iff x is true";
  g.contract.admits = [x](const Assignment& iface) { return iface.at(x); };
  g.complete = [y, s1c = s1.complete, s2c = s2.complete](const Assignment& fixed) {
    Assignment out;
    out.set(y, true);
    Assignment known = fixed;
    known.merge(out);
    out.merge(s1c(known));
    out.merge(s2c(known));
    return out;
  };
  return g;
}

GadgetInstance build_E(Variable x, VariableAllocator& alloc) {
  GadgetInstance g;
  g.name = "E";
  const Variable y = alloc.fresh(), z = alloc.fresh(), u = alloc.fresh();
  g.fresh_existentials = {y, z, u};
  g.interface = {x};
  GadgetInstance s1 = build_S(pos(x), pos(y), pos(y), alloc);
  GadgetInstance s2 = build_S(pos(x), neg(y), neg(y), alloc);
  GadgetInstance s3 = build_S(neg(x), pos(z), neg(z), alloc);
  GadgetInstance s4 = build_S(pos(z), neg(z), pos(u), alloc);
  GadgetInstance s5 = build_S(pos(u), neg(u), neg(u), alloc);
  for (const auto& s : {s1, s2, s3, s4, s5}) append_gadget(g, s);
  g.contract.semantics = Semantics::sat;
  g.contract.claim = "extension exists iff the enforcer variable is true";
  g.contract.admits = [x](const Assignment& iface) { return iface.at(x); };
  g.complete = [y, z, u, c1 = s1.complete, c2 = s2.complete, c3 = s3.complete, c4 = s4.complete,
                c5 = s5.complete](const Assignment& fixed) {
    Assignment out;
    out.set(y, true);
    out.set(z, true);
    out.set(u, true);
    Assignment known = fixed;
    known.merge(out);
    for (const auto& complete_s : {c1, c2, c3, c4, c5}) out.merge(complete_s(known));
    return out;
  };
  return g;
}

GadgetInstance build_Q1(VariableAllocator& alloc) {
  GadgetInstance g;
  g.name = "Q1";
  const Variable u = alloc.fresh(), v = alloc.fresh(), w = alloc.fresh(), q = alloc.fresh(),
                 r = alloc.fresh();
  const Variable a = alloc.fresh(), b = alloc.fresh(), c = alloc.fresh(), d = alloc.fresh();
  g.fresh_universals = {u, v, w, q, r};
  g.fresh_existentials = {a, b, c, d};
  g.clauses = {
      Clause{pos(u), pos(v), pos(a)}, Clause{pos(u), pos(v), pos(b)},
      Clause{neg(u), neg(v), neg(a)}, Clause{neg(u), neg(v), neg(b)},
      Clause{pos(a), neg(b), pos(r)}, Clause{neg(a), pos(b), pos(r)},
      Clause{pos(c), neg(d), neg(r)}, Clause{neg(c), pos(d), neg(r)},
      Clause{pos(w), pos(q), pos(c)}, Clause{pos(w), pos(q), pos(d)},
      Clause{neg(w), neg(q), neg(c)}, Clause{neg(w), neg(q), neg(d)},
  };
  g.contract.semantics = Semantics::sat;
  g.contract.claim = "every universal assignment extends to a satisfying assignment";
  g.contract.admits = [](const Assignment&) { return true; };
  g.complete = [u, w, a, b, c, d](const Assignment& fixed) {
    Assignment out;
    out.set(a, !fixed.at(u));
    out.set(b, !fixed.at(u));
    out.set(c, !fixed.at(w));
    out.set(d, !fixed.at(w));
    return out;
  };
  return g;
}

GadgetInstance build_Q3(VariableAllocator& alloc) {
  GadgetInstance g;
  g.name = "Q3";
  const Variable u = alloc.fresh(), v = alloc.fresh(), w = alloc.fresh(), q = alloc.fresh(),
                 r = alloc.fresh();
  const Variable a = alloc.fresh(), b = alloc.fresh();
  g.fresh_universals = {u, v, w, q, r};
  g.fresh_existentials = {a, b};
  g.clauses = {
      Clause{pos(u), pos(r), pos(a)}, Clause{neg(u), neg(b), neg(a)}, Clause{pos(v), pos(q), pos(b)},
      Clause{neg(v), neg(r), neg(a)}, Clause{pos(w), pos(a), pos(b)}, Clause{neg(w), neg(q), neg(b)},
  };
  g.contract.semantics = Semantics::sat;
  g.contract.claim = "every universal assignment extends to a satisfying assignment";
  g.contract.admits = [](const Assignment&) { return true; };
  g.complete = [u, w, q, r, a, b](const Assignment& fixed) {
    Assignment out;
    out.set(a, !fixed.at(u) && !fixed.at(r));
    out.set(b, !fixed.at(w) || !fixed.at(q));
    return out;
  };
  return g;
}

GadgetInstance build_E_forall(Variable d, VariableAllocator& alloc) {
  GadgetInstance g;
  g.name = "E_forall";
  const Variable u = alloc.fresh(), v = alloc.fresh();
  g.fresh_universals = {u, v};
  g.interface = {d};
  g.clauses = {Clause{pos(d), pos(u), pos(v)}, Clause{pos(d), neg(u), neg(v)}};
  g.contract.semantics = Semantics::sat;
  g.contract.claim = "satisfied for every fresh-universal assignment iff d is true";
  g.contract.admits = [d](const Assignment& iface) { return iface.at(d); };
  return g;
}

GadgetInstance build_NE_aux(Variable x, Variable y, VariableAllocator& alloc) {
  GadgetInstance g;
  g.name = "NE_aux";
  const Variable a = alloc.fresh(), b = alloc.fresh(), u = alloc.fresh(), v = alloc.fresh(),
                 w = alloc.fresh();
  g.fresh_existentials = {a, b, u, v, w};
  g.interface = {x, y};
  g.universal_ok = {x};
  g.clauses = {
      Clause{pos(x), pos(y), pos(a)}, Clause{pos(x), pos(y), pos(b)}, Clause{pos(a), pos(b), pos(u)},
      Clause{pos(a), pos(b), pos(v)}, Clause{pos(a), pos(b), pos(w)}, Clause{pos(u), pos(v), pos(w)},
  };
  g.contract.semantics = Semantics::nae;
  g.contract.claim = "extension nae-satisfies iff x != y";
  g.contract.admits = [x, y](const Assignment& iface) { return iface.at(x) != iface.at(y); };
  g.complete = [a, b, u, v, w](const Assignment&) {
    Assignment out;
    out.set(a, true);
    out.set(b, false);
    out.set(u, true);
    out.set(v, false);
    out.set(w, false);
    return out;
  };
  return g;
}

GadgetInstance build_EQ(Variable x, Variable y, VariableAllocator& alloc) {
  GadgetInstance g;
  g.name = "EQ";
  const Variable p = alloc.fresh(), q = alloc.fresh(), r = alloc.fresh();
  g.fresh_existentials = {p, q, r};
  g.interface = {x, y};
  g.universal_ok = {x};
  GadgetInstance n1 = build_NE_aux(p, q, alloc);
  GadgetInstance n2 = build_NE_aux(p, r, alloc);
  append_gadget(g, n1);
  append_gadget(g, n2);
  g.clauses.push_back(Clause{pos(x), pos(q), pos(r)});
  g.clauses.push_back(Clause{pos(y), pos(q), pos(r)});
  g.contract.semantics = Semantics::nae;
  g.contract.claim = "extension nae-satisfies iff x = y";
  g.contract.admits = [x, y](const Assignment& iface) { return iface.at(x) == iface.at(y); };
  g.complete = [x, p, q, r, c1 = n1.complete, c2 = n2.complete](const Assignment& fixed) {
    const bool value = fixed.at(x);
    Assignment out;
    out.set(p, value);
    out.set(q, !value);
    out.set(r, !value);
    Assignment known = fixed;
    known.merge(out);
    out.merge(c1(known));
    out.merge(c2(known));
    return out;
  };
  return g;
}

GadgetInstance build_NE(Variable x, Variable y, VariableAllocator& alloc) {
  GadgetInstance g;
  g.name = "NE";
  const Variable p = alloc.fresh(), q = alloc.fresh();
  g.fresh_existentials = {p, q};
  g.interface = {x, y};
  g.universal_ok = {x};
  GadgetInstance e1 = build_EQ(x, p, alloc);
  GadgetInstance e2 = build_EQ(y, q, alloc);
  GadgetInstance n = build_NE_aux(p, q, alloc);
  append_gadget(g, e1);
  append_gadget(g, e2);
  append_gadget(g, n);
  g.contract.semantics = Semantics::nae;
  g.contract.claim = "extension nae-satisfies iff x != y";
  g.contract.admits = [x, y](const Assignment& iface) { return iface.at(x) != iface.at(y); };
  g.complete = [x, y, p, q, c1 = e1.complete, c2 = e2.complete, cn = n.complete](const Assignment& fixed) {
    Assignment out;
    out.set(p, fixed.at(x));
    out.set(q, fixed.at(y));
    Assignment known = fixed;
    known.merge(out);
    out.merge(c1(known));
    out.merge(c2(known));
    out.merge(cn(known));
    return out;
  };
  return g;
}

GadgetInstance build_P1(Variable x, VariableAllocator& alloc) {
  GadgetInstance g;
  g.name = "P1";
  const Variable a = alloc.fresh(), b = alloc.fresh(), c = alloc.fresh(), d = alloc.fresh(),
                 e = alloc.fresh();
  g.fresh_existentials = {a, b, c, d, e};
  g.interface = {x};
  g.clauses = {
      Clause{pos(x), pos(a), pos(b)}, Clause{pos(a), pos(c), pos(d)}, Clause{pos(a), pos(b), pos(e)},
      Clause{pos(a), pos(d), pos(e)}, Clause{pos(b), pos(c), pos(d)}, Clause{pos(b), pos(c), pos(e)},
      Clause{pos(c), pos(d), pos(e)},
  };
  g.contract.semantics = Semantics::nae;
  g.contract.claim = "every interface value extends to a nae-satisfying assignment";
  g.contract.admits = [](const Assignment&) { return true; };
  g.complete = [a, b, c, d, e](const Assignment&) {
    Assignment out;
    out.set(a, true);
    out.set(b, false);
    out.set(c, true);
    out.set(d, false);
    out.set(e, true);
    return out;
  };
  return g;
}

ContractReport verify_contract(const GadgetInstance& gadget, Budget budget) {
  const auto& iface = gadget.interface;
  const auto& univ = gadget.fresh_universals;
  if (iface.size() + univ.size() > 24)
    throw PreconditionError("gadget interface too large for exhaustive verification");

  for (std::uint64_t ibits = 0; ibits < (1ull << iface.size()); ++ibits) {
    Assignment iface_values;
    for (std::size_t i = 0; i < iface.size(); ++i)
      iface_values.set(iface[i], (ibits >> (iface.size() - 1 - i)) & 1);

    bool exists_for_all = true;
    for (std::uint64_t ubits = 0; ubits < (1ull << univ.size()); ++ubits) {
      Assignment fixed = iface_values;
      for (std::size_t i = 0; i < univ.size(); ++i)
        fixed.set(univ[i], (ubits >> (univ.size() - 1 - i)) & 1);
      auto ext = find_extension(gadget.clauses, gadget.contract.semantics, fixed,
                                gadget.fresh_existentials, budget);
      if (!ext) {
        exists_for_all = false;
        break;
      }
      // whenever admitted, the stored completion must itself satisfy the clauses
      if (gadget.contract.admits(iface_values) && gadget.complete) {
        Assignment full = fixed;
        full.merge(gadget.complete(fixed));
        if (!evaluate_matrix(gadget.clauses, full, gadget.contract.semantics)) {
          return {false, gadget.name + ": completion rule fails on an admitted interface", iface_values};
        }
      }
    }

    if (exists_for_all != gadget.contract.admits(iface_values)) {
      ContractReport report;
      report.pass = false;
      report.detail = gadget.name + ": extension " + (exists_for_all ? "exists" : "missing") +
                      " where the contract says " + (exists_for_all ? "none" : "one") + " should";
      report.mismatch = iface_values;
      return report;
    }
  }
  return {true, gadget.name + ": contract verified over " +
                    std::to_string(1ull << iface.size()) + " interface and " +
                    std::to_string(1ull << univ.size()) + " fresh-universal assignments",
          std::nullopt};
}

std::map<Variable, AppearanceCount> gadget_appearances(const GadgetInstance& gadget) {
  std::map<Variable, AppearanceCount> counts;
  for (const auto& clause : gadget.clauses)
    for (const auto& atom : clause.atoms()) {
      if (!atom.is_literal()) continue;
      auto& c = counts[atom.literal().var];
      if (atom.literal().negated)
        ++c.negated;
      else
        ++c.unnegated;
    }
  return counts;
}

std::vector<std::string> gadget_catalog_names() {
  return {"S", "S_u", "x2", "E", "E_forall", "Q1", "Q3", "NE_aux", "EQ", "NE", "P1"};
}

GadgetInstance build_catalog_gadget(const std::string& name, VariableAllocator& alloc) {
  if (name == "S")
    return build_S(pos(alloc.fresh()), pos(alloc.fresh()), pos(alloc.fresh()), alloc);
  if (name == "S_u")
    return build_S_universal(pos(alloc.fresh()), pos(alloc.fresh()), pos(alloc.fresh()), alloc);
  if (name == "x2") return build_x2(alloc.fresh(), alloc);
  if (name == "E") return build_E(alloc.fresh(), alloc);
  if (name == "E_forall") return build_E_forall(alloc.fresh(), alloc);
  if (name == "Q1") return build_Q1(alloc);
  if (name == "Q3") return build_Q3(alloc);
  if (name == "NE_aux") return build_NE_aux(alloc.fresh(), alloc.fresh(), alloc);
  if (name == "EQ") return build_EQ(alloc.fresh(), alloc.fresh(), alloc);
  if (name == "NE") return build_NE(alloc.fresh(), alloc.fresh(), alloc);
  if (name == "P1") return build_P1(alloc.fresh(), alloc);
  throw PreconditionError("unknown gadget name: " + name);
}

}  // namespace qbforge
