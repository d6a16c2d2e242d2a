#include "qbforge/reductions.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>

#include "qbforge/gadgets.hpp"

namespace qbforge {
namespace {

void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

void require_class(const QuantifiedFormula& f, const ClassSpec& spec, const std::string& who) {
  auto report = validate_class(f, spec);
  if (!report.pass()) throw PreconditionError(who + ": input fails class check\n" + report.summary());
}

void assert_class(const QuantifiedFormula& f, const ClassSpec& spec, const std::string& who) {
  auto report = validate_class(f, spec);
  if (!report.pass()) throw Error(who + ": output fails its declared class\n" + report.summary());
}

std::vector<Clause> rename_matrix(const std::vector<Clause>& matrix,
                                  const std::map<Variable, Variable>& renames) {
  std::vector<Clause> out;
  out.reserve(matrix.size());
  for (const auto& clause : matrix) {
    std::vector<ClauseAtom> atoms;
    for (const auto& atom : clause.atoms()) {
      if (atom.is_literal()) {
        auto it = renames.find(atom.literal().var);
        if (it != renames.end()) {
          atoms.push_back(Literal{it->second, atom.literal().negated});
          continue;
        }
      }
      atoms.push_back(atom);
    }
    out.push_back(Clause(std::move(atoms)));
  }
  return out;
}

ReductionResult compose(const ReductionResult& first, const ReductionResult& second,
                        const std::string& route) {
  ReductionResult out;
  out.target = second.target;
  out.forward_witness = [f1 = first.forward_witness, f2 = second.forward_witness](const Assignment& s) {
    return f2(f1(s));
  };
  out.backward_witness = [b1 = first.backward_witness, b2 = second.backward_witness](const Assignment& t) {
    return b1(b2(t));
  };
  out.universal_embedding = [e1 = first.universal_embedding,
                             e2 = second.universal_embedding](const Assignment& s) { return e2(e1(s)); };
  out.trace.route = route;
  out.trace.steps = first.trace.steps;
  out.trace.steps.insert(out.trace.steps.end(), second.trace.steps.begin(), second.trace.steps.end());
  out.clause_bound = second.clause_bound;
  return out;
}

// Completion bookkeeping for witness maps: a gadget whose interface values are
// read from (possibly aliased) variables of the partially-built target
// assignment, then completed by the gadget's stored rule.
struct PendingCompletion {
  GadgetInstance gadget;
  // interface/fresh-universal variable -> variable of the evolving assignment
  // whose value it copies (identity unless aliased)
  std::map<Variable, Variable> value_sources;
};

void run_completions(Assignment& out, const std::vector<PendingCompletion>& pending) {
  for (const auto& pc : pending) {
    Assignment fixed;
    auto feed = [&](Variable v) {
      auto it = pc.value_sources.find(v);
      Variable source = it == pc.value_sources.end() ? v : it->second;
      fixed.set(v, out.at(source));
    };
    for (Variable v : pc.gadget.interface) feed(v);
    for (Variable v : pc.gadget.fresh_universals) feed(v);
    if (pc.gadget.complete) out.merge(pc.gadget.complete(fixed));
  }
}

std::string count_detail(const QuantifiedFormula& f) {
  std::ostringstream s;
  s << f.universals.size() << " universals, " << f.existentials.size() << " existentials, "
    << f.matrix.size() << " clauses";
  return s.str();
}

}  // namespace

std::string ReductionTrace::to_string() const {
  std::ostringstream out;
  out << "route " << route << "\n";
  for (const auto& step : steps) out << "  " << step.name << ": " << step.detail << "\n";
  return out.str();
}

// ---- Schaefer universal-to-existential step ---------------------------------

ReductionResult universalize_nae(const QuantifiedFormula& src, VariableAllocator& alloc) {
  require(src.semantics == Semantics::nae, "universalize_nae expects NAE semantics");
  require(!src.has_constants(), "universalize_nae expects a constant-free matrix");
  src.check_structure();

  const std::size_t p = src.universals.size();
  std::vector<Variable> ys = alloc.fresh_block(p);
  std::vector<Variable> zs = alloc.fresh_block(p);

  std::map<Variable, Variable> renames;
  for (std::size_t i = 0; i < p; ++i) renames[src.universals[i]] = ys[i];

  ReductionResult out;
  out.target.semantics = Semantics::nae;
  out.target.universals = zs;
  out.target.existentials = src.existentials;
  out.target.existentials.insert(out.target.existentials.end(), ys.begin(), ys.end());
  out.target.matrix = rename_matrix(src.matrix, renames);
  for (std::size_t i = 0; i < p; ++i) {
    out.target.matrix.push_back(Clause{neg(zs[i]), pos(ys[i])});
    out.target.matrix.push_back(Clause{pos(zs[i]), neg(ys[i])});
  }
  out.clause_bound = src.matrix.size() + 2 * p;
  require(out.target.matrix.size() == out.clause_bound, "universalize_nae size bound violated");

  const auto src_universals = src.universals;
  const auto src_existentials = src.existentials;
  out.forward_witness = [src_universals, src_existentials, ys, zs](const Assignment& beta) {
    Assignment result;
    for (Variable e : src_existentials) result.set(e, beta.at(e));
    for (std::size_t i = 0; i < src_universals.size(); ++i) {
      result.set(ys[i], beta.at(src_universals[i]));
      result.set(zs[i], beta.at(src_universals[i]));
    }
    return result;
  };
  out.backward_witness = [src_universals, src_existentials, ys](const Assignment& beta) {
    Assignment result;
    for (Variable e : src_existentials) result.set(e, beta.at(e));
    for (std::size_t i = 0; i < src_universals.size(); ++i)
      result.set(src_universals[i], beta.at(ys[i]));
    return result;
  };
  out.universal_embedding = [src_universals, zs](const Assignment& sigma) {
    Assignment result;
    for (std::size_t i = 0; i < src_universals.size(); ++i)
      result.set(zs[i], sigma.at(src_universals[i]));
    return result;
  };
  out.trace.route = "universalize-nae";
  out.trace.steps.push_back({"universalize", "replaced " + std::to_string(p) +
                                                 " universals by existential twins with linking 2-clauses; " +
                                                 count_detail(out.target)});
  return out;
}

// ---- four-step NAE -> SAT expansion -----------------------------------------

ReductionResult berman_expand(const QuantifiedFormula& src, VariableAllocator& alloc) {
  require(src.semantics == Semantics::nae, "berman_expand expects NAE semantics");
  require(!src.has_constants(), "berman_expand expects a constant-free matrix");
  src.check_structure();
  for (std::size_t j = 0; j < src.matrix.size(); ++j)
    require(!clause_never_nae(src.matrix[j]),
            "berman_expand: clause " + std::to_string(j + 1) +
                " can never be nae-satisfied; run normalize_degenerate_clauses first");
  {
    auto counts = count_all_appearances(src);
    for (Variable u : src.universals)
      require(counts.at(u) == AppearanceCount{1, 1},
              "berman_expand: universal variable " + std::to_string(u) +
                  " must appear exactly once per polarity");
  }

  ReductionResult out;
  out.trace.route = "berman-expand";
  QuantifiedFormula work = src;

  // pad single-appearance existentials; drop unused ones
  std::vector<Variable> kept;
  std::size_t padded = 0, dropped = 0;
  {
    auto counts = count_all_appearances(work);
    for (Variable w : work.existentials) {
      int a = counts.at(w).total();
      if (a == 0) {
        ++dropped;
        continue;
      }
      if (a == 1) {
        work.matrix.push_back(Clause{pos(w), neg(w)});
        ++padded;
      }
      kept.push_back(w);
    }
    work.existentials = kept;
  }
  out.trace.steps.push_back({"pad", std::to_string(padded) + " single-appearance existentials padded, " +
                                        std::to_string(dropped) + " unused dropped"});
  const std::size_t padded_clause_count = work.matrix.size();

  // step 1: split every existential appearance into copies
  SplitPlan plan;
  std::map<Variable, const SplitPlan::Entry*> entry_of;
  {
    auto counts = count_all_appearances(work);
    for (Variable w : work.existentials) {
      SplitPlan::Entry entry;
      entry.source = w;
      entry.unnegated = counts.at(w).unnegated;
      entry.negated = counts.at(w).negated;
      entry.copies = alloc.fresh_block(static_cast<std::size_t>(entry.total()));
      plan.entries.push_back(std::move(entry));
    }
    for (const auto& e : plan.entries) entry_of[e.source] = &e;

    std::map<Variable, int> next_appearance;
    for (auto& clause : work.matrix) {
      std::vector<ClauseAtom> atoms;
      for (const auto& atom : clause.atoms()) {
        if (atom.is_literal()) {
          auto it = entry_of.find(atom.literal().var);
          if (it != entry_of.end()) {
            int k = next_appearance[atom.literal().var]++;
            atoms.push_back(Literal{it->second->copies[static_cast<std::size_t>(k)],
                                    atom.literal().negated});
            continue;
          }
        }
        atoms.push_back(atom);
      }
      clause = Clause(std::move(atoms));
    }
  }
  out.trace.steps.push_back({"split", std::to_string(plan.entries.size()) +
                                          " existentials split into per-appearance copies"});

  // step 2: double every clause with its complement, in place
  {
    std::vector<Clause> doubled;
    doubled.reserve(2 * work.matrix.size());
    for (const auto& clause : work.matrix) {
      doubled.push_back(clause);
      doubled.push_back(complement_clause(clause));
    }
    work.matrix = std::move(doubled);
  }
  out.trace.steps.push_back({"double", "every clause paired with its complement"});

  // step 3: cyclic implication chain over each variable's copies
  std::size_t chain_clauses = 0;
  for (const auto& entry : plan.entries) {
    const auto& c = entry.copies;
    for (std::size_t k = 0; k < c.size(); ++k) {
      work.matrix.push_back(Clause{neg(c[k]), pos(c[(k + 1) % c.size()])});
      ++chain_clauses;
    }
  }
  out.trace.steps.push_back({"chain", std::to_string(chain_clauses) + " cyclic 2-clauses added"});

  // step 4: patch every 2-clause with a fresh enforcer variable and E(u)
  std::vector<PendingCompletion> enforcers;
  std::vector<Variable> enforcer_vars;
  {
    std::vector<Clause> patched;
    for (const auto& clause : work.matrix) {
      if (clause.size() != 2) {
        patched.push_back(clause);
        continue;
      }
      Variable u = alloc.fresh();
      GadgetInstance e = build_E(u, alloc);
      std::vector<ClauseAtom> atoms = clause.atoms();
      atoms.push_back(neg(u));
      patched.push_back(Clause(std::move(atoms)));
      patched.insert(patched.end(), e.clauses.begin(), e.clauses.end());
      enforcer_vars.push_back(u);
      enforcer_vars.insert(enforcer_vars.end(), e.fresh_existentials.begin(), e.fresh_existentials.end());
      enforcers.push_back({std::move(e), {}});
    }
    work.matrix = std::move(patched);
  }
  out.trace.steps.push_back({"patch", std::to_string(enforcers.size()) + " 2-clauses patched with E(u)"});

  work.semantics = Semantics::sat;
  work.existentials.clear();
  for (const auto& entry : plan.entries)
    work.existentials.insert(work.existentials.end(), entry.copies.begin(), entry.copies.end());
  work.existentials.insert(work.existentials.end(), enforcer_vars.begin(), enforcer_vars.end());

  out.target = std::move(work);
  out.target.check_structure();
  out.clause_bound = 135 * padded_clause_count;
  require(out.target.matrix.size() <= out.clause_bound, "berman_expand size bound violated");
  {
    ClassSpec profile;
    profile.name = "berman-output";
    profile.shape = ClassSpec::Shape::three_distinct;
    profile.universal_polarity = {2, 2};
    profile.existential_polarity = {2, 2};
    assert_class(out.target, profile, "berman_expand");
  }

  const auto universals = src.universals;
  const auto src_existentials = src.existentials;
  auto entries = plan.entries;
  out.forward_witness = [universals, entries, enforcers](const Assignment& beta) {
    Assignment result;
    for (Variable z : universals) result.set(z, beta.at(z));
    for (const auto& entry : entries)
      for (Variable copy : entry.copies) result.set(copy, beta.at(entry.source));
    for (const auto& pc : enforcers) result.set(pc.gadget.interface[0], true);
    run_completions(result, enforcers);
    return result;
  };
  out.backward_witness = [universals, src_existentials, entries](const Assignment& beta) {
    Assignment result;
    for (Variable z : universals) result.set(z, beta.at(z));
    for (Variable e : src_existentials) result.set(e, false);  // dropped variables default to F
    for (const auto& entry : entries) result.set(entry.source, beta.at(entry.copies[0]));
    return result;
  };
  out.universal_embedding = [universals](const Assignment& sigma) {
    Assignment result;
    for (Variable z : universals) result.set(z, sigma.at(z));
    return result;
  };
  return out;
}

// ---- balancing gadget appenders ---------------------------------------------

namespace {

ReductionResult balance_with(const QuantifiedFormula& src, VariableAllocator& alloc, bool use_q3) {
  require(src.semantics == Semantics::sat, "balancing gadgets assume SAT semantics");
  src.check_structure();
  const std::size_t pe = src.existentials.size();
  const std::size_t pu = src.universals.size();
  require(pe >= pu, "balancing requires at least as many existentials as universals");
  std::size_t copies = 0;
  if (use_q3) {
    require((pe - pu) % 3 == 0, "Q3 balancing requires the block difference to be divisible by 3");
    copies = (pe - pu) / 3;
  } else {
    copies = pe - pu;
  }

  ReductionResult out;
  out.target = src;
  std::vector<PendingCompletion> gadgets;
  for (std::size_t k = 0; k < copies; ++k) {
    GadgetInstance g = use_q3 ? build_Q3(alloc) : build_Q1(alloc);
    out.target.universals.insert(out.target.universals.end(), g.fresh_universals.begin(),
                                 g.fresh_universals.end());
    out.target.existentials.insert(out.target.existentials.end(), g.fresh_existentials.begin(),
                                   g.fresh_existentials.end());
    out.target.matrix.insert(out.target.matrix.end(), g.clauses.begin(), g.clauses.end());
    gadgets.push_back({std::move(g), {}});
  }

  require(out.target.universals.size() == out.target.existentials.size(),
          "balancing did not equalize the blocks");
  if (!use_q3) {
    const std::size_t expected = 5 * pe - 4 * pu;
    require(out.target.universals.size() == expected && out.target.existentials.size() == expected,
            "Q1 balancing must land both blocks at 5*pe - 4*pu");
  }
  out.clause_bound = src.matrix.size() + (use_q3 ? 6 : 12) * copies;
  require(out.target.matrix.size() == out.clause_bound, "balancing size bound violated");

  const auto src_universals = src.universals;
  const auto src_existentials = src.existentials;
  out.forward_witness = [src_universals, src_existentials, gadgets](const Assignment& beta) {
    Assignment result;
    for (Variable v : src_universals) result.set(v, beta.at(v));
    for (Variable v : src_existentials) result.set(v, beta.at(v));
    for (const auto& pc : gadgets)
      for (Variable u : pc.gadget.fresh_universals) result.set(u, false);
    run_completions(result, gadgets);
    return result;
  };
  out.backward_witness = [src_universals, src_existentials](const Assignment& beta) {
    Assignment result;
    for (Variable v : src_universals) result.set(v, beta.at(v));
    for (Variable v : src_existentials) result.set(v, beta.at(v));
    return result;
  };
  out.universal_embedding = [src_universals, gadgets](const Assignment& sigma) {
    Assignment result;
    for (Variable v : src_universals) result.set(v, sigma.at(v));
    for (const auto& pc : gadgets)
      for (Variable u : pc.gadget.fresh_universals) result.set(u, false);
    return result;
  };
  out.trace.route = use_q3 ? "balance-q3" : "balance-q1";
  out.trace.steps.push_back({"balance", std::to_string(copies) + (use_q3 ? " Q3" : " Q1") +
                                            " copies appended; " + count_detail(out.target)});
  return out;
}

}  // namespace

ReductionResult balance_q1(const QuantifiedFormula& src, VariableAllocator& alloc) {
  return balance_with(src, alloc, /*use_q3=*/false);
}

ReductionResult balance_q3(const QuantifiedFormula& src, VariableAllocator& alloc) {
  return balance_with(src, alloc, /*use_q3=*/true);
}

std::variant<ReductionResult, VerdictNo> reduce_to_balanced_2222(const QuantifiedFormula& src,
                                                                 VariableAllocator& alloc) {
  auto normalized = normalize_degenerate_clauses(src);
  if (std::holds_alternative<VerdictNo>(normalized)) return std::get<VerdictNo>(normalized);

  auto stage1 = universalize_nae(std::get<QuantifiedFormula>(normalized), alloc);
  auto stage2 = berman_expand(stage1.target, alloc);
  auto stage3 = balance_q1(stage2.target, alloc);
  auto out = compose(compose(stage1, stage2, "nae-to-b2222"), stage3, "nae-to-b2222");
  assert_class(out.target, named_class_specs().at("b2222"), "reduce_to_balanced_2222");
  return out;
}

// ---- balanced (2,2,2,2) -> balanced (1,1,2,2) --------------------------------

ReductionResult balanced_2222_to_1122(const QuantifiedFormula& src, VariableAllocator& alloc) {
  require_class(src, named_class_specs().at("b2222"), "balanced_2222_to_1122");
  const std::size_t p = src.universals.size();
  const std::size_t m = src.matrix.size();
  require(3 * m == 8 * p, "balanced (2,2,2,2) accounting demands 3m = 8p");
  require(p % 3 == 0, "p must be divisible by 3");

  ReductionResult out;
  out.trace.route = "b2222-to-b1122";
  QuantifiedFormula work;
  work.semantics = Semantics::sat;

  // step 1: replace each universal x_i by existential y_i guarded by S_u pairs
  // with a fresh universal c_i
  std::vector<Variable> ys = alloc.fresh_block(p);
  std::vector<Variable> cs = alloc.fresh_block(p);
  std::map<Variable, Variable> renames;
  for (std::size_t i = 0; i < p; ++i) renames[src.universals[i]] = ys[i];
  work.matrix = rename_matrix(src.matrix, renames);

  std::vector<Variable> s_internals;
  std::vector<PendingCompletion> s_gadgets;
  for (std::size_t i = 0; i < p; ++i) {
    GadgetInstance s1 = build_S_universal(neg(cs[i]), pos(ys[i]), pos(ys[i]), alloc);
    GadgetInstance s2 = build_S_universal(pos(cs[i]), neg(ys[i]), neg(ys[i]), alloc);
    for (auto* g : {&s1, &s2}) {
      work.matrix.insert(work.matrix.end(), g->clauses.begin(), g->clauses.end());
      s_internals.insert(s_internals.end(), g->fresh_existentials.begin(), g->fresh_existentials.end());
    }
    // the y-interface slots are split in step 2; its copies all carry y's value
    s_gadgets.push_back({std::move(s1), {}});
    s_gadgets.push_back({std::move(s2), {}});
  }
  work.universals = cs;
  out.trace.steps.push_back(
      {"s_u-replace", std::to_string(p) + " universals routed through S_u pairs"});

  // step 2: polarity-paired splitting, copy k takes the k-th unnegated and the
  // k-th negated appearance
  std::map<Variable, std::vector<Variable>> copies;
  {
    auto is_y = [&](Variable v) {
      return std::find(ys.begin(), ys.end(), v) != ys.end();
    };
    std::map<Variable, std::pair<int, int>> seen;  // unnegated, negated so far
    for (Variable y : ys) copies[y] = alloc.fresh_block(4);
    for (auto& clause : work.matrix) {
      std::vector<ClauseAtom> atoms;
      for (const auto& atom : clause.atoms()) {
        if (atom.is_literal() && is_y(atom.literal().var)) {
          auto& [u_seen, n_seen] = seen[atom.literal().var];
          int k = atom.literal().negated ? n_seen++ : u_seen++;
          require(k < 4, "split index out of range; input profile is not (4,4)");
          atoms.push_back(Literal{copies[atom.literal().var][static_cast<std::size_t>(k)],
                                  atom.literal().negated});
        } else {
          atoms.push_back(atom);
        }
      }
      clause = Clause(std::move(atoms));
    }
    for (const auto& [y, uv] : seen)
      require(uv.first == 4 && uv.second == 4, "each replaced universal must reach profile (4,4)");
  }
  out.trace.steps.push_back({"split-4", "each y split into four (1,1) copies"});

  // step 3: d-chains closing each copy cycle, with x2 enforcers on the d's
  std::vector<Variable> ds;
  for (std::size_t i = 0; i < p; ++i) {
    ds.push_back(alloc.fresh());
    ds.push_back(alloc.fresh());
  }
  std::vector<Variable> d_internals;
  std::vector<PendingCompletion> d_gadgets;
  for (std::size_t i = 0; i < p; ++i) {
    const auto& c = copies[ys[i]];
    const Variable d1 = ds[2 * i], d2 = ds[2 * i + 1];
    work.matrix.push_back(Clause{neg(c[0]), pos(c[1]), neg(d1)});
    work.matrix.push_back(Clause{neg(c[1]), pos(c[2]), neg(d1)});
    GadgetInstance x2a = build_x2(d1, alloc);
    work.matrix.insert(work.matrix.end(), x2a.clauses.begin(), x2a.clauses.end());
    d_internals.insert(d_internals.end(), x2a.fresh_existentials.begin(), x2a.fresh_existentials.end());
    d_gadgets.push_back({std::move(x2a), {}});
    work.matrix.push_back(Clause{neg(c[2]), pos(c[3]), neg(d2)});
    work.matrix.push_back(Clause{neg(c[3]), pos(c[0]), neg(d2)});
    GadgetInstance x2b = build_x2(d2, alloc);
    work.matrix.insert(work.matrix.end(), x2b.clauses.begin(), x2b.clauses.end());
    d_internals.insert(d_internals.end(), x2b.fresh_existentials.begin(), x2b.fresh_existentials.end());
    d_gadgets.push_back({std::move(x2b), {}});
  }
  out.trace.steps.push_back({"d-chain", std::to_string(2 * p) + " chain enforcers added"});

  work.existentials = src.existentials;
  for (Variable y : ys)
    work.existentials.insert(work.existentials.end(), copies[y].begin(), copies[y].end());
  work.existentials.insert(work.existentials.end(), s_internals.begin(), s_internals.end());
  work.existentials.insert(work.existentials.end(), ds.begin(), ds.end());
  work.existentials.insert(work.existentials.end(), d_internals.begin(), d_internals.end());
  work.check_structure();

  require(work.existentials.size() == 27 * p, "pre-balance existential count must be 27p");
  require(work.universals.size() == p, "pre-balance universal count must be p");
  out.trace.steps.push_back({"accounting", "pre-balance: " + count_detail(work)});

  // intermediate result, then Q3 balancing
  ReductionResult stage;
  stage.target = work;
  const auto src_universals = src.universals;
  const auto src_existentials = src.existentials;
  auto copy_map = copies;
  stage.forward_witness = [src_universals, src_existentials, ys, cs, ds, copy_map, s_gadgets,
                           d_gadgets](const Assignment& beta) {
    Assignment result;
    for (Variable e : src_existentials) result.set(e, beta.at(e));
    for (std::size_t i = 0; i < src_universals.size(); ++i) {
      const bool value = beta.at(src_universals[i]);
      result.set(cs[i], value);
      result.set(ys[i], value);  // alias for the S_u completions below
      for (Variable copy : copy_map.at(ys[i])) result.set(copy, value);
    }
    for (Variable d : ds) result.set(d, true);
    run_completions(result, s_gadgets);
    run_completions(result, d_gadgets);
    for (Variable y : ys) result.erase(y);  // y itself is not a target variable
    return result;
  };
  stage.backward_witness = [src_universals, src_existentials, ys, copy_map](const Assignment& beta) {
    Assignment result;
    for (Variable e : src_existentials) result.set(e, beta.at(e));
    for (std::size_t i = 0; i < src_universals.size(); ++i)
      result.set(src_universals[i], beta.at(copy_map.at(ys[i])[0]));
    return result;
  };
  stage.universal_embedding = [src_universals, cs](const Assignment& sigma) {
    Assignment result;
    for (std::size_t i = 0; i < src_universals.size(); ++i) result.set(cs[i], sigma.at(src_universals[i]));
    return result;
  };
  stage.trace = out.trace;
  stage.clause_bound = m + 34 * p;  // 10p S_u clauses, 4p chain clauses, 20p enforcer clauses
  require(stage.target.matrix.size() == stage.clause_bound, "pre-balance size bound violated");

  auto balanced = balance_q3(stage.target, alloc);
  auto composed = compose(stage, balanced, "b2222-to-b1122");
  composed.clause_bound = stage.clause_bound + (balanced.clause_bound - stage.target.matrix.size());
  assert_class(composed.target, named_class_specs().at("b1122"), "balanced_2222_to_1122");
  return composed;
}

// ---- 3-SAT-(3) -> forall-exists -----------------------------------------------

ReductionResult sat3_bounded_to_forallexists(const QuantifiedFormula& src, PolarityVariant variant,
                                             VariableAllocator& alloc) {
  require_class(src, named_class_specs().at("3sat3"), "sat3_bounded_to_forallexists");

  ReductionResult out;
  out.trace.route = "3sat3-to-ae";
  out.target.semantics = Semantics::sat;
  out.target.existentials = src.existentials;

  std::vector<Variable> fresh_universals;
  for (const auto& clause : src.matrix) {
    if (clause.size() == 2) {
      Variable y = alloc.fresh();
      fresh_universals.push_back(y);
      std::vector<ClauseAtom> atoms = clause.atoms();
      atoms.push_back(pos(y));
      out.target.matrix.push_back(Clause(std::move(atoms)));
    } else {
      out.target.matrix.push_back(clause);
    }
  }
  out.target.universals = fresh_universals;

  const bool flip_universals =
      variant == PolarityVariant::univ_0121 || variant == PolarityVariant::all_0112;
  const bool flip_existentials =
      variant == PolarityVariant::exist_1012 || variant == PolarityVariant::all_0112;
  if (flip_universals)
    for (Variable y : fresh_universals) flip_variable_polarity(out.target, y);
  if (flip_existentials)
    for (Variable x : out.target.existentials) flip_variable_polarity(out.target, x);

  out.clause_bound = src.matrix.size();
  require(out.target.matrix.size() == out.clause_bound, "sat3 route must not change the clause count");

  const char* profile = nullptr;
  switch (variant) {
    case PolarityVariant::base_1021: profile = "ae1021"; break;
    case PolarityVariant::univ_0121: profile = "ae0121"; break;
    case PolarityVariant::exist_1012: profile = "ae1012"; break;
    case PolarityVariant::all_0112: profile = "ae0112"; break;
  }
  if (!fresh_universals.empty())
    assert_class(out.target, named_class_specs().at(profile), "sat3_bounded_to_forallexists");
  out.trace.steps.push_back({"pad-2-clauses", std::to_string(fresh_universals.size()) +
                                                  " fresh universals appended to 2-clauses (" +
                                                  profile + ")"});

  const auto existentials = src.existentials;
  out.forward_witness = [existentials, fresh_universals, flip_existentials,
                         flip_universals](const Assignment& beta) {
    Assignment result;
    for (Variable x : existentials) result.set(x, flip_existentials ? !beta.at(x) : beta.at(x));
    for (Variable y : fresh_universals) result.set(y, flip_universals);
    return result;
  };
  out.backward_witness = [existentials, flip_existentials](const Assignment& beta) {
    Assignment result;
    for (Variable x : existentials) result.set(x, flip_existentials ? !beta.at(x) : beta.at(x));
    return result;
  };
  out.universal_embedding = [fresh_universals, flip_universals](const Assignment&) {
    Assignment result;
    for (Variable y : fresh_universals) result.set(y, flip_universals);
    return result;
  };
  return out;
}

PolarityNormalization normalize_polarity(const QuantifiedFormula& src) {
  require(src.universals.empty(), "normalize_polarity expects an unquantified instance");
  require(!src.has_constants(), "normalize_polarity expects a constant-free matrix");
  PolarityNormalization out{src, {}};
  auto counts = count_all_appearances(src);
  for (Variable v : src.existentials) {
    const auto& c = counts.at(v);
    if (c == AppearanceCount{2, 1}) continue;
    require(c == AppearanceCount{1, 2}, "variable " + std::to_string(v) +
                                            " has profile (" + std::to_string(c.unnegated) + "," +
                                            std::to_string(c.negated) + "); expected (2,1) or (1,2)");
    flip_variable_polarity(out.formula, v);
    out.flipped.push_back(v);
  }
  return out;
}

// ---- balanced (1,1,2,2) -> (1,1,2,1) / (1,1,1,2) ------------------------------

ReductionResult balanced_1122_to_112x(const QuantifiedFormula& src, ExistentialProfile profile,
                                      VariableAllocator& alloc) {
  require_class(src, named_class_specs().at("b1122"), "balanced_1122_to_112x");

  ReductionResult out;
  out.trace.route = profile == ExistentialProfile::t21 ? "b1122-to-1121" : "b1122-to-1112";
  QuantifiedFormula work;
  work.semantics = Semantics::sat;
  work.universals = src.universals;
  work.matrix = src.matrix;

  struct PerExistential {
    Variable source;
    std::vector<Variable> copies;  // 1st/2nd unnegated -> 0/1, 1st/2nd negated -> 2/3
    std::vector<Variable> ds;
  };
  std::vector<PerExistential> table;

  // step 1: split appearances and append the guarded chain clauses
  {
    std::map<Variable, PerExistential*> lookup;
    for (Variable y : src.existentials) {
      table.push_back({y, alloc.fresh_block(4), alloc.fresh_block(4)});
    }
    for (auto& row : table) lookup[row.source] = &row;
    std::map<Variable, std::pair<int, int>> seen;
    for (auto& clause : work.matrix) {
      std::vector<ClauseAtom> atoms;
      for (const auto& atom : clause.atoms()) {
        if (atom.is_literal() && lookup.count(atom.literal().var)) {
          auto& row = *lookup[atom.literal().var];
          auto& [u_seen, n_seen] = seen[row.source];
          if (atom.literal().negated) {
            require(n_seen < 2, "negated appearance count exceeds the (2,2) profile");
            atoms.push_back(neg(row.copies[static_cast<std::size_t>(2 + n_seen++)]));
          } else {
            require(u_seen < 2, "unnegated appearance count exceeds the (2,2) profile");
            atoms.push_back(pos(row.copies[static_cast<std::size_t>(u_seen++)]));
          }
        } else {
          atoms.push_back(atom);
        }
      }
      clause = Clause(std::move(atoms));
    }
  }
  std::vector<PendingCompletion> guards;
  for (auto& row : table) {
    const auto& c = row.copies;
    const auto& d = row.ds;
    const std::array<std::pair<Variable, Variable>, 4> links{
        {{c[0], c[1]}, {c[1], c[2]}, {c[2], c[3]}, {c[3], c[0]}}};
    for (std::size_t k = 0; k < 4; ++k) {
      work.matrix.push_back(Clause{neg(links[k].first), pos(links[k].second), neg(d[k])});
      GadgetInstance guard = build_E_forall(d[k], alloc);
      work.matrix.insert(work.matrix.end(), guard.clauses.begin(), guard.clauses.end());
      work.universals.insert(work.universals.end(), guard.fresh_universals.begin(),
                             guard.fresh_universals.end());
      guards.push_back({std::move(guard), {}});
    }
    work.existentials.insert(work.existentials.end(), c.begin(), c.end());
    work.existentials.insert(work.existentials.end(), d.begin(), d.end());
  }
  out.trace.steps.push_back(
      {"split-guard", std::to_string(table.size()) + " existentials split with E_forall-guarded chains"});

  // step 2: the variant's polarity flip
  std::vector<Variable> flipped;
  for (const auto& row : table) {
    if (profile == ExistentialProfile::t21) {
      flipped.push_back(row.copies[2]);
      flipped.push_back(row.copies[3]);
    } else {
      flipped.push_back(row.copies[0]);
      flipped.push_back(row.copies[1]);
      // flipping only the copies would leave every d at (2,1); the d's flip too
      for (Variable d : row.ds) flipped.push_back(d);
    }
  }
  for (Variable v : flipped) flip_variable_polarity(work, v);
  out.trace.steps.push_back({"polarity-flip", std::to_string(flipped.size()) + " variables flipped"});

  out.target = std::move(work);
  out.target.check_structure();
  out.clause_bound = src.matrix.size() + 12 * table.size();
  require(out.target.matrix.size() == out.clause_bound, "balanced_1122_to_112x size bound violated");
  assert_class(out.target,
               named_class_specs().at(profile == ExistentialProfile::t21 ? "ae1121" : "ae1112"),
               "balanced_1122_to_112x");

  std::set<Variable> flip_set(flipped.begin(), flipped.end());
  const auto src_universals = src.universals;
  const auto src_existentials = src.existentials;
  out.forward_witness = [src_universals, table, guards, flip_set](const Assignment& beta) {
    Assignment result;
    for (Variable x : src_universals) result.set(x, beta.at(x));
    for (const auto& row : table) {
      for (Variable copy : row.copies) result.set(copy, beta.at(row.source));
      for (Variable d : row.ds) result.set(d, true);
    }
    for (const auto& pc : guards)
      for (Variable u : pc.gadget.fresh_universals) result.set(u, false);
    // account for the flip: satisfying values of flipped variables negate
    for (Variable v : flip_set) result.set(v, !result.at(v));
    return result;
  };
  out.backward_witness = [src_universals, src_existentials, table, flip_set](const Assignment& beta) {
    Assignment result;
    for (Variable x : src_universals) result.set(x, beta.at(x));
    for (const auto& row : table) {
      bool value = beta.at(row.copies[0]);
      if (flip_set.count(row.copies[0])) value = !value;
      result.set(row.source, value);
    }
    return result;
  };
  out.universal_embedding = [src_universals, guards](const Assignment& sigma) {
    Assignment result;
    for (Variable x : src_universals) result.set(x, sigma.at(x));
    for (const auto& pc : guards)
      for (Variable u : pc.gadget.fresh_universals) result.set(u, false);  // diagonal branch
    return result;
  };
  return out;
}

// ---- NAE -> monotone (1,4) ----------------------------------------------------

ReductionResult nae_to_monotone_14(const QuantifiedFormula& src, VariableAllocator& alloc) {
  require(src.semantics == Semantics::nae, "nae_to_monotone_14 expects NAE semantics");
  require(!src.has_constants(), "nae_to_monotone_14 expects a constant-free matrix");
  src.check_structure();

  ReductionResult out;
  out.trace.route = "nae-to-mono14";
  QuantifiedFormula work;
  work.semantics = Semantics::nae;

  // clauses become exactly three literals; a 2-clause duplicates its second
  // literal (nae-equivalent)
  std::size_t padded = 0;
  for (std::size_t j = 0; j < src.matrix.size(); ++j) {
    const Clause& clause = src.matrix[j];
    require(!clause_never_nae(clause), "clause " + std::to_string(j + 1) +
                                           " can never be nae-satisfied; run "
                                           "normalize_degenerate_clauses first");
    if (clause.size() == 2) {
      work.matrix.push_back(Clause{clause.atoms()[0], clause.atoms()[1], clause.atoms()[1]});
      ++padded;
    } else {
      require(clause.size() == 3, "clauses must have two or three literals");
      work.matrix.push_back(clause);
    }
  }
  if (padded > 0)
    out.trace.steps.push_back({"pad-2-clauses", std::to_string(padded) + " 2-clauses duplicated to length 3"});

  const std::size_t p = src.universals.size();
  std::vector<Variable> zs = alloc.fresh_block(p);
  std::vector<Variable> ys = alloc.fresh_block(p);
  std::map<Variable, Variable> renames;
  for (std::size_t i = 0; i < p; ++i) renames[src.universals[i]] = ys[i];
  work.matrix = rename_matrix(work.matrix, renames);
  work.universals = zs;

  std::vector<Variable> a_vars;  // every enforcer-introduced existential
  std::vector<PendingCompletion> completions;
  for (std::size_t i = 0; i < p; ++i) {
    GadgetInstance eq = build_EQ(zs[i], ys[i], alloc);
    work.matrix.insert(work.matrix.end(), eq.clauses.begin(), eq.clauses.end());
    a_vars.insert(a_vars.end(), eq.fresh_existentials.begin(), eq.fresh_existentials.end());
    // after the split below y_i is gone; its copies all carry z_i's value
    completions.push_back({std::move(eq), {{ys[i], zs[i]}}});
  }
  out.trace.steps.push_back({"eq-couple", std::to_string(p) + " universals coupled through EQ gadgets"});

  // step 1: monotone appearance splitting (unnegated copies first)
  std::vector<Variable> split_targets = ys;
  split_targets.insert(split_targets.end(), src.existentials.begin(), src.existentials.end());
  SplitPlan plan;
  {
    std::map<Variable, AppearanceCount> counts;
    for (Variable v : split_targets) counts[v] = {};
    for (const auto& clause : work.matrix)
      for (const auto& atom : clause.atoms())
        if (atom.is_literal() && counts.count(atom.literal().var)) {
          auto& c = counts[atom.literal().var];
          (atom.literal().negated ? c.negated : c.unnegated)++;
        }
    for (Variable v : split_targets) {
      SplitPlan::Entry entry;
      entry.source = v;
      entry.unnegated = counts[v].unnegated;
      entry.negated = counts[v].negated;
      entry.copies = alloc.fresh_block(static_cast<std::size_t>(entry.total()));
      plan.entries.push_back(std::move(entry));
    }
    std::map<Variable, std::pair<int, int>> seen;
    std::map<Variable, const SplitPlan::Entry*> entry_of;
    for (const auto& e : plan.entries) entry_of[e.source] = &e;
    for (auto& clause : work.matrix) {
      std::vector<ClauseAtom> atoms;
      for (const auto& atom : clause.atoms()) {
        if (atom.is_literal() && entry_of.count(atom.literal().var)) {
          const auto* entry = entry_of[atom.literal().var];
          auto& [u_seen, n_seen] = seen[atom.literal().var];
          int index = atom.literal().negated ? entry->unnegated + n_seen++ : u_seen++;
          atoms.push_back(pos(entry->copies[static_cast<std::size_t>(index)]));
        } else {
          atoms.push_back(atom);
        }
      }
      clause = Clause(std::move(atoms));
    }
  }
  out.trace.steps.push_back({"monotone-split", std::to_string(plan.entries.size()) +
                                                   " variables split into unnegated copies"});

  // steps 2 and 3: EQ chains per polarity segment, NE across the boundary
  std::size_t chain_count = 0, ne_count = 0;
  for (const auto& entry : plan.entries) {
    const int u = entry.unnegated, a = entry.total();
    for (int j = 0; j + 1 < u; ++j) {
      GadgetInstance eq =
          build_EQ(entry.copies[static_cast<std::size_t>(j)], entry.copies[static_cast<std::size_t>(j + 1)], alloc);
      work.matrix.insert(work.matrix.end(), eq.clauses.begin(), eq.clauses.end());
      a_vars.insert(a_vars.end(), eq.fresh_existentials.begin(), eq.fresh_existentials.end());
      completions.push_back({std::move(eq), {}});
      ++chain_count;
    }
    for (int j = u; j + 1 < a; ++j) {
      GadgetInstance eq =
          build_EQ(entry.copies[static_cast<std::size_t>(j)], entry.copies[static_cast<std::size_t>(j + 1)], alloc);
      work.matrix.insert(work.matrix.end(), eq.clauses.begin(), eq.clauses.end());
      a_vars.insert(a_vars.end(), eq.fresh_existentials.begin(), eq.fresh_existentials.end());
      completions.push_back({std::move(eq), {}});
      ++chain_count;
    }
  }
  for (const auto& entry : plan.entries) {
    if (entry.unnegated == 0 || entry.negated == 0) continue;
    GadgetInstance ne = build_NE(entry.copies[static_cast<std::size_t>(entry.unnegated - 1)],
                                 entry.copies[static_cast<std::size_t>(entry.unnegated)], alloc);
    work.matrix.insert(work.matrix.end(), ne.clauses.begin(), ne.clauses.end());
    a_vars.insert(a_vars.end(), ne.fresh_existentials.begin(), ne.fresh_existentials.end());
    completions.push_back({std::move(ne), {}});
    ++ne_count;
  }
  out.trace.steps.push_back({"eq-ne-chains", std::to_string(chain_count) + " EQ links, " +
                                                 std::to_string(ne_count) + " NE boundaries"});

  work.existentials = a_vars;
  for (const auto& entry : plan.entries)
    work.existentials.insert(work.existentials.end(), entry.copies.begin(), entry.copies.end());

  // step 4: P1 padding to exactly four appearances
  std::size_t pads = 0;
  {
    std::map<Variable, int> totals;
    for (Variable v : work.existentials) totals[v] = 0;
    for (const auto& clause : work.matrix)
      for (const auto& atom : clause.atoms())
        if (atom.is_literal()) totals[atom.literal().var]++;
    const std::vector<Variable> snapshot = work.existentials;
    for (Variable v : snapshot) {
      int missing = 4 - totals.at(v);
      require(missing >= 0 && missing <= 3,
              "variable " + std::to_string(v) + " appears " + std::to_string(totals.at(v)) +
                  " times before padding");
      for (int k = 0; k < missing; ++k) {
        GadgetInstance p1 = build_P1(v, alloc);
        work.matrix.insert(work.matrix.end(), p1.clauses.begin(), p1.clauses.end());
        work.existentials.insert(work.existentials.end(), p1.fresh_existentials.begin(),
                                 p1.fresh_existentials.end());
        completions.push_back({std::move(p1), {}});
        ++pads;
      }
    }
  }
  out.trace.steps.push_back({"p1-pad", std::to_string(pads) + " P1 gadgets appended"});

  out.target = std::move(work);
  out.target.check_structure();
  assert_class(out.target, named_class_specs().at("mono14"), "nae_to_monotone_14");
  // loose but explicit polynomial: every stage is linear in appearance count
  out.clause_bound =
      (src.matrix.size() + 1) * 40 + (src.universals.size() + src.existentials.size() + 1) * 300;
  require(out.target.matrix.size() <= out.clause_bound, "nae_to_monotone_14 size bound violated");

  const auto src_universals = src.universals;
  const auto src_existentials = src.existentials;
  auto entries = plan.entries;
  std::map<Variable, Variable> y_of;  // renamed universal -> source universal
  for (std::size_t i = 0; i < p; ++i) y_of[ys[i]] = src.universals[i];
  out.forward_witness = [src_universals, zs, entries, y_of, completions](const Assignment& beta) {
    Assignment result;
    for (std::size_t i = 0; i < src_universals.size(); ++i) result.set(zs[i], beta.at(src_universals[i]));
    for (const auto& entry : entries) {
      auto it = y_of.find(entry.source);
      const bool value = it != y_of.end() ? beta.at(it->second) : beta.at(entry.source);
      for (int j = 0; j < entry.total(); ++j)
        result.set(entry.copies[static_cast<std::size_t>(j)], j < entry.unnegated ? value : !value);
    }
    run_completions(result, completions);
    return result;
  };
  out.backward_witness = [src_universals, src_existentials, zs, entries](const Assignment& beta) {
    Assignment result;
    for (std::size_t i = 0; i < src_universals.size(); ++i)
      result.set(src_universals[i], beta.at(zs[i]));
    for (Variable e : src_existentials) {
      const auto* entry = [&]() -> const SplitPlan::Entry* {
        for (const auto& candidate : entries)
          if (candidate.source == e) return &candidate;
        return nullptr;
      }();
      if (entry == nullptr || entry->total() == 0) {
        result.set(e, false);
      } else if (entry->unnegated >= 1) {
        result.set(e, beta.at(entry->copies[0]));
      } else {
        result.set(e, !beta.at(entry->copies[0]));
      }
    }
    return result;
  };
  out.universal_embedding = [src_universals, zs](const Assignment& sigma) {
    Assignment result;
    for (std::size_t i = 0; i < src_universals.size(); ++i) result.set(zs[i], sigma.at(src_universals[i]));
    return result;
  };
  return out;
}

// ---- monotone (1,4) -> monotone linear (1,3) ----------------------------------

ReductionResult monotone14_to_monotone13_linear(const QuantifiedFormula& src, VariableAllocator& alloc) {
  require_class(src, named_class_specs().at("mono14"), "monotone14_to_monotone13_linear");

  ReductionResult out;
  out.trace.route = "mono14-to-mono13";
  QuantifiedFormula work;
  work.semantics = Semantics::nae;
  work.universals = src.universals;
  work.matrix = src.matrix;

  struct CycleGadget {
    Variable source;
    std::vector<Variable> z, e, u, v;  // 8 each
  };
  std::vector<CycleGadget> gadgets;
  {
    std::map<Variable, CycleGadget*> lookup;
    for (Variable zi : src.existentials)
      gadgets.push_back({zi, alloc.fresh_block(8), alloc.fresh_block(8), alloc.fresh_block(8),
                         alloc.fresh_block(8)});
    for (auto& g : gadgets) lookup[g.source] = &g;
    std::map<Variable, int> seen;
    for (auto& clause : work.matrix) {
      std::vector<ClauseAtom> atoms;
      for (const auto& atom : clause.atoms()) {
        if (atom.is_literal() && lookup.count(atom.literal().var)) {
          int j = seen[atom.literal().var]++;
          require(j < 4, "monotone (1,4) input must have exactly four appearances per existential");
          atoms.push_back(pos(lookup[atom.literal().var]->z[static_cast<std::size_t>(j)]));
        } else {
          atoms.push_back(atom);
        }
      }
      clause = Clause(std::move(atoms));
    }
  }

  const std::size_t before = work.matrix.size();
  for (const auto& g : gadgets) {
    for (std::size_t k = 0; k < 8; ++k) {
      work.matrix.push_back(Clause{pos(g.z[k]), pos(g.e[k]), pos(g.u[k])});
      work.matrix.push_back(Clause{pos(g.e[k]), pos(g.z[(k + 1) % 8]), pos(g.v[k])});
    }
    work.matrix.push_back(Clause{pos(g.z[4]), pos(g.e[0]), pos(g.e[1])});
    work.matrix.push_back(Clause{pos(g.z[5]), pos(g.e[6]), pos(g.e[7])});
    work.matrix.push_back(Clause{pos(g.z[6]), pos(g.e[2]), pos(g.e[3])});
    work.matrix.push_back(Clause{pos(g.z[7]), pos(g.e[4]), pos(g.e[5])});
    work.existentials.insert(work.existentials.end(), g.z.begin(), g.z.end());
    work.existentials.insert(work.existentials.end(), g.e.begin(), g.e.end());
    work.universals.insert(work.universals.end(), g.u.begin(), g.u.end());
    work.universals.insert(work.universals.end(), g.v.begin(), g.v.end());
  }
  require(work.matrix.size() == before + 20 * gadgets.size(),
          "each source existential must contribute exactly 20 clauses");

  out.target = std::move(work);
  out.target.check_structure();
  out.clause_bound = src.matrix.size() + 20 * gadgets.size();
  assert_class(out.target, named_class_specs().at("mono13lin"), "monotone14_to_monotone13_linear");
  out.trace.steps.push_back({"cycle-gadgets", std::to_string(gadgets.size()) +
                                                  " existentials routed through 8-cycles; " +
                                                  count_detail(out.target)});

  const auto src_universals = src.universals;
  const auto src_existentials = src.existentials;
  out.forward_witness = [src_universals, gadgets](const Assignment& beta) {
    Assignment result;
    for (Variable x : src_universals) result.set(x, beta.at(x));
    for (const auto& g : gadgets) {
      const bool value = beta.at(g.source);
      for (Variable z : g.z) result.set(z, value);
      for (Variable e : g.e) result.set(e, !value);
      for (Variable u : g.u) result.set(u, false);
      for (Variable v : g.v) result.set(v, false);
    }
    return result;
  };
  out.backward_witness = [src_universals, gadgets](const Assignment& beta) {
    Assignment result;
    for (Variable x : src_universals) result.set(x, beta.at(x));
    for (const auto& g : gadgets) result.set(g.source, beta.at(g.z[0]));
    return result;
  };
  out.universal_embedding = [src_universals, gadgets](const Assignment& sigma) {
    Assignment result;
    for (Variable x : src_universals) result.set(x, sigma.at(x));
    for (const auto& g : gadgets) {
      for (Variable u : g.u) result.set(u, false);
      for (Variable v : g.v) result.set(v, true);  // the copy-forcing branch
    }
    return result;
  };
  return out;
}

// ---- universal-literal deletion ------------------------------------------------

std::variant<QuantifiedFormula, VerdictNo> strip_universal_literals(const QuantifiedFormula& src) {
  require(src.semantics == Semantics::sat,
          "strip_universal_literals is only sound under SAT semantics");
  src.check_structure();
  auto counts = count_all_appearances(src);
  for (Variable u : src.universals)
    require(counts.at(u).total() <= 1,
            "universal variable " + std::to_string(u) + " appears more than once");

  QuantifiedFormula out;
  out.semantics = Semantics::sat;
  out.existentials = src.existentials;
  for (std::size_t j = 0; j < src.matrix.size(); ++j) {
    std::vector<ClauseAtom> atoms;
    for (const auto& atom : src.matrix[j].atoms())
      if (!atom.is_literal() || !src.is_universal(atom.literal().var)) atoms.push_back(atom);
    if (atoms.empty())
      return VerdictNo{j, "clause " + std::to_string(j + 1) + " shrinks to the empty clause"};
    out.matrix.push_back(Clause(std::move(atoms)));
  }
  return out;
}

// ---- route registry --------------------------------------------------------------

std::vector<std::string> route_names() {
  return {"nae-to-b2222",     "b2222-to-b1122",   "b1122-to-1121",    "b1122-to-1112",
          "3sat3-to-ae:1021", "3sat3-to-ae:0121", "3sat3-to-ae:1012", "3sat3-to-ae:0112",
          "nae-to-mono14",    "mono14-to-mono13", "strip-universals"};
}

const ClassSpec& route_target_class(const std::string& route) {
  static const std::map<std::string, std::string> classes{
      {"nae-to-b2222", "b2222"},       {"b2222-to-b1122", "b1122"},
      {"b1122-to-1121", "ae1121"},     {"b1122-to-1112", "ae1112"},
      {"3sat3-to-ae:1021", "ae1021"},  {"3sat3-to-ae:0121", "ae0121"},
      {"3sat3-to-ae:1012", "ae1012"},  {"3sat3-to-ae:0112", "ae0112"},
      {"nae-to-mono14", "mono14"},     {"mono14-to-mono13", "mono13lin"},
  };
  auto it = classes.find(route);
  if (it == classes.end()) throw PreconditionError("route has no declared target class: " + route);
  return named_class_specs().at(it->second);
}

RouteOutcome run_route(const std::string& route, const QuantifiedFormula& formula,
                       VariableAllocator& alloc) {
  auto normalized_nae = [&](auto&& fn) -> RouteOutcome {
    auto normalized = normalize_degenerate_clauses(formula);
    if (std::holds_alternative<VerdictNo>(normalized)) return {std::nullopt, std::get<VerdictNo>(normalized)};
    return {fn(std::get<QuantifiedFormula>(normalized)), std::nullopt};
  };

  if (route == "nae-to-b2222") {
    auto result = reduce_to_balanced_2222(formula, alloc);
    if (std::holds_alternative<VerdictNo>(result)) return {std::nullopt, std::get<VerdictNo>(result)};
    return {std::get<ReductionResult>(result), std::nullopt};
  }
  if (route == "b2222-to-b1122") return {balanced_2222_to_1122(formula, alloc), std::nullopt};
  if (route == "b1122-to-1121")
    return {balanced_1122_to_112x(formula, ExistentialProfile::t21, alloc), std::nullopt};
  if (route == "b1122-to-1112")
    return {balanced_1122_to_112x(formula, ExistentialProfile::t12, alloc), std::nullopt};
  if (route.rfind("3sat3-to-ae:", 0) == 0) {
    const std::string variant = route.substr(std::string("3sat3-to-ae:").size());
    PolarityVariant pv;
    if (variant == "1021")
      pv = PolarityVariant::base_1021;
    else if (variant == "0121")
      pv = PolarityVariant::univ_0121;
    else if (variant == "1012")
      pv = PolarityVariant::exist_1012;
    else if (variant == "0112")
      pv = PolarityVariant::all_0112;
    else
      throw PreconditionError("unknown 3sat3 variant: " + variant);
    return {sat3_bounded_to_forallexists(formula, pv, alloc), std::nullopt};
  }
  if (route == "nae-to-mono14")
    return normalized_nae([&](const QuantifiedFormula& f) { return nae_to_monotone_14(f, alloc); });
  if (route == "mono14-to-mono13")
    return {monotone14_to_monotone13_linear(formula, alloc), std::nullopt};
  if (route == "strip-universals") {
    auto result = strip_universal_literals(formula);
    if (std::holds_alternative<VerdictNo>(result)) return {std::nullopt, std::get<VerdictNo>(result)};
    ReductionResult r;
    r.target = std::get<QuantifiedFormula>(result);
    r.trace.route = route;
    r.clause_bound = formula.matrix.size();
    const auto existentials = formula.existentials;
    const auto universals = formula.universals;
    // adversary branch: every universal literal false
    Assignment adversary;
    for (Variable u : universals) adversary.set(u, false);
    for (const auto& clause : formula.matrix)
      for (const auto& atom : clause.atoms())
        if (atom.is_literal() && formula.is_universal(atom.literal().var))
          adversary.set(atom.literal().var, atom.literal().negated);
    r.forward_witness = [existentials](const Assignment& beta) {
      Assignment result;
      for (Variable e : existentials) result.set(e, beta.at(e));
      return result;
    };
    r.backward_witness = [existentials, adversary](const Assignment& beta) {
      Assignment result = adversary;
      for (Variable e : existentials) result.set(e, beta.at(e));
      return result;
    };
    r.universal_embedding = [adversary](const Assignment&) { return adversary; };
    return {r, std::nullopt};
  }
  throw PreconditionError("unknown route: " + route);
}

}  // namespace qbforge
