#include "qbforge/generator.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "qbforge/formula_ops.hpp"
#include "qbforge/validate.hpp"

namespace qbforge {
namespace {

using Rng = std::mt19937_64;

struct SlotProblem {
  std::vector<ClauseAtom> slots;       // multiset of atoms to distribute
  std::vector<std::size_t> clause_sizes;
  std::vector<Variable> universals;
  std::vector<Variable> existentials;
  Semantics semantics = Semantics::nae;
  bool max_one_universal = false;
  bool linear = false;
};

bool clause_ok(const SlotProblem& p, const std::vector<ClauseAtom>& atoms) {
  std::vector<Variable> vars;
  int universal_count = 0;
  for (const auto& a : atoms)
    if (a.is_literal()) {
      vars.push_back(a.literal().var);
      if (std::find(p.universals.begin(), p.universals.end(), a.literal().var) != p.universals.end())
        ++universal_count;
    }
  std::sort(vars.begin(), vars.end());
  if (std::adjacent_find(vars.begin(), vars.end()) != vars.end()) return false;
  if (p.max_one_universal && universal_count > 1) return false;
  return true;
}

std::vector<std::vector<ClauseAtom>> partition(const SlotProblem& p, const std::vector<ClauseAtom>& slots) {
  std::vector<std::vector<ClauseAtom>> clauses;
  std::size_t at = 0;
  for (std::size_t size : p.clause_sizes) {
    clauses.emplace_back(slots.begin() + static_cast<std::ptrdiff_t>(at),
                         slots.begin() + static_cast<std::ptrdiff_t>(at + size));
    at += size;
  }
  return clauses;
}

bool linear_ok(const std::vector<std::vector<ClauseAtom>>& clauses) {
  std::set<std::pair<Variable, Variable>> pairs;
  for (const auto& atoms : clauses) {
    std::vector<Variable> vars;
    for (const auto& a : atoms)
      if (a.is_literal()) vars.push_back(a.literal().var);
    std::sort(vars.begin(), vars.end());
    for (std::size_t i = 0; i < vars.size(); ++i)
      for (std::size_t j = i + 1; j < vars.size(); ++j)
        if (!pairs.insert({vars[i], vars[j]}).second) return false;
  }
  return true;
}

// Shuffle the slot multiset into clauses, then repair local violations by
// swapping atoms across clauses; rejects and reshuffles when stuck.
QuantifiedFormula solve_slots(const SlotProblem& p, Rng& rng, int max_attempts) {
  std::size_t total = 0;
  for (std::size_t s : p.clause_sizes) total += s;
  if (total != p.slots.size())
    throw PreconditionError("slot count " + std::to_string(p.slots.size()) +
                            " does not match clause capacity " + std::to_string(total) +
                            "; adjust the requested counts");

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<ClauseAtom> slots = p.slots;
    std::shuffle(slots.begin(), slots.end(), rng);
    auto clauses = partition(p, slots);

    bool ok = false;
    for (int pass = 0; pass < 200; ++pass) {
      ok = true;
      for (std::size_t i = 0; i < clauses.size() && ok; ++i)
        if (!clause_ok(p, clauses[i])) ok = false;
      if (ok) break;
      // swap a random atom of a violating clause with a random atom elsewhere
      std::vector<std::size_t> bad;
      for (std::size_t i = 0; i < clauses.size(); ++i)
        if (!clause_ok(p, clauses[i])) bad.push_back(i);
      std::uniform_int_distribution<std::size_t> pick_bad(0, bad.size() - 1);
      std::uniform_int_distribution<std::size_t> pick_clause(0, clauses.size() - 1);
      std::size_t b = bad[pick_bad(rng)];
      std::size_t o = pick_clause(rng);
      if (o == b) continue;
      std::uniform_int_distribution<std::size_t> pick_in_b(0, clauses[b].size() - 1);
      std::uniform_int_distribution<std::size_t> pick_in_o(0, clauses[o].size() - 1);
      std::swap(clauses[b][pick_in_b(rng)], clauses[o][pick_in_o(rng)]);
    }
    if (!ok) continue;
    if (p.linear && !linear_ok(clauses)) continue;

    QuantifiedFormula f;
    f.semantics = p.semantics;
    f.universals = p.universals;
    f.existentials = p.existentials;
    for (auto& atoms : clauses) f.matrix.push_back(Clause(std::move(atoms)));
    f.check_structure();
    return f;
  }
  throw Error("instance generation hit the attempt limit; try different counts or another seed");
}

void require_counts(bool ok, const std::string& message) {
  if (!ok) throw PreconditionError(message);
}

QuantifiedFormula generate(const GeneratorConfig& cfg, Rng& rng) {
  const int p = cfg.universals, q = cfg.existentials, m = cfg.clauses;
  const auto ids = [](int first, int count) {
    std::vector<Variable> out;
    for (int i = 0; i < count; ++i) out.push_back(first + i);
    return out;
  };

  if (cfg.class_name == "nae3" || cfg.class_name == "sat3" || cfg.class_name == "nae23") {
    require_counts(p + q >= 3 && m >= 1, "need at least three variables and one clause");
    QuantifiedFormula f;
    f.semantics = cfg.class_name == "sat3" ? Semantics::sat : Semantics::nae;
    f.universals = ids(1, p);
    f.existentials = ids(p + 1, q);
    std::uniform_int_distribution<int> var(1, p + q);
    std::uniform_int_distribution<int> flip(0, 1);
    std::uniform_int_distribution<int> size_die(2, 3);
    for (int j = 0; j < m; ++j) {
      const int size = cfg.class_name == "nae23" ? size_die(rng) : 3;
      std::set<Variable> vars;
      while (static_cast<int>(vars.size()) < size) vars.insert(var(rng));
      std::vector<ClauseAtom> atoms;
      for (Variable v : vars) atoms.push_back(Literal{v, flip(rng) == 1});
      std::shuffle(atoms.begin(), atoms.end(), rng);
      f.matrix.push_back(Clause(std::move(atoms)));
    }
    return f;
  }

  if (cfg.class_name == "3sat3") {
    // every variable (2,1); a third of the clauses are 2-clauses when possible
    require_counts(q >= 3, "3sat3 needs at least three variables");
    const int n = q;
    int m2 = (n >= 4) ? 3 : 0;  // 2m2 + 3m3 = 3n forces m2 divisible by 3
    int m3 = n - 2 * m2 / 3;
    SlotProblem sp;
    sp.semantics = Semantics::sat;
    sp.existentials = ids(1, n);
    for (Variable v : sp.existentials) {
      sp.slots.push_back(pos(v));
      sp.slots.push_back(pos(v));
      sp.slots.push_back(neg(v));
    }
    sp.clause_sizes.assign(static_cast<std::size_t>(m2), 2);
    sp.clause_sizes.insert(sp.clause_sizes.end(), static_cast<std::size_t>(m3), 3);
    return solve_slots(sp, rng, cfg.max_attempts);
  }

  if (cfg.class_name == "b2222" || cfg.class_name == "b1122") {
    const bool full = cfg.class_name == "b2222";
    require_counts(p > 0 && (full ? p % 3 == 0 : true), full ? "b2222 needs p divisible by 3" : "");
    SlotProblem sp;
    sp.semantics = Semantics::sat;
    sp.universals = ids(1, p);
    sp.existentials = ids(p + 1, p);
    for (Variable v : sp.universals) {
      sp.slots.push_back(pos(v));
      sp.slots.push_back(neg(v));
      if (full) {
        sp.slots.push_back(pos(v));
        sp.slots.push_back(neg(v));
      }
    }
    for (Variable v : sp.existentials) {
      sp.slots.push_back(pos(v));
      sp.slots.push_back(pos(v));
      sp.slots.push_back(neg(v));
      sp.slots.push_back(neg(v));
    }
    require_counts(sp.slots.size() % 3 == 0, "profile slots must fill 3-clauses exactly");
    sp.clause_sizes.assign(sp.slots.size() / 3, 3);
    return solve_slots(sp, rng, cfg.max_attempts);
  }

  if (cfg.class_name == "mono14" || cfg.class_name == "mono12" || cfg.class_name == "mono-s1" ||
      cfg.class_name == "mono-s2" || cfg.class_name == "mono-s2-1u" || cfg.class_name == "mono13lin") {
    int per_existential = 4;
    if (cfg.class_name == "mono12" || cfg.class_name == "mono-s2" || cfg.class_name == "mono-s2-1u")
      per_existential = 2;
    if (cfg.class_name == "mono-s1") per_existential = 1;
    if (cfg.class_name == "mono13lin") per_existential = 3;

    SlotProblem sp;
    sp.semantics = Semantics::nae;
    sp.universals = ids(1, p);
    sp.existentials = ids(p + 1, q);
    sp.max_one_universal = cfg.class_name == "mono14" || cfg.class_name == "mono-s2-1u" ||
                           cfg.class_name == "mono13lin";
    sp.linear = cfg.class_name == "mono13lin";

    const int existential_slots = per_existential * q;
    const int universal_slots = 3 * m - existential_slots;
    require_counts(universal_slots >= 0, "too few clauses for the existential profile");
    int s = 1;
    if (cfg.class_name == "mono-s1" || cfg.class_name == "mono-s2" || cfg.class_name == "mono-s2-1u") {
      require_counts(p == 0 ? universal_slots == 0 : universal_slots % p == 0,
                     "universal appearances must divide evenly (pick counts with p | 3m - t*q)");
      s = p == 0 ? 0 : universal_slots / p;
    } else {
      require_counts(universal_slots == p,
                     "this class uses each universal exactly once (pick counts with 3m = p + t*q)");
    }
    for (Variable v : sp.universals)
      for (int k = 0; k < s; ++k) sp.slots.push_back(pos(v));
    for (Variable v : sp.existentials)
      for (int k = 0; k < per_existential; ++k) sp.slots.push_back(pos(v));
    sp.clause_sizes.assign(static_cast<std::size_t>(m), 3);
    return solve_slots(sp, rng, cfg.max_attempts);
  }

  if (cfg.class_name == "mc2") {
    require_counts(q >= 3 && m >= 1 && 3 * m >= 2 * q, "mc2 needs 3m >= 2q");
    SlotProblem sp;
    sp.semantics = Semantics::nae;
    sp.existentials = ids(1, q);
    for (Variable v : sp.existentials) {
      sp.slots.push_back(pos(v));
      sp.slots.push_back(pos(v));
    }
    std::uniform_int_distribution<int> coin(0, 1);
    for (int k = 0; k < 3 * m - 2 * q; ++k) sp.slots.push_back(constant_atom(coin(rng) == 1));
    sp.clause_sizes.assign(static_cast<std::size_t>(m), 3);
    return solve_slots(sp, rng, cfg.max_attempts);
  }

  throw PreconditionError("unknown generator class: " + cfg.class_name);
}

}  // namespace

QuantifiedFormula generate_instance(const GeneratorConfig& config) {
  Rng rng(config.seed);
  return generate(config, rng);
}

std::vector<std::string> generator_class_names() {
  return {"nae3", "nae23", "sat3",    "3sat3",   "b2222", "b1122",
          "mono14", "mono12", "mono-s1", "mono-s2", "mono-s2-1u", "mono13lin", "mc2"};
}

}  // namespace qbforge
