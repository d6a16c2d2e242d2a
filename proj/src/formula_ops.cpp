#include "qbforge/formula_ops.hpp"

#include <set>

namespace qbforge {

AppearanceCount count_appearances(const QuantifiedFormula& formula, Variable var) {
  if (!formula.declares(var))
    throw PreconditionError("variable " + std::to_string(var) + " is not declared in the prefix");
  AppearanceCount count;
  for (const auto& clause : formula.matrix) {
    for (const auto& atom : clause.atoms()) {
      if (atom.is_literal() && atom.literal().var == var) {
        if (atom.literal().negated)
          ++count.negated;
        else
          ++count.unnegated;
      }
    }
  }
  return count;
}

std::map<Variable, AppearanceCount> count_all_appearances(const QuantifiedFormula& formula) {
  std::map<Variable, AppearanceCount> counts;
  for (Variable v : formula.universals) counts[v] = {};
  for (Variable v : formula.existentials) counts[v] = {};
  for (const auto& clause : formula.matrix) {
    for (const auto& atom : clause.atoms()) {
      if (!atom.is_literal()) continue;
      auto it = counts.find(atom.literal().var);
      if (it == counts.end())
        throw PreconditionError("matrix uses undeclared variable " + std::to_string(atom.literal().var));
      if (atom.literal().negated)
        ++it->second.negated;
      else
        ++it->second.unnegated;
    }
  }
  return counts;
}

Clause complement_clause(const Clause& clause) {
  std::vector<ClauseAtom> atoms;
  atoms.reserve(clause.size());
  for (const auto& atom : clause.atoms()) {
    if (atom.is_constant()) throw PreconditionError("cannot complement a clause containing constants");
    atoms.push_back(~atom.literal());
  }
  return Clause(std::move(atoms));
}

QuantifiedFormula substitute(const QuantifiedFormula& formula, std::span<const Replacement> replacements) {
  std::map<Variable, std::variant<Variable, bool>> map;
  for (const auto& r : replacements) {
    if (!map.emplace(r.from, r.to).second)
      throw PreconditionError("duplicate substitution source " + std::to_string(r.from));
  }

  QuantifiedFormula out = formula;
  for (auto& clause : out.matrix) {
    std::vector<ClauseAtom> atoms;
    atoms.reserve(clause.size());
    for (const auto& atom : clause.atoms()) {
      if (atom.is_literal()) {
        auto it = map.find(atom.literal().var);
        if (it != map.end()) {
          if (std::holds_alternative<Variable>(it->second)) {
            atoms.push_back(Literal{std::get<Variable>(it->second), atom.literal().negated});
          } else {
            bool value = std::get<bool>(it->second);
            atoms.push_back(constant_atom(atom.literal().negated ? !value : value));
          }
          continue;
        }
      }
      atoms.push_back(atom);
    }
    clause = Clause(std::move(atoms));
  }

  auto rewrite_block = [&](std::vector<Variable>& block) {
    std::vector<Variable> next;
    next.reserve(block.size());
    for (Variable v : block) {
      auto it = map.find(v);
      if (it == map.end()) {
        next.push_back(v);
      } else if (std::holds_alternative<Variable>(it->second)) {
        Variable target = std::get<Variable>(it->second);
        if (target == v || !formula.declares(target)) next.push_back(target);
        // target already declared elsewhere: source entry just disappears
      }
      // constant target: source entry disappears
    }
    block = std::move(next);
  };
  rewrite_block(out.universals);
  rewrite_block(out.existentials);
  out.check_structure();
  return out;
}

std::optional<bool> atom_value(const ClauseAtom& atom, const Assignment& assignment) {
  if (atom.is_constant()) return atom.constant_value();
  auto v = assignment.get(atom.literal().var);
  if (!v) return std::nullopt;
  return atom.literal().negated ? !*v : *v;
}

bool evaluate_clause(const Clause& clause, const Assignment& assignment, Semantics semantics) {
  bool some_true = false;
  bool some_false = false;
  for (const auto& atom : clause.atoms()) {
    auto v = atom_value(atom, assignment);
    if (!v)
      throw PreconditionError("assignment is partial on clause variable " +
                              std::to_string(atom.literal().var));
    (*v ? some_true : some_false) = true;
  }
  return semantics == Semantics::sat ? some_true : (some_true && some_false);
}

bool evaluate_matrix(const std::vector<Clause>& matrix, const Assignment& assignment, Semantics semantics) {
  for (const auto& clause : matrix)
    if (!evaluate_clause(clause, assignment, semantics)) return false;
  return true;
}

namespace {

// Treats atoms as value functions: two atoms always agree iff they are
// the same literal or the same constant.
bool atoms_identical(const ClauseAtom& a, const ClauseAtom& b) { return a == b; }

bool atoms_complementary(const ClauseAtom& a, const ClauseAtom& b) {
  if (a.is_literal() && b.is_literal()) return a.literal() == ~b.literal();
  if (a.is_constant() && b.is_constant()) return a.constant_value() != b.constant_value();
  return false;
}

}  // namespace

bool clause_never_nae(const Clause& clause) {
  const auto& atoms = clause.atoms();
  for (std::size_t i = 1; i < atoms.size(); ++i)
    if (!atoms_identical(atoms[0], atoms[i])) return false;
  return true;  // all atoms evaluate alike under every assignment
}

bool clause_always_nae(const Clause& clause) {
  const auto& atoms = clause.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = i + 1; j < atoms.size(); ++j)
      if (atoms_complementary(atoms[i], atoms[j])) return true;
  return false;
}

std::variant<QuantifiedFormula, VerdictNo> normalize_degenerate_clauses(const QuantifiedFormula& formula) {
  if (formula.semantics != Semantics::nae)
    throw PreconditionError("normalize_degenerate_clauses applies to NAE formulas");
  QuantifiedFormula out = formula;
  out.matrix.clear();
  for (std::size_t j = 0; j < formula.matrix.size(); ++j) {
    const Clause& clause = formula.matrix[j];
    if (clause_never_nae(clause))
      return VerdictNo{j, "clause " + std::to_string(j + 1) + " can never be nae-satisfied"};
    if (clause_always_nae(clause)) continue;
    out.matrix.push_back(clause);
  }
  return out;
}

void flip_variable_polarity(QuantifiedFormula& formula, Variable var) {
  for (auto& clause : formula.matrix) {
    std::vector<ClauseAtom> atoms;
    atoms.reserve(clause.size());
    for (const auto& atom : clause.atoms()) {
      if (atom.is_literal() && atom.literal().var == var)
        atoms.push_back(~atom.literal());
      else
        atoms.push_back(atom);
    }
    clause = Clause(std::move(atoms));
  }
}

}  // namespace qbforge
