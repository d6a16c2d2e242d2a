#pragma once

#include <map>
#include <span>
#include <variant>
#include <vector>

#include "qbforge/formula.hpp"

namespace qbforge {

struct AppearanceCount {
  int unnegated = 0;
  int negated = 0;
  int total() const { return unnegated + negated; }
  friend bool operator==(const AppearanceCount&, const AppearanceCount&) = default;
};

/// Occurrence counts of `var` over the matrix only. The variable must be
/// declared in the prefix.
AppearanceCount count_appearances(const QuantifiedFormula& formula, Variable var);

/// One-pass counts for every declared variable (absent from matrix -> (0,0)).
std::map<Variable, AppearanceCount> count_all_appearances(const QuantifiedFormula& formula);

/// Flips the polarity of every literal; atom order preserved. Constant atoms
/// are an error.
Clause complement_clause(const Clause& clause);

struct Replacement {
  Variable from;
  std::variant<Variable, bool> to;  // rename or constant substitution
};

/// Simultaneous substitution over the matrix. A variable target renames the
/// prefix entry in place when the target is fresh; a constant target removes
/// the source from the prefix (x -> b sends ~x to the complementary constant).
QuantifiedFormula substitute(const QuantifiedFormula& formula, std::span<const Replacement> replacements);

/// Value of an atom under a (possibly partial) assignment; nullopt when the
/// atom's variable is unassigned.
std::optional<bool> atom_value(const ClauseAtom& atom, const Assignment& assignment);

/// SAT: some atom true. NAE: some atom true and some atom false (constants
/// count as atoms). The assignment must cover the clause's variables.
bool evaluate_clause(const Clause& clause, const Assignment& assignment, Semantics semantics);

bool evaluate_matrix(const std::vector<Clause>& matrix, const Assignment& assignment, Semantics semantics);

/// A clause no assignment can nae-satisfy: all atoms are the same literal or
/// the same constant (includes every 1-atom clause).
bool clause_never_nae(const Clause& clause);

/// A clause every assignment nae-satisfies: contains a complementary literal
/// pair or both constants.
bool clause_always_nae(const Clause& clause);

struct VerdictNo {
  std::size_t clause_index;
  std::string reason;
};

/// NAE-semantics cleanup: drops always-nae-satisfied clauses and returns an
/// immediate no-verdict when a clause can never be nae-satisfied.
std::variant<QuantifiedFormula, VerdictNo> normalize_degenerate_clauses(const QuantifiedFormula& formula);

/// Flips every literal of `var` in the matrix.
void flip_variable_polarity(QuantifiedFormula& formula, Variable var);

}  // namespace qbforge
