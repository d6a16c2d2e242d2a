#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qbforge/formula.hpp"
#include "qbforge/formula_ops.hpp"
#include "qbforge/validate.hpp"

namespace qbforge {

/// Translates a total satisfying assignment of one side into one of the other.
using WitnessMap = std::function<Assignment(const Assignment&)>;

struct TraceStep {
  std::string name;
  std::string detail;
};

struct ReductionTrace {
  std::string route;
  std::vector<TraceStep> steps;
  std::string to_string() const;
};

struct ReductionResult {
  QuantifiedFormula target;
  /// total satisfying source assignment -> total satisfying target assignment
  WitnessMap forward_witness;
  /// total satisfying target assignment -> total satisfying source assignment;
  /// guaranteed on the branch named by universal_embedding
  WitnessMap backward_witness;
  /// source universal assignment -> the target universal branch on which the
  /// backward translation is proof-valid
  WitnessMap universal_embedding;
  ReductionTrace trace;
  /// asserted polynomial size bound for this run (clause count)
  std::size_t clause_bound = 0;
};

/// Copy bookkeeping for appearance-splitting steps: appearances are numbered
/// clause-then-atom order; the numbering style (single sequence, per polarity,
/// monotone) is the route's.
struct SplitPlan {
  struct Entry {
    Variable source;
    int unnegated = 0;
    int negated = 0;
    std::vector<Variable> copies;
    int total() const { return unnegated + negated; }
  };
  std::vector<Entry> entries;
  const Entry* find(Variable source) const {
    for (const auto& e : entries)
      if (e.source == source) return &e;
    return nullptr;
  }
};

/// Turns every universal variable into an existential twin forced equal to a
/// fresh universal through two linking 2-clauses (NAE semantics).
ReductionResult universalize_nae(const QuantifiedFormula& formula, VariableAllocator& alloc);

/// Four-step expansion from NAE to SAT: appearance splitting, complement
/// doubling, cyclic copy chains, and E-enforcer patching of every 2-clause.
/// Existential variables appearing once are first padded with a tautological
/// 2-clause; unused existentials are dropped. Output: every variable at
/// (2,2), every clause a 3-clause over distinct variables.
ReductionResult berman_expand(const QuantifiedFormula& formula, VariableAllocator& alloc);

/// Appends Q1 (resp. Q3) copies until the blocks balance.
ReductionResult balance_q1(const QuantifiedFormula& formula, VariableAllocator& alloc);
ReductionResult balance_q3(const QuantifiedFormula& formula, VariableAllocator& alloc);

/// normalize -> universalize -> expand -> balance with Q1; target is balanced
/// (2,2,2,2). A degenerate source short-circuits to the no-verdict.
std::variant<ReductionResult, VerdictNo> reduce_to_balanced_2222(const QuantifiedFormula& formula,
                                                                 VariableAllocator& alloc);

/// Balanced (2,2,2,2) to balanced (1,1,2,2): universal replacement through
/// S_u pairs, polarity-paired 4-way splitting, d-chains with x2 enforcers,
/// then Q3 balancing.
ReductionResult balanced_2222_to_1122(const QuantifiedFormula& formula, VariableAllocator& alloc);

enum class PolarityVariant {
  base_1021,   // one fresh universal per 2-clause, appended unnegated
  univ_0121,   // universal literals negated
  exist_1012,  // existential literals negated
  all_0112,    // every literal negated
};

/// 3-SAT-(3) under R1/R2 to a forall-exists instance with the variant's
/// profile; satisfiable iff the target is a yes-instance.
ReductionResult sat3_bounded_to_forallexists(const QuantifiedFormula& formula, PolarityVariant variant,
                                             VariableAllocator& alloc);

struct PolarityNormalization {
  QuantifiedFormula formula;
  std::vector<Variable> flipped;
};

/// Flips every (1,2)-profile variable so all variables sit at (2,1).
PolarityNormalization normalize_polarity(const QuantifiedFormula& formula);

enum class ExistentialProfile { t21, t12 };

/// Balanced (1,1,2,2) to (1,1,2,1) or (1,1,1,2): 4-way splitting with
/// E_forall-guarded chain clauses, then the variant's polarity flip.
ReductionResult balanced_1122_to_112x(const QuantifiedFormula& formula, ExistentialProfile profile,
                                      VariableAllocator& alloc);

/// NAE to monotone (1,4) with at most one universal per clause: EQ-coupled
/// universal copies, monotone appearance splitting with EQ/NE chains, and P1
/// padding to exactly four appearances.
ReductionResult nae_to_monotone_14(const QuantifiedFormula& formula, VariableAllocator& alloc);

/// Monotone (1,4) to monotone linear (1,3) via the 8-cycle gadget (per source
/// existential: 8 copies, 8 links, 16 fresh universals, 20 clauses).
ReductionResult monotone14_to_monotone13_linear(const QuantifiedFormula& formula,
                                                VariableAllocator& alloc);

/// Deletes all universal literals (each universal must appear at most once;
/// SAT semantics). A clause shrinking to empty is an immediate no-verdict.
std::variant<QuantifiedFormula, VerdictNo> strip_universal_literals(const QuantifiedFormula& formula);

// ---- route registry ---------------------------------------------------------

struct RouteOutcome {
  std::optional<ReductionResult> result;
  std::optional<VerdictNo> no;  // degenerate source short-circuit
};

std::vector<std::string> route_names();
RouteOutcome run_route(const std::string& route, const QuantifiedFormula& formula,
                       VariableAllocator& alloc);
/// Class the route's target is declared to satisfy.
const ClassSpec& route_target_class(const std::string& route);

}  // namespace qbforge
