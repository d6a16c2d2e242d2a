#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qbforge/formula.hpp"

namespace qbforge {

/// Work cap for one oracle query. Every decision, propagation, and enumerated
/// assignment charges one unit; overruns raise BudgetExceededError, never a
/// wrong answer.
struct Budget {
  std::uint64_t max_evaluations = 1ull << 24;
};

struct OracleOptions {
  /// Components whose universal block is larger than this are decided by the
  /// candidate-extension-set loop instead of plain lexicographic enumeration.
  /// Both paths return identical verdicts and counterexamples.
  std::size_t enumeration_threshold = 14;
  /// When set, receives the number of budget units the query consumed.
  std::uint64_t* used_out = nullptr;
};

struct OracleVerdict {
  bool yes = false;
  /// Universal assignment with no satisfying extension; present iff NO and the
  /// formula has universal variables. Always the lexicographically first one
  /// (prefix order, F before T).
  std::optional<Assignment> counterexample;
  /// Total satisfying assignment; present iff YES on an unquantified query.
  std::optional<Assignment> witness;
};

/// Decides satisfiability / nae-satisfiability of an unquantified matrix by
/// complete early-exit search. Universal variables are treated as existential.
OracleVerdict decide_matrix(const std::vector<Clause>& matrix, Semantics semantics, Budget budget = {});
OracleVerdict decide_matrix(const QuantifiedFormula& formula, Budget budget = {});

/// Ground-truth two-block decision: YES iff every universal assignment has a
/// satisfying (or nae-satisfying) existential extension.
OracleVerdict decide_forall_exists(const QuantifiedFormula& formula, Budget budget = {},
                                   const OracleOptions& options = {});

struct EquivalenceReport {
  bool agree = false;
  OracleVerdict source;
  OracleVerdict target;
  std::string detail;
};

EquivalenceReport check_equivalence(const QuantifiedFormula& source, const QuantifiedFormula& target,
                                    Budget budget = {}, const OracleOptions& options = {});

/// Complete search for values of `free_vars` satisfying every clause given the
/// fixed partial assignment. Returns the deterministic first solution found
/// (covering exactly the free variables), or nullopt.
std::optional<Assignment> find_extension(const std::vector<Clause>& matrix, Semantics semantics,
                                         const Assignment& fixed, std::span<const Variable> free_vars,
                                         Budget budget = {});

}  // namespace qbforge
