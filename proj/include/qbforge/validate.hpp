#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qbforge/formula.hpp"
#include "qbforge/formula_ops.hpp"

namespace qbforge {

/// Requested predicates for one formula class. Unset members are not checked.
struct ClassSpec {
  std::string name;
  std::optional<Semantics> semantics;

  bool monotone = false;
  bool linear = false;
  bool balanced = false;
  bool max_one_universal = false;
  bool no_universals = false;
  bool no_constants = false;

  enum class Shape {
    any,
    three_distinct,         // every clause a 3-clause over three distinct variables, no constants
    two_or_three_distinct,  // every clause a k-clause over k distinct variables, k in {2,3}, no constants
    mc_three_atoms,         // exactly three atoms, variables pairwise distinct, constants may repeat
  };
  Shape shape = Shape::any;

  std::optional<std::pair<int, int>> universal_polarity;    // exact (s1, s2) per universal
  std::optional<std::pair<int, int>> existential_polarity;  // exact (t1, t2) per existential
  std::optional<int> universal_total;                       // exact s per universal
  std::optional<int> existential_total;                     // exact t per existential
  bool universal_total_uniform = false;                     // some uniform s, value free

  static ClassSpec balanced_profile(int s1, int s2, int t1, int t2);
  static ClassSpec ae_profile(int s1, int s2, int t1, int t2);
  static ClassSpec sat3_bounded();  // R1 + R2: 2/3-clauses with distinct variables, every variable (2,1)
  static ClassSpec monotone_nae(std::optional<int> s, int t, bool one_universal_per_clause,
                                bool require_linear = false);
  static ClassSpec mc_nae(int t);
};

struct ClassCheck {
  std::string predicate;
  bool pass;
  std::string detail;  // first violating clause/variable on failure
};

struct ClassReport {
  std::string spec_name;
  std::vector<ClassCheck> checks;
  bool pass() const;
  std::string summary() const;
};

ClassReport validate_class(const QuantifiedFormula& formula, const ClassSpec& spec);

/// Named specs reachable from the CLI and the reduction routes.
const std::map<std::string, ClassSpec>& named_class_specs();

}  // namespace qbforge
