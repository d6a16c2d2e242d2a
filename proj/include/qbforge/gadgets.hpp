#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qbforge/formula.hpp"
#include "qbforge/formula_ops.hpp"
#include "qbforge/oracle.hpp"

namespace qbforge {

/// Declared behaviour of a gadget: an extension of the interface assignment
/// over the fresh existentials exists (for every fresh-universal assignment,
/// when the gadget has any) iff `admits` holds.
struct ExtensionContract {
  Semantics semantics = Semantics::sat;
  std::function<bool(const Assignment&)> admits;
  std::string claim;
};

struct GadgetInstance {
  std::string name;
  std::vector<Clause> clauses;
  std::vector<Variable> fresh_existentials;
  std::vector<Variable> fresh_universals;
  std::vector<Variable> interface;     // deduped, first-use order
  std::vector<Variable> universal_ok;  // interface variables that may be universally quantified
  ExtensionContract contract;
  /// Deterministic completion rule: given interface (and fresh-universal)
  /// values admitted by the contract, yields fresh-existential values that
  /// satisfy every clause. Null when the gadget has no fresh existentials.
  std::function<Assignment(const Assignment&)> complete;
};

GadgetInstance build_S(Literal l1, Literal l2, Literal l3, VariableAllocator& alloc);
GadgetInstance build_S_universal(Literal l1, Literal l2, Literal l3, VariableAllocator& alloc);
GadgetInstance build_x2(Variable x, VariableAllocator& alloc);
GadgetInstance build_E(Variable x, VariableAllocator& alloc);
GadgetInstance build_Q1(VariableAllocator& alloc);
GadgetInstance build_Q3(VariableAllocator& alloc);
GadgetInstance build_E_forall(Variable d, VariableAllocator& alloc);
GadgetInstance build_NE_aux(Variable x, Variable y, VariableAllocator& alloc);
GadgetInstance build_EQ(Variable x, Variable y, VariableAllocator& alloc);
GadgetInstance build_NE(Variable x, Variable y, VariableAllocator& alloc);
GadgetInstance build_P1(Variable x, VariableAllocator& alloc);

struct ContractReport {
  bool pass = false;
  std::string detail;
  std::optional<Assignment> mismatch;  // first interface (plus fresh-universal) assignment that disagrees
};

/// Exhaustively checks the declared contract: for every interface assignment,
/// extension existence (universally quantified over fresh universals) must
/// match the predicate, and the completion rule must reproduce a satisfying
/// extension whenever the predicate admits one.
ContractReport verify_contract(const GadgetInstance& gadget, Budget budget = {});

/// Appearance counts over the gadget's own clauses.
std::map<Variable, AppearanceCount> gadget_appearances(const GadgetInstance& gadget);

std::vector<std::string> gadget_catalog_names();
GadgetInstance build_catalog_gadget(const std::string& name, VariableAllocator& alloc);

}  // namespace qbforge
