#include "qbforge/formula.hpp"

#include <set>

namespace qbforge {

void QuantifiedFormula::check_structure() const {
  std::set<Variable> seen;
  for (Variable v : universals) {
    if (v <= 0) throw PreconditionError("variable ids must be positive");
    if (!seen.insert(v).second)
      throw PreconditionError("variable " + std::to_string(v) + " declared twice");
  }
  for (Variable v : existentials) {
    if (v <= 0) throw PreconditionError("variable ids must be positive");
    if (!seen.insert(v).second)
      throw PreconditionError("variable " + std::to_string(v) + " declared twice");
  }
  for (std::size_t j = 0; j < matrix.size(); ++j) {
    for (const auto& atom : matrix[j].atoms()) {
      if (atom.is_literal() && seen.count(atom.literal().var) == 0)
        throw PreconditionError("clause " + std::to_string(j + 1) + " uses undeclared variable " +
                                std::to_string(atom.literal().var));
    }
  }
  if (has_constants() && !universals.empty())
    throw PreconditionError("constants are only permitted in formulas without universal variables");
}

}  // namespace qbforge
