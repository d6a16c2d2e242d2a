#pragma once

#include <string>
#include <string_view>

#include "qbforge/formula.hpp"

namespace qbforge {

/// QEXT, a line-oriented superset of QDIMACS covering NAE semantics and the
/// constants T/F:
///
///   c <comment>
///   p qext <nvars> <nclauses> <sat|nae>
///   a <ids> 0            (universal block, optional)
///   e <ids> 0            (existential block, optional)
///   <lit|T|F> ... 0      (one line per clause, 1-3 atoms)
///
/// Constants are rejected in sat files and in files declaring universal
/// variables. Errors carry line and column.
QuantifiedFormula parse_qext(std::string_view text);

/// Canonical form: header, 'a' line, 'e' line, clauses in matrix order.
/// Nothing is sorted; serialize(parse(doc)) is byte-identical on canonical
/// documents.
std::string serialize_qext(const QuantifiedFormula& formula);

/// Standard-conformant QDIMACS; requires SAT semantics and no constants.
std::string export_qdimacs(const QuantifiedFormula& formula);

/// Accepts two-block (forall-exists) QDIMACS; semantics is SAT.
QuantifiedFormula import_qdimacs(std::string_view text);

QuantifiedFormula read_formula_file(const std::string& path);  // dispatches on p-line
void write_file(const std::string& path, const std::string& content);

}  // namespace qbforge
