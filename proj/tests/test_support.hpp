#pragma once

#include <string>

#include "qbforge/formula.hpp"
#include "qbforge/io.hpp"

namespace qbforge::test {

/// Builds a formula from inline QEXT text (leading newline and indentation
/// stripped per line) so fixtures read naturally in test sources.
inline QuantifiedFormula qext(const std::string& body) {
  std::string cleaned;
  std::size_t i = 0;
  if (!body.empty() && body[0] == '\n') i = 1;
  bool at_line_start = true;
  for (; i < body.size(); ++i) {
    char ch = body[i];
    if (at_line_start && (ch == ' ' || ch == '\t')) continue;
    at_line_start = (ch == '\n');
    cleaned.push_back(ch);
  }
  return parse_qext(cleaned);
}

inline Assignment assignment(std::initializer_list<std::pair<Variable, bool>> pairs) {
  Assignment a;
  for (const auto& [v, b] : pairs) a.set(v, b);
  return a;
}

}  // namespace qbforge::test
