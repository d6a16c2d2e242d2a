#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qbforge/formula.hpp"

namespace qbforge {

/// Seeded random instance request. Identical config -> identical instance.
/// Counts must be achievable for the class (profiles constrain the clause
/// count); otherwise generation errors out suggesting the constraint.
struct GeneratorConfig {
  std::uint64_t seed = 0;
  std::string class_name = "nae3";
  int universals = 0;
  int existentials = 3;
  int clauses = 3;
  int max_attempts = 5000;
};

QuantifiedFormula generate_instance(const GeneratorConfig& config);

std::vector<std::string> generator_class_names();

}  // namespace qbforge
