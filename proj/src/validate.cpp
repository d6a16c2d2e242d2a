#include "qbforge/validate.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qbforge {

ClassSpec ClassSpec::balanced_profile(int s1, int s2, int t1, int t2) {
  ClassSpec spec = ae_profile(s1, s2, t1, t2);
  spec.name = "balanced-" + spec.name;
  spec.balanced = true;
  return spec;
}

ClassSpec ClassSpec::ae_profile(int s1, int s2, int t1, int t2) {
  ClassSpec spec;
  spec.name = "ae3sat-" + std::to_string(s1) + std::to_string(s2) + std::to_string(t1) + std::to_string(t2);
  spec.semantics = Semantics::sat;
  spec.shape = Shape::three_distinct;
  spec.no_constants = true;
  spec.universal_polarity = {s1, s2};
  spec.existential_polarity = {t1, t2};
  return spec;
}

ClassSpec ClassSpec::sat3_bounded() {
  ClassSpec spec;
  spec.name = "3sat3";
  spec.semantics = Semantics::sat;
  spec.shape = Shape::two_or_three_distinct;
  spec.no_constants = true;
  spec.no_universals = true;
  spec.existential_polarity = {2, 1};
  return spec;
}

ClassSpec ClassSpec::monotone_nae(std::optional<int> s, int t, bool one_universal_per_clause,
                                  bool require_linear) {
  ClassSpec spec;
  std::ostringstream name;
  name << "mono-nae-(" << (s ? std::to_string(*s) : "s") << "," << t << ")";
  if (one_universal_per_clause) name << "-1u";
  if (require_linear) name << "-linear";
  spec.name = name.str();
  spec.semantics = Semantics::nae;
  spec.monotone = true;
  spec.linear = require_linear;
  spec.max_one_universal = one_universal_per_clause;
  spec.shape = Shape::three_distinct;
  spec.no_constants = true;
  if (s)
    spec.universal_total = *s;
  else
    spec.universal_total_uniform = true;
  spec.existential_total = t;
  return spec;
}

ClassSpec ClassSpec::mc_nae(int t) {
  ClassSpec spec;
  spec.name = "mc-nae-" + std::to_string(t);
  spec.semantics = Semantics::nae;
  spec.monotone = true;
  spec.no_universals = true;
  spec.shape = Shape::mc_three_atoms;
  spec.existential_total = t;
  return spec;
}

bool ClassReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ClassCheck& c) { return c.pass; });
}

std::string ClassReport::summary() const {
  std::ostringstream out;
  out << "class " << spec_name << ": " << (pass() ? "pass" : "FAIL");
  for (const auto& c : checks)
    if (!c.pass) out << "\n  " << c.predicate << ": " << c.detail;
  return out.str();
}

namespace {

std::string clause_ref(std::size_t index) { return "clause " + std::to_string(index + 1); }

}  // namespace

ClassReport validate_class(const QuantifiedFormula& formula, const ClassSpec& spec) {
  ClassReport report;
  report.spec_name = spec.name.empty() ? "(anonymous)" : spec.name;
  auto add = [&](std::string predicate, bool pass, std::string detail = "") {
    report.checks.push_back({std::move(predicate), pass, std::move(detail)});
  };

  if (spec.semantics)
    add("semantics", formula.semantics == *spec.semantics,
        std::string("expected ") + to_string(*spec.semantics) + ", got " + to_string(formula.semantics));

  if (spec.no_universals)
    add("no-universals", formula.universals.empty(),
        std::to_string(formula.universals.size()) + " universal variables present");

  if (spec.balanced)
    add("balanced", formula.universals.size() == formula.existentials.size(),
        std::to_string(formula.universals.size()) + " universals vs " +
            std::to_string(formula.existentials.size()) + " existentials");

  if (spec.no_constants) {
    bool ok = true;
    std::string detail;
    for (std::size_t j = 0; j < formula.matrix.size() && ok; ++j)
      if (formula.matrix[j].has_constant()) {
        ok = false;
        detail = clause_ref(j) + " contains a constant";
      }
    add("no-constants", ok, detail);
  }

  if (spec.monotone) {
    bool ok = true;
    std::string detail;
    for (std::size_t j = 0; j < formula.matrix.size() && ok; ++j)
      for (const auto& atom : formula.matrix[j].atoms())
        if (atom.is_literal() && atom.literal().negated) {
          ok = false;
          detail = clause_ref(j) + " contains negated variable " + std::to_string(atom.literal().var);
          break;
        }
    add("monotone", ok, detail);
  }

  if (spec.shape != ClassSpec::Shape::any) {
    bool ok = true;
    std::string detail;
    for (std::size_t j = 0; j < formula.matrix.size() && ok; ++j) {
      const Clause& c = formula.matrix[j];
      switch (spec.shape) {
        case ClassSpec::Shape::three_distinct:
          if (c.size() != 3 || c.has_constant() || !c.distinct_variables()) {
            ok = false;
            detail = clause_ref(j) + " is not a 3-clause over three distinct variables";
          }
          break;
        case ClassSpec::Shape::two_or_three_distinct:
          if (c.size() < 2 || c.has_constant() || !c.distinct_variables()) {
            ok = false;
            detail = clause_ref(j) + " is not a 2- or 3-clause over distinct variables";
          }
          break;
        case ClassSpec::Shape::mc_three_atoms:
          if (c.size() != 3 || !c.distinct_variables()) {
            ok = false;
            detail = clause_ref(j) + " is not a 3-atom clause over distinct variables";
          }
          break;
        case ClassSpec::Shape::any:
          break;
      }
    }
    add("clause-shape", ok, detail);
  }

  if (spec.linear) {
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < formula.matrix.size() && ok; ++i) {
      auto vi = formula.matrix[i].variables();
      std::sort(vi.begin(), vi.end());
      for (std::size_t j = i + 1; j < formula.matrix.size() && ok; ++j) {
        auto vj = formula.matrix[j].variables();
        std::sort(vj.begin(), vj.end());
        std::vector<Variable> shared;
        std::set_intersection(vi.begin(), vi.end(), vj.begin(), vj.end(), std::back_inserter(shared));
        if (shared.size() > 1) {
          ok = false;
          detail = clause_ref(i) + " and " + clause_ref(j) + " share " + std::to_string(shared.size()) +
                   " variables";
        }
      }
    }
    add("linear", ok, detail);
  }

  if (spec.max_one_universal) {
    bool ok = true;
    std::string detail;
    for (std::size_t j = 0; j < formula.matrix.size() && ok; ++j) {
      int universals_in_clause = 0;
      for (Variable v : formula.matrix[j].variables())
        if (formula.is_universal(v)) ++universals_in_clause;
      if (universals_in_clause > 1) {
        ok = false;
        detail = clause_ref(j) + " contains " + std::to_string(universals_in_clause) + " universal variables";
      }
    }
    add("max-one-universal", ok, detail);
  }

  const bool needs_counts = spec.universal_polarity || spec.existential_polarity || spec.universal_total ||
                            spec.existential_total || spec.universal_total_uniform;
  if (needs_counts) {
    auto counts = count_all_appearances(formula);
    auto check_block = [&](const std::vector<Variable>& block, const char* kind,
                           std::optional<std::pair<int, int>> polarity, std::optional<int> total,
                           bool uniform_total) {
      if (polarity) {
        bool ok = true;
        std::string detail;
        for (Variable v : block) {
          const auto& c = counts.at(v);
          if (c.unnegated != polarity->first || c.negated != polarity->second) {
            ok = false;
            detail = std::string(kind) + " variable " + std::to_string(v) + " has profile (" +
                     std::to_string(c.unnegated) + "," + std::to_string(c.negated) + "), expected (" +
                     std::to_string(polarity->first) + "," + std::to_string(polarity->second) + ")";
            break;
          }
        }
        add(std::string(kind) + "-polarity-profile", ok, detail);
      }
      if (total || uniform_total) {
        bool ok = true;
        std::string detail;
        std::optional<int> expected = total;
        for (Variable v : block) {
          int t = counts.at(v).total();
          if (!expected) expected = t;
          if (t != *expected) {
            ok = false;
            detail = std::string(kind) + " variable " + std::to_string(v) + " appears " + std::to_string(t) +
                     " times, expected " + std::to_string(*expected);
            break;
          }
        }
        add(std::string(kind) + "-appearance-total", ok, detail);
      }
    };
    check_block(formula.universals, "universal", spec.universal_polarity, spec.universal_total,
                spec.universal_total_uniform);
    check_block(formula.existentials, "existential", spec.existential_polarity, spec.existential_total,
                false);
  }

  return report;
}

const std::map<std::string, ClassSpec>& named_class_specs() {
  static const std::map<std::string, ClassSpec> specs = [] {
    std::map<std::string, ClassSpec> m;
    auto put = [&](const std::string& key, ClassSpec spec) {
      spec.name = key;
      m.emplace(key, std::move(spec));
    };
    put("b2222", ClassSpec::balanced_profile(2, 2, 2, 2));
    put("b1122", ClassSpec::balanced_profile(1, 1, 2, 2));
    put("ae1021", ClassSpec::ae_profile(1, 0, 2, 1));
    put("ae0121", ClassSpec::ae_profile(0, 1, 2, 1));
    put("ae1012", ClassSpec::ae_profile(1, 0, 1, 2));
    put("ae0112", ClassSpec::ae_profile(0, 1, 1, 2));
    put("ae1121", ClassSpec::ae_profile(1, 1, 2, 1));
    put("ae1112", ClassSpec::ae_profile(1, 1, 1, 2));
    put("3sat3", ClassSpec::sat3_bounded());
    put("mono14", ClassSpec::monotone_nae(1, 4, true));
    put("mono13lin", ClassSpec::monotone_nae(1, 3, true, true));
    put("mono-s1", ClassSpec::monotone_nae(std::nullopt, 1, false));
    put("mono-s2", ClassSpec::monotone_nae(std::nullopt, 2, false));
    put("mono-s2-1u", ClassSpec::monotone_nae(std::nullopt, 2, true));
    put("mono12", ClassSpec::monotone_nae(1, 2, false));
    put("mc2", ClassSpec::mc_nae(2));
    return m;
  }();
  return specs;
}

}  // namespace qbforge
