#include "qbforge/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "qbforge/formula_ops.hpp"

namespace qbforge {
namespace {

struct Meter {
  std::uint64_t limit;
  std::uint64_t used = 0;
  void charge(std::uint64_t n = 1) {
    used += n;
    if (used > limit) throw BudgetExceededError("oracle budget of " + std::to_string(limit) + " exceeded");
  }
};

constexpr std::int8_t kUnassigned = -1;

struct DenseAtom {
  int index = -1;  // -1 for constants
  bool negated = false;
  bool constant = false;
  bool constant_value = false;
};

struct DenseClause {
  std::vector<DenseAtom> atoms;
};

struct DenseProblem {
  std::vector<Variable> vars;  // position -> id
  std::map<Variable, int> index;
  std::vector<DenseClause> clauses;
  Semantics semantics = Semantics::sat;
};

DenseProblem densify(const std::vector<Clause>& matrix, Semantics semantics,
                     const std::vector<Variable>& vars) {
  DenseProblem p;
  p.vars = vars;
  p.semantics = semantics;
  for (std::size_t i = 0; i < vars.size(); ++i) p.index[vars[i]] = static_cast<int>(i);
  for (const auto& clause : matrix) {
    DenseClause dc;
    for (const auto& atom : clause.atoms()) {
      DenseAtom da;
      if (atom.is_constant()) {
        da.constant = true;
        da.constant_value = atom.constant_value();
      } else {
        auto it = p.index.find(atom.literal().var);
        if (it == p.index.end())
          throw PreconditionError("matrix variable " + std::to_string(atom.literal().var) +
                                  " not covered by the search variable set");
        da.index = it->second;
        da.negated = atom.literal().negated;
      }
      dc.atoms.push_back(da);
    }
    p.clauses.push_back(std::move(dc));
  }
  return p;
}

// Complete depth-first search with unit-style propagation. Branch variable:
// first unassigned atom of the first unsettled clause; F tried before T.
class Search {
 public:
  Search(const DenseProblem& problem, Meter& meter) : p_(problem), meter_(meter) {
    values_.assign(p_.vars.size(), kUnassigned);
  }

  void fix(int index, bool value) { values_[index] = value ? 1 : 0; }

  // Returns a total value vector on success (unconstrained variables F).
  std::optional<std::vector<std::int8_t>> run() {
    if (solve()) {
      auto out = values_;
      for (auto& v : out)
        if (v == kUnassigned) v = 0;
      return out;
    }
    return std::nullopt;
  }

 private:
  enum class ClauseState { settled, open, conflict, forces };

  ClauseState inspect(const DenseClause& clause, int& force_index, bool& force_value) const {
    int n_true = 0, n_false = 0, n_unassigned = 0;
    const DenseAtom* pending = nullptr;
    for (const auto& atom : clause.atoms) {
      std::int8_t v;
      if (atom.constant)
        v = atom.constant_value ? 1 : 0;
      else
        v = values_[atom.index];
      if (v == kUnassigned) {
        ++n_unassigned;
        pending = &atom;
        continue;
      }
      bool value = (v == 1);
      if (!atom.constant && atom.negated) value = !value;
      (value ? n_true : n_false)++;
    }
    if (p_.semantics == Semantics::sat) {
      if (n_true > 0) return ClauseState::settled;
      if (n_unassigned == 0) return ClauseState::conflict;
      if (n_unassigned == 1) {
        force_index = pending->index;
        force_value = !pending->negated;
        return ClauseState::forces;
      }
      return ClauseState::open;
    }
    // NAE: needs at least one true and one false atom.
    if (clause.atoms.size() < 2) return ClauseState::conflict;
    if (n_true > 0 && n_false > 0) return ClauseState::settled;
    if (n_unassigned == 0) return ClauseState::conflict;
    if (n_unassigned == 1) {
      bool make_true = (n_true == 0);
      if (pending->constant) return pending->constant_value == make_true ? ClauseState::settled
                                                                         : ClauseState::conflict;
      force_index = pending->index;
      force_value = pending->negated ? !make_true : make_true;
      return ClauseState::forces;
    }
    return ClauseState::open;
  }

  // Propagates forced values; returns false on conflict. Assigned indices are
  // appended to `trail`.
  bool propagate(std::vector<int>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& clause : p_.clauses) {
        int idx;
        bool val;
        switch (inspect(clause, idx, val)) {
          case ClauseState::conflict:
            return false;
          case ClauseState::forces:
            meter_.charge();
            values_[idx] = val ? 1 : 0;
            trail.push_back(idx);
            changed = true;
            break;
          default:
            break;
        }
      }
    }
    return true;
  }

  // Branch on the first unassigned atom of the first unsettled clause, trying
  // first the value that moves that clause toward being settled.
  std::pair<int, bool> pick_branch() const {
    for (const auto& clause : p_.clauses) {
      int idx;
      bool val;
      if (inspect(clause, idx, val) != ClauseState::open) continue;
      bool has_true = false;
      for (const auto& atom : clause.atoms) {
        std::int8_t v = atom.constant ? (atom.constant_value ? 1 : 0) : values_[atom.index];
        if (v != kUnassigned && ((v == 1) != (!atom.constant && atom.negated))) has_true = true;
      }
      for (const auto& atom : clause.atoms)
        if (!atom.constant && values_[atom.index] == kUnassigned) {
          // SAT wants a true literal; NAE wants a true one first, then a false one
          bool prefer = has_true && p_.semantics == Semantics::nae ? atom.negated : !atom.negated;
          return {atom.index, prefer};
        }
    }
    return {-1, false};
  }

  bool solve() {
    std::vector<int> trail;
    if (!propagate(trail)) {
      undo(trail);
      return false;
    }
    auto [branch, prefer] = pick_branch();
    if (branch < 0) return true;  // every clause settled
    for (bool value : {prefer, !prefer}) {
      meter_.charge();
      values_[branch] = value ? 1 : 0;
      if (solve()) return true;
      values_[branch] = kUnassigned;
    }
    undo(trail);
    return false;
  }

  void undo(std::vector<int>& trail) {
    for (int idx : trail) values_[idx] = kUnassigned;
    trail.clear();
  }

  const DenseProblem& p_;
  Meter& meter_;
  std::vector<std::int8_t> values_;
};

std::vector<Variable> matrix_variables(const std::vector<Clause>& matrix) {
  std::set<Variable> vars;
  for (const auto& clause : matrix)
    for (Variable v : clause.variables()) vars.insert(v);
  return {vars.begin(), vars.end()};
}

Assignment to_assignment(const DenseProblem& p, const std::vector<std::int8_t>& values) {
  Assignment out;
  for (std::size_t i = 0; i < p.vars.size(); ++i) out.set(p.vars[i], values[i] == 1);
  return out;
}

// ---- connected components -------------------------------------------------

struct Component {
  std::vector<Variable> universals;    // prefix order
  std::vector<Variable> existentials;  // prefix order
  std::vector<Clause> clauses;         // matrix order
};

struct ComponentSplit {
  std::vector<Component> components;
  bool constant_clause_unsatisfiable = false;  // some all-constant clause fails for every assignment
};

ComponentSplit split_components(const QuantifiedFormula& f) {
  std::map<Variable, Variable> parent;
  std::function<Variable(Variable)> find = [&](Variable v) {
    auto& p = parent[v];
    if (p == 0 || p == v) return p = v;
    return p = find(p);
  };
  auto unite = [&](Variable a, Variable b) { parent[find(a)] = find(b); };

  for (Variable v : f.universals) find(v);
  for (Variable v : f.existentials) find(v);
  for (const auto& clause : f.matrix) {
    auto vars = clause.variables();
    for (std::size_t i = 1; i < vars.size(); ++i) unite(vars[0], vars[i]);
  }

  ComponentSplit out;
  std::map<Variable, std::size_t> root_to_comp;
  auto comp_of = [&](Variable v) {
    Variable r = find(v);
    auto it = root_to_comp.find(r);
    if (it != root_to_comp.end()) return it->second;
    root_to_comp[r] = out.components.size();
    out.components.emplace_back();
    return out.components.size() - 1;
  };
  for (Variable v : f.universals) out.components[comp_of(v)].universals.push_back(v);
  for (Variable v : f.existentials) out.components[comp_of(v)].existentials.push_back(v);
  for (const auto& clause : f.matrix) {
    auto vars = clause.variables();
    if (vars.empty()) {
      // all-constant clause: satisfied or violated regardless of assignments
      bool some_true = false, some_false = false;
      for (const auto& atom : clause.atoms()) (atom.constant_value() ? some_true : some_false) = true;
      bool ok = f.semantics == Semantics::sat ? some_true : (some_true && some_false);
      if (!ok) out.constant_clause_unsatisfiable = true;
      continue;
    }
    out.components[comp_of(vars[0])].clauses.push_back(clause);
  }
  return out;
}

// ---- per-component forall-exists decision ----------------------------------

struct ComponentVerdict {
  bool yes = true;
  std::vector<std::int8_t> failing;  // values for component universals (prefix order), lex-min
};

// Plain lexicographic enumeration of the component's universal block.
ComponentVerdict decide_component_enumerate(const Component& comp, Semantics semantics, Meter& meter) {
  std::vector<Variable> all_vars;
  all_vars.insert(all_vars.end(), comp.universals.begin(), comp.universals.end());
  all_vars.insert(all_vars.end(), comp.existentials.begin(), comp.existentials.end());
  std::sort(all_vars.begin(), all_vars.end());
  DenseProblem problem = densify(comp.clauses, semantics, all_vars);

  const std::size_t k = comp.universals.size();
  std::vector<std::int8_t> sigma(k, 0);
  while (true) {
    meter.charge();
    Search search(problem, meter);
    for (std::size_t i = 0; i < k; ++i) search.fix(problem.index.at(comp.universals[i]), sigma[i] == 1);
    if (!search.run()) return {false, sigma};
    if (k == 0) return {true, {}};
    // advance the binary counter; first block variable is most significant
    std::size_t i = k;
    bool carry = true;
    while (i > 0 && carry) {
      --i;
      carry = (sigma[i] == 1);
      sigma[i] = carry ? 0 : 1;
    }
    if (carry) return {true, {}};  // wrapped around: every branch checked
  }
}

// Candidate-extension-set decision for universal-heavy components. Maintains a
// set S of known satisfying extensions; repeatedly finds the lexicographically
// first universal assignment not covered by any member of S and searches an
// extension for it. Every branch below the first reported failure is covered,
// so the counterexample equals the one plain enumeration reports.
class CandidateSetDecision {
 public:
  CandidateSetDecision(const Component& comp, Semantics semantics, Meter& meter)
      : semantics_(semantics), meter_(meter) {
    std::vector<Variable> all_vars;
    all_vars.insert(all_vars.end(), comp.universals.begin(), comp.universals.end());
    all_vars.insert(all_vars.end(), comp.existentials.begin(), comp.existentials.end());
    std::sort(all_vars.begin(), all_vars.end());
    problem_ = densify(comp.clauses, semantics, all_vars);
    for (Variable v : comp.universals) upos_.push_back(problem_.index.at(v));
    uorder_.resize(problem_.vars.size(), -1);
    for (std::size_t i = 0; i < upos_.size(); ++i) uorder_[upos_[i]] = static_cast<int>(i);
  }

  ComponentVerdict run() {
    while (true) {
      meter_.charge();
      auto sigma = lex_min_uncovered();
      if (!sigma) return {true, {}};
      Search search(problem_, meter_);
      for (std::size_t i = 0; i < upos_.size(); ++i) search.fix(upos_[i], (*sigma)[i] == 1);
      auto extension = search.run();
      if (!extension) return {false, *sigma};
      candidates_.push_back(cubes_for(*extension));
    }
  }

 private:
  // A cube lists required values for universal block positions; a candidate's
  // cube list describes exactly the universal assignments it does NOT cover.
  using Cube = std::vector<std::pair<int, bool>>;  // (universal block position, value)

  std::vector<Cube> cubes_for(const std::vector<std::int8_t>& extension) const {
    std::vector<Cube> cubes;
    auto add_cube = [&](const DenseClause& clause, bool target) {
      Cube cube;
      for (const auto& atom : clause.atoms) {
        bool fixed;
        if (atom.constant) {
          fixed = atom.constant_value;
        } else if (uorder_[atom.index] < 0) {
          fixed = (extension[atom.index] == 1) != atom.negated;
        } else {
          bool wanted = atom.negated ? !target : target;
          for (const auto& [pos, val] : cube)
            if (pos == uorder_[atom.index] && val != wanted) return;  // contradictory requirement
          cube.emplace_back(uorder_[atom.index], wanted);
          continue;
        }
        if (fixed != target) return;  // clause cannot reach the all-`target` state
      }
      cubes.push_back(std::move(cube));
    };
    for (const auto& clause : problem_.clauses) {
      if (semantics_ == Semantics::sat) {
        add_cube(clause, false);  // violated = all atoms false
      } else {
        add_cube(clause, true);  // violated = all true or all false
        add_cube(clause, false);
      }
    }
    return cubes;
  }

  // Lexicographically first universal assignment violating some clause under
  // every stored candidate; nullopt when S covers the whole block.
  std::optional<std::vector<std::int8_t>> lex_min_uncovered() {
    std::vector<std::int8_t> sigma(upos_.size(), kUnassigned);
    if (descend(sigma, 0)) {
      for (auto& v : sigma)
        if (v == kUnassigned) v = 0;
      return sigma;
    }
    return std::nullopt;
  }

  bool descend(std::vector<std::int8_t>& sigma, std::size_t depth) {
    meter_.charge();
    for (const auto& cubes : candidates_) {
      bool live = false;
      for (const auto& cube : cubes) {
        bool ok = true;
        for (const auto& [pos, val] : cube)
          if (sigma[pos] != kUnassigned && (sigma[pos] == 1) != val) {
            ok = false;
            break;
          }
        if (ok) {
          live = true;
          break;
        }
      }
      if (!live) return false;  // this candidate covers every completion
    }
    if (depth == sigma.size()) return true;
    for (std::int8_t value : {std::int8_t{0}, std::int8_t{1}}) {
      sigma[depth] = value;
      if (descend(sigma, depth + 1)) return true;
    }
    sigma[depth] = kUnassigned;
    return false;
  }

  Semantics semantics_;
  Meter& meter_;
  DenseProblem problem_;
  std::vector<int> upos_;    // universal block position -> dense index
  std::vector<int> uorder_;  // dense index -> universal block position or -1
  std::vector<std::vector<Cube>> candidates_;
};

Assignment full_counterexample(const QuantifiedFormula& f, const Component& comp,
                               const std::vector<std::int8_t>& failing) {
  Assignment out;
  for (Variable v : f.universals) out.set(v, false);
  for (std::size_t i = 0; i < comp.universals.size(); ++i) out.set(comp.universals[i], failing[i] == 1);
  return out;
}

bool lex_less(const QuantifiedFormula& f, const Assignment& a, const Assignment& b) {
  for (Variable v : f.universals) {
    bool av = a.at(v), bv = b.at(v);
    if (av != bv) return !av;  // F before T
  }
  return false;
}

}  // namespace

OracleVerdict decide_matrix(const std::vector<Clause>& matrix, Semantics semantics, Budget budget) {
  Meter meter{budget.max_evaluations};
  DenseProblem problem = densify(matrix, semantics, matrix_variables(matrix));
  meter.charge();
  Search search(problem, meter);
  auto values = search.run();
  OracleVerdict verdict;
  verdict.yes = values.has_value();
  if (values) verdict.witness = to_assignment(problem, *values);
  return verdict;
}

OracleVerdict decide_matrix(const QuantifiedFormula& formula, Budget budget) {
  Meter meter{budget.max_evaluations};
  std::vector<Variable> vars;
  vars.insert(vars.end(), formula.universals.begin(), formula.universals.end());
  vars.insert(vars.end(), formula.existentials.begin(), formula.existentials.end());
  std::sort(vars.begin(), vars.end());
  DenseProblem problem = densify(formula.matrix, formula.semantics, vars);
  meter.charge();
  Search search(problem, meter);
  auto values = search.run();
  OracleVerdict verdict;
  verdict.yes = values.has_value();
  if (values) verdict.witness = to_assignment(problem, *values);
  return verdict;
}

namespace {
struct UsedReporter {
  const Meter& meter;
  std::uint64_t* out;
  ~UsedReporter() {
    if (out) *out = meter.used;
  }
};
}  // namespace

OracleVerdict decide_forall_exists(const QuantifiedFormula& formula, Budget budget,
                                   const OracleOptions& options) {
  Meter meter{budget.max_evaluations};
  UsedReporter reporter{meter, options.used_out};
  auto split = split_components(formula);

  OracleVerdict verdict;
  verdict.yes = true;
  std::optional<Assignment> best;

  if (split.constant_clause_unsatisfiable) {
    verdict.yes = false;
    Assignment all_false;
    for (Variable v : formula.universals) all_false.set(v, false);
    best = all_false;
  }

  for (const auto& comp : split.components) {
    ComponentVerdict cv;
    if (comp.clauses.empty()) continue;  // isolated variables constrain nothing
    if (comp.universals.size() <= options.enumeration_threshold) {
      cv = decide_component_enumerate(comp, formula.semantics, meter);
    } else {
      cv = CandidateSetDecision(comp, formula.semantics, meter).run();
    }
    if (!cv.yes) {
      verdict.yes = false;
      Assignment candidate = full_counterexample(formula, comp, cv.failing);
      if (!best || lex_less(formula, candidate, *best)) best = candidate;
    }
  }

  if (!verdict.yes) {
    if (!formula.universals.empty()) verdict.counterexample = best;
    return verdict;
  }
  if (formula.universals.empty()) {
    // unquantified query: also produce a witness
    return decide_matrix(formula, Budget{budget.max_evaluations});
  }
  return verdict;
}

EquivalenceReport check_equivalence(const QuantifiedFormula& source, const QuantifiedFormula& target,
                                    Budget budget, const OracleOptions& options) {
  EquivalenceReport report;
  report.source = decide_forall_exists(source, budget, options);
  report.target = decide_forall_exists(target, budget, options);
  report.agree = report.source.yes == report.target.yes;
  report.detail = std::string("source=") + (report.source.yes ? "YES" : "NO") +
                  " target=" + (report.target.yes ? "YES" : "NO");
  return report;
}

std::optional<Assignment> find_extension(const std::vector<Clause>& matrix, Semantics semantics,
                                         const Assignment& fixed, std::span<const Variable> free_vars,
                                         Budget budget) {
  Meter meter{budget.max_evaluations};
  std::set<Variable> vars(free_vars.begin(), free_vars.end());
  for (const auto& [v, b] : fixed) vars.insert(v);
  for (const auto& clause : matrix)
    for (Variable v : clause.variables()) vars.insert(v);
  DenseProblem problem = densify(matrix, semantics, {vars.begin(), vars.end()});
  Search search(problem, meter);
  for (const auto& [v, b] : fixed) search.fix(problem.index.at(v), b);
  auto values = search.run();
  if (!values) return std::nullopt;
  Assignment out;
  for (Variable v : free_vars) out.set(v, (*values)[static_cast<std::size_t>(problem.index.at(v))] == 1);
  return out;
}

}  // namespace qbforge
