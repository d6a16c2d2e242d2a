#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qbforge {

/// Variables are dense positive integer ids, unique within a formula.
using Variable = std::int32_t;

enum class Semantics { sat, nae };

inline const char* to_string(Semantics s) { return s == Semantics::sat ? "sat" : "nae"; }

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A structural or class precondition does not hold.
struct PreconditionError : Error {
  using Error::Error;
};

struct ParseError : Error {
  int line;
  int column;
  ParseError(const std::string& msg, int line_, int column_)
      : Error(msg + " (line " + std::to_string(line_) + ", column " + std::to_string(column_) + ")"),
        line(line_),
        column(column_) {}
};

struct BudgetExceededError : Error {
  using Error::Error;
};

struct Literal {
  Variable var = 0;
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

constexpr Literal pos(Variable v) { return {v, false}; }
constexpr Literal neg(Variable v) { return {v, true}; }
constexpr Literal operator~(Literal l) { return {l.var, !l.negated}; }

/// A clause atom is a literal or one of the constants T/F. Constants are a
/// distinct atom kind, never reserved variable ids.
class ClauseAtom {
 public:
  ClauseAtom(Literal lit) : repr_(lit) {}  // NOLINT: implicit by design
  static ClauseAtom constant(bool value) { return ClauseAtom(Repr(value)); }

  bool is_literal() const { return std::holds_alternative<Literal>(repr_); }
  bool is_constant() const { return !is_literal(); }

  const Literal& literal() const {
    if (!is_literal()) throw PreconditionError("atom is a constant, not a literal");
    return std::get<Literal>(repr_);
  }
  bool constant_value() const {
    if (!is_constant()) throw PreconditionError("atom is a literal, not a constant");
    return std::get<bool>(repr_);
  }

  friend bool operator==(const ClauseAtom&, const ClauseAtom&) = default;

 private:
  using Repr = std::variant<Literal, bool>;
  explicit ClauseAtom(Repr r) : repr_(r) {}
  Repr repr_;
};

inline ClauseAtom constant_atom(bool value) { return ClauseAtom::constant(value); }

/// Ordered disjunction of one to three atoms. Atom order is preserved through
/// every transformation so that "k-th appearance" is well-defined.
class Clause {
 public:
  Clause(std::initializer_list<ClauseAtom> atoms) : Clause(std::vector<ClauseAtom>(atoms)) {}
  explicit Clause(std::vector<ClauseAtom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty() || atoms_.size() > 3)
      throw PreconditionError("clause must have 1 to 3 atoms, got " + std::to_string(atoms_.size()));
  }

  const std::vector<ClauseAtom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  bool has_constant() const {
    return std::any_of(atoms_.begin(), atoms_.end(), [](const ClauseAtom& a) { return a.is_constant(); });
  }

  /// Variables in atom order, duplicates kept.
  std::vector<Variable> variables() const {
    std::vector<Variable> out;
    for (const auto& a : atoms_)
      if (a.is_literal()) out.push_back(a.literal().var);
    return out;
  }

  bool distinct_variables() const {
    auto vs = variables();
    std::sort(vs.begin(), vs.end());
    return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
  }

  friend bool operator==(const Clause&, const Clause&) = default;

 private:
  std::vector<ClauseAtom> atoms_;
};

/// Total or partial mapping from variables to truth values.
class Assignment {
 public:
  Assignment() = default;
  Assignment(std::initializer_list<std::pair<const Variable, bool>> init) : values_(init) {}

  void set(Variable v, bool value) { values_.insert_or_assign(v, value); }
  void erase(Variable v) { values_.erase(v); }

  std::optional<bool> get(Variable v) const {
    auto it = values_.find(v);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }
  bool at(Variable v) const {
    auto it = values_.find(v);
    if (it == values_.end())
      throw PreconditionError("assignment does not cover variable " + std::to_string(v));
    return it->second;
  }
  bool contains(Variable v) const { return values_.count(v) != 0; }

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  /// Copies every binding of `other` into this assignment (overwriting).
  void merge(const Assignment& other) {
    for (const auto& [v, b] : other) values_.insert_or_assign(v, b);
  }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::map<Variable, bool> values_;
};

/// Two-block prenex formula: one universal block, one existential block, and a
/// clause matrix evaluated under SAT or NAE semantics.
struct QuantifiedFormula {
  std::vector<Variable> universals;
  std::vector<Variable> existentials;
  std::vector<Clause> matrix;
  Semantics semantics = Semantics::sat;

  bool is_universal(Variable v) const {
    return std::find(universals.begin(), universals.end(), v) != universals.end();
  }
  bool is_existential(Variable v) const {
    return std::find(existentials.begin(), existentials.end(), v) != existentials.end();
  }
  bool declares(Variable v) const { return is_universal(v) || is_existential(v); }

  bool has_constants() const {
    return std::any_of(matrix.begin(), matrix.end(), [](const Clause& c) { return c.has_constant(); });
  }

  Variable max_variable_id() const {
    Variable m = 0;
    for (Variable v : universals) m = std::max(m, v);
    for (Variable v : existentials) m = std::max(m, v);
    return m;
  }

  std::size_t variable_count() const { return universals.size() + existentials.size(); }

  /// Throws PreconditionError unless block disjointness, positive ids, matrix
  /// coverage, and the constants-imply-no-universals rule all hold.
  void check_structure() const;

  friend bool operator==(const QuantifiedFormula&, const QuantifiedFormula&) = default;
};

/// Hands out strictly increasing fresh ids; never reuses one.
class VariableAllocator {
 public:
  explicit VariableAllocator(Variable first = 1) : next_(first) {
    if (first <= 0) throw PreconditionError("variable ids start at 1");
  }
  static VariableAllocator after(const QuantifiedFormula& f) {
    return VariableAllocator(f.max_variable_id() + 1);
  }

  Variable fresh() { return next_++; }
  std::vector<Variable> fresh_block(std::size_t count) {
    std::vector<Variable> out(count);
    for (auto& v : out) v = fresh();
    return out;
  }
  Variable next_id() const { return next_; }

 private:
  Variable next_;
};

}  // namespace qbforge
