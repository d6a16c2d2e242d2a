#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qbforge/formula_ops.hpp"
#include "qbforge/gadgets.hpp"
#include "qbforge/oracle.hpp"
#include "test_support.hpp"

using namespace qbforge;
using test::assignment;

TEST_CASE("S-enforcer clause list is exactly the fixed five") {
  VariableAllocator alloc(4);
  auto s = build_S(pos(1), neg(2), pos(3), alloc);
  REQUIRE(s.fresh_existentials == std::vector<Variable>{4, 5, 6});
  const Variable a = 4, b = 5, c = 6;
  std::vector<Clause> expected{
      Clause{pos(1), neg(a), pos(b)}, Clause{neg(2), neg(b), pos(c)}, Clause{pos(3), pos(a), neg(c)},
      Clause{pos(a), pos(b), pos(c)}, Clause{neg(a), neg(b), neg(c)},
  };
  CHECK(s.clauses == expected);
  CHECK(s.interface == std::vector<Variable>{1, 2, 3});
}

TEST_CASE("x2 has ten clauses over eight variables, x at (2,0), fresh at (2,2)") {
  VariableAllocator alloc(2);
  auto g = build_x2(1, alloc);
  CHECK(g.clauses.size() == 10);
  CHECK(g.fresh_existentials.size() == 7);  // 8 variables total with x
  auto counts = gadget_appearances(g);
  CHECK(counts.at(1) == AppearanceCount{2, 0});
  for (Variable v : g.fresh_existentials) CHECK(counts.at(v) == AppearanceCount{2, 2});
  for (const auto& clause : g.clauses) CHECK(clause.distinct_variables());
}

TEST_CASE("E has 25 clauses, 18 fresh variables, x at (2,1)") {
  VariableAllocator alloc(2);
  auto g = build_E(1, alloc);
  CHECK(g.clauses.size() == 25);
  CHECK(g.fresh_existentials.size() == 18);
  auto counts = gadget_appearances(g);
  CHECK(counts.at(1) == AppearanceCount{2, 1});
  for (Variable v : g.fresh_existentials) CHECK(counts.at(v) == AppearanceCount{2, 2});
}

TEST_CASE("Q1 clause list and profile") {
  VariableAllocator alloc(1);
  auto g = build_Q1(alloc);
  REQUIRE(g.fresh_universals == std::vector<Variable>{1, 2, 3, 4, 5});  // u v w q r
  REQUIRE(g.fresh_existentials == std::vector<Variable>{6, 7, 8, 9});   // a b c d
  const Variable u = 1, v = 2, w = 3, q = 4, r = 5, a = 6, b = 7, c = 8, d = 9;
  std::vector<Clause> expected{
      Clause{pos(u), pos(v), pos(a)}, Clause{pos(u), pos(v), pos(b)},
      Clause{neg(u), neg(v), neg(a)}, Clause{neg(u), neg(v), neg(b)},
      Clause{pos(a), neg(b), pos(r)}, Clause{neg(a), pos(b), pos(r)},
      Clause{pos(c), neg(d), neg(r)}, Clause{neg(c), pos(d), neg(r)},
      Clause{pos(w), pos(q), pos(c)}, Clause{pos(w), pos(q), pos(d)},
      Clause{neg(w), neg(q), neg(c)}, Clause{neg(w), neg(q), neg(d)},
  };
  CHECK(g.clauses == expected);
  auto counts = gadget_appearances(g);
  for (const auto& [var, count] : counts) CHECK(count == AppearanceCount{2, 2});
}

TEST_CASE("Q3 clause list and profile") {
  VariableAllocator alloc(1);
  auto g = build_Q3(alloc);
  const Variable u = 1, v = 2, w = 3, q = 4, r = 5, a = 6, b = 7;
  std::vector<Clause> expected{
      Clause{pos(u), pos(r), pos(a)}, Clause{neg(u), neg(b), neg(a)}, Clause{pos(v), pos(q), pos(b)},
      Clause{neg(v), neg(r), neg(a)}, Clause{pos(w), pos(a), pos(b)}, Clause{neg(w), neg(q), neg(b)},
  };
  CHECK(g.clauses == expected);
  auto counts = gadget_appearances(g);
  for (Variable x : g.fresh_universals) CHECK(counts.at(x) == AppearanceCount{1, 1});
  for (Variable x : g.fresh_existentials) CHECK(counts.at(x) == AppearanceCount{2, 2});
}

TEST_CASE("E_forall clause pair and pointwise behaviour") {
  VariableAllocator alloc(2);
  auto g = build_E_forall(1, alloc);
  const Variable u = 2, v = 3;
  REQUIRE(g.clauses == std::vector<Clause>{Clause{pos(1), pos(u), pos(v)}, Clause{pos(1), neg(u), neg(v)}});

  // d=T satisfies both clauses whatever u and v are
  for (int bits = 0; bits < 4; ++bits) {
    auto beta = assignment({{1, true}, {u, (bits & 1) != 0}, {v, (bits & 2) != 0}});
    CHECK(evaluate_matrix(g.clauses, beta, Semantics::sat));
  }
  // u=v=T with d=F falsifies the second clause
  auto diag = assignment({{1, false}, {u, true}, {v, true}});
  CHECK_FALSE(evaluate_clause(g.clauses[1], diag, Semantics::sat));
  // u != v places no constraint on d
  auto off_diag = assignment({{1, false}, {u, true}, {v, false}});
  CHECK(evaluate_matrix(g.clauses, off_diag, Semantics::sat));
}

TEST_CASE("NE_aux has six monotone clauses and the inequality contract") {
  VariableAllocator alloc(3);
  auto g = build_NE_aux(1, 2, alloc);
  CHECK(g.clauses.size() == 6);
  CHECK(g.fresh_existentials.size() == 5);
  for (const auto& clause : g.clauses) {
    CHECK(clause.size() == 3);
    CHECK(clause.distinct_variables());
    for (const auto& atom : clause.atoms()) CHECK_FALSE(atom.literal().negated);
  }
}

TEST_CASE("EQ admits equal interfaces only") {
  VariableAllocator alloc(3);
  auto g = build_EQ(1, 2, alloc);
  CHECK(g.clauses.size() == 14);
  CHECK(g.fresh_existentials.size() == 13);
  auto tt = assignment({{1, true}, {2, true}});
  auto tf = assignment({{1, true}, {2, false}});
  CHECK(find_extension(g.clauses, Semantics::nae, tt, g.fresh_existentials).has_value());
  CHECK_FALSE(find_extension(g.clauses, Semantics::nae, tf, g.fresh_existentials).has_value());
}

TEST_CASE("NE admits unequal interfaces only") {
  VariableAllocator alloc(3);
  auto g = build_NE(1, 2, alloc);
  CHECK(g.clauses.size() == 34);
  CHECK(g.fresh_existentials.size() == 33);
  auto tf = assignment({{1, true}, {2, false}});
  auto ff = assignment({{1, false}, {2, false}});
  CHECK(find_extension(g.clauses, Semantics::nae, tf, g.fresh_existentials).has_value());
  CHECK_FALSE(find_extension(g.clauses, Semantics::nae, ff, g.fresh_existentials).has_value());
}

TEST_CASE("NE_aux, EQ, NE fresh variables appear at most four times") {
  VariableAllocator alloc(3);
  for (const auto& g : {build_NE_aux(1, 2, alloc), build_EQ(1, 2, alloc), build_NE(1, 2, alloc)}) {
    auto counts = gadget_appearances(g);
    for (Variable v : g.fresh_existentials) {
      INFO(g.name << " variable " << v);
      CHECK(counts.at(v).total() <= 4);
    }
  }
}

TEST_CASE("P1 pads its interface variable and fixes every fresh variable at four appearances") {
  VariableAllocator alloc(2);
  auto g = build_P1(1, alloc);
  CHECK(g.clauses.size() == 7);
  auto counts = gadget_appearances(g);
  CHECK(counts.at(1).total() == 1);
  for (Variable v : g.fresh_existentials) CHECK(counts.at(v).total() == 4);

  // the stated assignment a=c=e=T, b=d=F nae-satisfies all seven clauses with x=F
  auto beta = assignment({{1, false}});
  Assignment completion = g.complete(beta);
  Assignment full = beta;
  full.merge(completion);
  CHECK(evaluate_matrix(g.clauses, full, Semantics::nae));
}

TEST_CASE("every catalog gadget passes its contract") {
  for (const auto& name : gadget_catalog_names()) {
    VariableAllocator alloc(1);
    auto g = build_catalog_gadget(name, alloc);
    auto report = verify_contract(g);
    INFO(report.detail);
    CHECK(report.pass);
  }
}

TEST_CASE("contracts hold with negated interface literals") {
  VariableAllocator alloc(4);
  auto s = build_S(neg(1), pos(2), neg(3), alloc);
  CHECK(verify_contract(s).pass);
  auto su = build_S_universal(neg(1), pos(2), pos(2), alloc);
  CHECK(verify_contract(su).pass);
}

TEST_CASE("a deliberately flipped clause breaks the contract") {
  VariableAllocator alloc(2);
  auto g = build_x2(1, alloc);
  // sabotage: flip the first clause's interface literal
  auto broken = g;
  std::vector<ClauseAtom> atoms = broken.clauses[0].atoms();
  atoms[0] = ~atoms[0].literal();
  broken.clauses[0] = Clause(std::move(atoms));
  broken.complete = nullptr;  // completion no longer applies
  auto report = verify_contract(broken);
  CHECK_FALSE(report.pass);
  CHECK(report.mismatch.has_value());
}

TEST_CASE("gadget copies from one allocator share no fresh variables") {
  VariableAllocator alloc(3);
  auto a = build_EQ(1, 2, alloc);
  auto b = build_EQ(1, 2, alloc);
  for (Variable v : a.fresh_existentials)
    CHECK(std::find(b.fresh_existentials.begin(), b.fresh_existentials.end(), v) ==
          b.fresh_existentials.end());
}

TEST_CASE("Q1 and Q3 witness rules satisfy every universal branch") {
  VariableAllocator alloc(1);
  for (const auto& g : {build_Q1(alloc), build_Q3(alloc)}) {
    for (std::uint64_t bits = 0; bits < (1ull << g.fresh_universals.size()); ++bits) {
      Assignment branch;
      for (std::size_t i = 0; i < g.fresh_universals.size(); ++i)
        branch.set(g.fresh_universals[i], (bits >> i) & 1);
      Assignment full = branch;
      full.merge(g.complete(branch));
      INFO(g.name << " bits " << bits);
      CHECK(evaluate_matrix(g.clauses, full, Semantics::sat));
    }
  }
}
