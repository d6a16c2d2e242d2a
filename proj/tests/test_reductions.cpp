#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qbforge/generator.hpp"
#include "qbforge/oracle.hpp"
#include "qbforge/reductions.hpp"
#include "qbforge/validate.hpp"
#include "test_support.hpp"

using namespace qbforge;
using test::qext;

namespace {

void check_route_equivalence(const QuantifiedFormula& source, const ReductionResult& reduction) {
  auto report = check_equivalence(source, reduction.target);
  INFO("route " << reduction.trace.route << ": " << report.detail);
  CHECK(report.agree);
}

void check_witnesses(const QuantifiedFormula& source, const ReductionResult& reduction) {
  // forward: every source branch witness maps to a satisfying target assignment
  const auto& u = source.universals;
  for (std::uint64_t bits = 0; bits < (1ull << u.size()); ++bits) {
    Assignment sigma;
    for (std::size_t i = 0; i < u.size(); ++i) sigma.set(u[i], (bits >> i) & 1);
    auto ext = find_extension(source.matrix, source.semantics, sigma, source.existentials);
    if (!ext) return;  // no-instance; nothing to map
    Assignment beta = sigma;
    beta.merge(*ext);
    Assignment target_beta = reduction.forward_witness(beta);
    INFO("route " << reduction.trace.route << " forward, branch bits " << bits);
    CHECK(evaluate_matrix(reduction.target.matrix, target_beta, reduction.target.semantics));

    // backward: a target witness on the embedded branch maps back
    Assignment embedded = reduction.universal_embedding(sigma);
    auto target_ext =
        find_extension(reduction.target.matrix, reduction.target.semantics, embedded,
                       reduction.target.existentials);
    REQUIRE(target_ext.has_value());
    Assignment target_total = embedded;
    target_total.merge(*target_ext);
    Assignment back = reduction.backward_witness(target_total);
    INFO("route " << reduction.trace.route << " backward, branch bits " << bits);
    CHECK(evaluate_matrix(source.matrix, back, source.semantics));
  }
}

}  // namespace

TEST_CASE("universalize_nae adds twin existentials, fresh universals and links") {
  auto f = qext(R"(
    p qext 4 2 nae
    a 1 2 0
    e 3 4 0
    1 2 3 0
    -1 3 4 0
  )");
  VariableAllocator alloc = VariableAllocator::after(f);
  auto r = universalize_nae(f, alloc);
  CHECK(r.target.universals.size() == 2);
  CHECK(r.target.existentials.size() == 4);
  CHECK(r.target.matrix.size() == 6);

  // every nae-satisfying target assignment couples z with y
  const Variable y1 = r.target.existentials[2], z1 = r.target.universals[0];
  for (std::uint64_t bits = 0; bits < 4; ++bits) {
    Assignment sigma;
    for (std::size_t i = 0; i < 2; ++i) sigma.set(r.target.universals[i], (bits >> i) & 1);
    auto ext = find_extension(r.target.matrix, Semantics::nae, sigma, r.target.existentials);
    REQUIRE(ext.has_value());
    CHECK(ext->at(y1) == sigma.at(z1));
  }

  check_route_equivalence(f, r);
  check_witnesses(f, r);
}

TEST_CASE("berman_expand: hand-derived counts for one universal and one 3-clause") {
  auto f = qext(R"(
    p qext 3 1 nae
    a 1 0
    e 2 3 0
    1 2 3 0
  )");
  VariableAllocator alloc = VariableAllocator::after(f);
  auto stage1 = universalize_nae(f, alloc);
  auto r = berman_expand(stage1.target, alloc);
  // derivation: padded matrix has 5 clauses (1 renamed 3-clause, 2 links, 2 pads);
  // 9 copies; doubling gives 10 clauses; 9 chain 2-clauses; 17 of the 19 are
  // 2-clauses, each patched with E(u): 2 + 17*26 clauses, 9 + 17*19 existentials.
  CHECK(r.target.matrix.size() == 2 + 17 * 26);
  CHECK(r.target.existentials.size() == 9 + 17 * 19);
  CHECK(r.target.universals.size() == 1);
  check_route_equivalence(stage1.target, r);
}

TEST_CASE("berman_expand output profile is (2,2) everywhere") {
  auto f = qext(R"(
    p qext 3 2 nae
    a 1 0
    e 2 3 0
    1 2 3 0
    -1 -2 3 0
  )");
  VariableAllocator alloc = VariableAllocator::after(f);
  auto r = berman_expand(universalize_nae(f, alloc).target, alloc);
  auto counts = count_all_appearances(r.target);
  for (const auto& [v, c] : counts) CHECK(c == AppearanceCount{2, 2});
  CHECK(r.target.semantics == Semantics::sat);
}

TEST_CASE("balance_q1 equalizes blocks at 5pe-4pu") {
  auto f = qext(R"(
    p qext 3 2 sat
    a 1 0
    e 2 3 0
    1 2 3 0
    -1 -2 -3 0
  )");
  VariableAllocator alloc = VariableAllocator::after(f);
  auto r = balance_q1(f, alloc);
  CHECK(r.target.universals.size() == 5 * 2 - 4 * 1);
  CHECK(r.target.existentials.size() == 5 * 2 - 4 * 1);
  check_route_equivalence(f, r);
  check_witnesses(f, r);

  // already balanced: nothing appended
  auto g = qext(R"(
    p qext 2 1 sat
    a 1 0
    e 2 0
    1 2 0
  )");
  VariableAllocator alloc2 = VariableAllocator::after(g);
  auto r2 = balance_q1(g, alloc2);
  CHECK(r2.target == g);
}

TEST_CASE("balance_q3 requires divisibility by three") {
  auto f = qext(R"(
    p qext 3 1 sat
    a 1 0
    e 2 3 0
    1 2 3 0
  )");
  VariableAllocator alloc = VariableAllocator::after(f);
  CHECK_THROWS_AS(balance_q3(f, alloc), PreconditionError);  // pe - pu = 1
}

TEST_CASE("reduce_to_balanced_2222 produces the declared class") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.class_name = "nae23";
    cfg.universals = 1 + static_cast<int>(seed % 2);
    cfg.existentials = 3;
    cfg.clauses = 3;
    auto f = generate_instance(cfg);
    VariableAllocator alloc = VariableAllocator::after(f);
    auto outcome = reduce_to_balanced_2222(f, alloc);
    REQUIRE(std::holds_alternative<ReductionResult>(outcome));
    const auto& r = std::get<ReductionResult>(outcome);
    auto report = validate_class(r.target, named_class_specs().at("b2222"));
    INFO(report.summary());
    CHECK(report.pass());
  }
}

TEST_CASE("reduce_to_balanced_2222 agrees with the oracle on tiny instances") {
  auto yes = qext(R"(
    p qext 3 2 nae
    a 1 0
    e 2 3 0
    1 2 3 0
    -1 2 -3 0
  )");
  VariableAllocator alloc = VariableAllocator::after(yes);
  auto outcome = reduce_to_balanced_2222(yes, alloc);
  REQUIRE(std::holds_alternative<ReductionResult>(outcome));
  check_route_equivalence(yes, std::get<ReductionResult>(outcome));
  check_witnesses(yes, std::get<ReductionResult>(outcome));

  // a no-instance: x forced both equal and unequal to y across branches
  auto no = qext(R"(
    p qext 2 2 nae
    a 1 0
    e 2 0
    1 2 1 0
    1 2 2 0
  )");
  VariableAllocator alloc2 = VariableAllocator::after(no);
  auto outcome2 = reduce_to_balanced_2222(no, alloc2);
  REQUIRE(std::holds_alternative<ReductionResult>(outcome2));
  check_route_equivalence(no, std::get<ReductionResult>(outcome2));

  // degenerate source short-circuits
  auto degenerate = qext(R"(
    p qext 1 1 nae
    e 1 0
    1 0
  )");
  VariableAllocator alloc3 = VariableAllocator::after(degenerate);
  auto outcome3 = reduce_to_balanced_2222(degenerate, alloc3);
  CHECK(std::holds_alternative<VerdictNo>(outcome3));
}

TEST_CASE("balanced_2222_to_1122 reaches the (1,1,2,2) class with the stated accounting") {
  GeneratorConfig cfg;
  cfg.seed = 11;
  cfg.class_name = "b2222";
  cfg.universals = 3;
  auto f = generate_instance(cfg);
  REQUIRE(validate_class(f, named_class_specs().at("b2222")).pass());

  VariableAllocator alloc = VariableAllocator::after(f);
  auto r = balanced_2222_to_1122(f, alloc);
  auto report = validate_class(r.target, named_class_specs().at("b1122"));
  INFO(report.summary());
  CHECK(report.pass());
  check_route_equivalence(f, r);
  check_witnesses(f, r);
}

TEST_CASE("sat3 route: base variant and polarity variants") {
  GeneratorConfig cfg;
  cfg.seed = 3;
  cfg.class_name = "3sat3";
  cfg.existentials = 5;
  auto f = generate_instance(cfg);
  REQUIRE(validate_class(f, named_class_specs().at("3sat3")).pass());

  for (auto [variant, klass] :
       {std::pair{PolarityVariant::base_1021, "ae1021"}, {PolarityVariant::univ_0121, "ae0121"},
        {PolarityVariant::exist_1012, "ae1012"}, {PolarityVariant::all_0112, "ae0112"}}) {
    VariableAllocator alloc = VariableAllocator::after(f);
    auto r = sat3_bounded_to_forallexists(f, variant, alloc);
    auto report = validate_class(r.target, named_class_specs().at(klass));
    INFO(report.summary());
    CHECK(report.pass());
    // satisfiable iff the quantified target is a yes-instance
    CHECK(decide_matrix(f).yes == decide_forall_exists(r.target).yes);
    check_witnesses(f, r);
  }
}

TEST_CASE("sat3 route without 2-clauses adds no universals") {
  auto f = qext(R"(
    p qext 3 3 sat
    e 1 2 3 0
    1 2 3 0
    1 2 -3 0
    -1 -2 3 0
  )");
  VariableAllocator alloc = VariableAllocator::after(f);
  auto r = sat3_bounded_to_forallexists(f, PolarityVariant::base_1021, alloc);
  CHECK(r.target.universals.empty());
  CHECK(r.target.matrix == f.matrix);
}

TEST_CASE("normalize_polarity flips (1,2) variables to (2,1)") {
  auto f = qext(R"(
    p qext 2 2 sat
    e 1 2 0
    -1 2 0
    -1 2 -2 0
  )");
  // variable 1: (0,2)? no: appearances -1, -1 -> (0,2) is outside the domain
  CHECK_THROWS_AS(normalize_polarity(f), PreconditionError);

  auto g = qext(R"(
    p qext 2 2 sat
    e 1 2 0
    -1 2 1 0
    -1 2 -2 0
  )");
  auto norm = normalize_polarity(g);
  CHECK(norm.flipped == std::vector<Variable>{1});
  auto counts = count_all_appearances(norm.formula);
  CHECK(counts.at(1) == AppearanceCount{2, 1});
  CHECK(counts.at(2) == AppearanceCount{2, 1});
  CHECK(decide_matrix(g).yes == decide_matrix(norm.formula).yes);

  auto all_21 = qext(R"(
    p qext 1 1 sat
    e 1 0
    1 1 -1 0
  )");
  CHECK(normalize_polarity(all_21).formula == all_21);
}

namespace {

QuantifiedFormula minimal_b1122() {
  return qext(R"(
    p qext 4 4 sat
    a 1 2 0
    e 3 4 0
    1 3 4 0
    -1 -3 -4 0
    2 3 4 0
    -2 -3 -4 0
  )");
}

}  // namespace

TEST_CASE("balanced_1122_to_112x hits both target profiles") {
  auto f = minimal_b1122();
  REQUIRE(validate_class(f, named_class_specs().at("b1122")).pass());

  for (auto [profile, klass] :
       {std::pair{ExistentialProfile::t21, "ae1121"}, {ExistentialProfile::t12, "ae1112"}}) {
    VariableAllocator alloc = VariableAllocator::after(f);
    auto r = balanced_1122_to_112x(f, profile, alloc);
    auto report = validate_class(r.target, named_class_specs().at(klass));
    INFO(report.summary());
    CHECK(report.pass());
    check_route_equivalence(f, r);
    check_witnesses(f, r);
  }
}

TEST_CASE("nae_to_monotone_14 produces the monotone (1,4) class") {
  auto f = qext(R"(
    p qext 3 2 nae
    a 1 0
    e 2 3 0
    1 2 3 0
    -1 2 -3 0
  )");
  VariableAllocator alloc = VariableAllocator::after(f);
  auto r = nae_to_monotone_14(f, alloc);
  auto report = validate_class(r.target, named_class_specs().at("mono14"));
  INFO(report.summary());
  CHECK(report.pass());
  check_route_equivalence(f, r);
  check_witnesses(f, r);
}

TEST_CASE("nae_to_monotone_14 pads a once-appearing variable with three P1 copies") {
  auto f = qext(R"(
    p qext 3 1 nae
    e 1 2 3 0
    1 2 3 0
  )");
  VariableAllocator alloc = VariableAllocator::after(f);
  auto r = nae_to_monotone_14(f, alloc);
  // each variable has one copy appearing once, so three P1 pads each
  bool found = false;
  for (const auto& step : r.trace.steps)
    if (step.name == "p1-pad") {
      found = true;
      CHECK(step.detail.rfind("9 ", 0) == 0);
    }
  CHECK(found);
  CHECK(validate_class(r.target, named_class_specs().at("mono14")).pass());
  check_route_equivalence(f, r);
}

TEST_CASE("monotone14_to_monotone13_linear: per-variable accounting and class") {
  // smallest legal monotone (1,4) instance: two existentials, four universals
  auto f = qext(R"(
    p qext 6 4 nae
    a 1 2 3 4 0
    e 5 6 0
    1 5 6 0
    2 5 6 0
    3 5 6 0
    4 5 6 0
  )");
  REQUIRE(validate_class(f, named_class_specs().at("mono14")).pass());
  VariableAllocator alloc = VariableAllocator::after(f);
  auto r = monotone14_to_monotone13_linear(f, alloc);
  CHECK(r.target.matrix.size() == f.matrix.size() + 20 * 2);
  CHECK(r.target.existentials.size() == 16 * 2);
  CHECK(r.target.universals.size() == 4 + 16 * 2);
  auto report = validate_class(r.target, named_class_specs().at("mono13lin"));
  INFO(report.summary());
  CHECK(report.pass());
  check_route_equivalence(f, r);
  check_witnesses(f, r);
}

TEST_CASE("monotone13 cycle forces copy agreement on the adversary branch") {
  auto f = qext(R"(
    p qext 6 4 nae
    a 1 2 3 4 0
    e 5 6 0
    1 5 6 0
    2 5 6 0
    3 5 6 0
    4 5 6 0
  )");
  VariableAllocator alloc = VariableAllocator::after(f);
  auto r = monotone14_to_monotone13_linear(f, alloc);
  Assignment sigma;
  for (Variable u : f.universals) sigma.set(u, false);
  Assignment branch = r.universal_embedding(sigma);
  auto ext = find_extension(r.target.matrix, Semantics::nae, branch, r.target.existentials);
  REQUIRE(ext.has_value());
  // first source existential's four live copies agree
  const Variable z1 = r.target.existentials[0], z2 = r.target.existentials[1],
                 z3 = r.target.existentials[2], z4 = r.target.existentials[3];
  CHECK(ext->at(z1) == ext->at(z2));
  CHECK(ext->at(z2) == ext->at(z3));
  CHECK(ext->at(z3) == ext->at(z4));
}

TEST_CASE("strip_universal_literals inverts the sat3 padding") {
  GeneratorConfig cfg;
  cfg.seed = 9;
  cfg.class_name = "3sat3";
  cfg.existentials = 4;
  auto f = generate_instance(cfg);
  VariableAllocator alloc = VariableAllocator::after(f);
  auto r = sat3_bounded_to_forallexists(f, PolarityVariant::base_1021, alloc);
  auto stripped = strip_universal_literals(r.target);
  REQUIRE(std::holds_alternative<QuantifiedFormula>(stripped));
  CHECK(std::get<QuantifiedFormula>(stripped).matrix == f.matrix);
  CHECK(decide_forall_exists(r.target).yes == decide_matrix(std::get<QuantifiedFormula>(stripped)).yes);
}

TEST_CASE("strip_universal_literals rejects NAE and repeated universals; empty clause is NO") {
  auto nae = qext(R"(
    p qext 2 1 nae
    a 1 0
    e 2 0
    1 2 0
  )");
  CHECK_THROWS_AS(strip_universal_literals(nae), PreconditionError);

  auto repeated = qext(R"(
    p qext 2 2 sat
    a 1 0
    e 2 0
    1 2 0
    1 -2 0
  )");
  CHECK_THROWS_AS(strip_universal_literals(repeated), PreconditionError);

  auto empties = qext(R"(
    p qext 2 1 sat
    a 1 2 0
    1 2 0
  )");
  auto result = strip_universal_literals(empties);
  REQUIRE(std::holds_alternative<VerdictNo>(result));
}

TEST_CASE("routes are deterministic") {
  auto f = qext(R"(
    p qext 3 2 nae
    a 1 0
    e 2 3 0
    1 2 3 0
    -1 2 -3 0
  )");
  VariableAllocator a1 = VariableAllocator::after(f);
  VariableAllocator a2 = VariableAllocator::after(f);
  auto r1 = run_route("nae-to-b2222", f, a1);
  auto r2 = run_route("nae-to-b2222", f, a2);
  REQUIRE(r1.result.has_value());
  REQUIRE(r2.result.has_value());
  CHECK(r1.result->target == r2.result->target);
}

TEST_CASE("run_route covers every declared route name") {
  for (const auto& name : route_names()) {
    if (name == "strip-universals") continue;  // no declared target class
    CHECK_NOTHROW(route_target_class(name));
  }
}
