#include <doctest.h>

#include <vector>

#include "sa/error.hpp"
#include "sa/fn_algebra.hpp"
#include "sa/predicates.hpp"
#include "sa/subst.hpp"
#include "support/algebras.hpp"

using namespace sa;

namespace {

FiniteSA mutated_f12() {
  // f12 with star(negation, variable) = const 0; breaks x * v = x at x = 1.
  return handmade::fsa(1, 4, {2},
                       {{{0, 3, 0, 3},
                         {0, 2, 0, 3},
                         {0, 1, 2, 3},
                         {0, 0, 3, 3}}});
}

}  // namespace

TEST_CASE("conforming algebras produce no violations") {
  CHECK(check_axioms(handmade::f12()).empty());
  CHECK(check_axioms(handmade::sub3()).empty());
  CHECK(check_axioms(handmade::xor2()).empty());
  CHECK(check_axioms(handmade::collapse3()).empty());
  CHECK(check_axioms(FiniteSA(1, 1, {0}, {{0}})).empty());
  CHECK(check_axioms(FiniteSA(0, 2, {}, {})).empty());
  CHECK(check_axioms(as_finite_sa(full_fsa(2, 2))).empty());
}

TEST_CASE("a single corrupted cell is found and reported faithfully") {
  const FiniteSA bad = mutated_f12();
  const auto violations = check_axioms(bad);
  REQUIRE(!violations.empty());

  const AxiomViolation& first = violations.front();
  CHECK(first.axiom == 1);
  CHECK(first.kappa == 0);
  CHECK(first.x == 1);
  CHECK_FALSE(first.y.has_value());

  for (const AxiomViolation& v : violations) CHECK(violation_holds(bad, v));

  for (std::size_t i = 1; i < violations.size(); ++i) {
    const AxiomViolation& a = violations[i - 1];
    const AxiomViolation& b = violations[i];
    CHECK(a.axiom <= b.axiom);
  }

  CheckOptions one;
  one.max_violations = 1;
  const auto capped = check_axioms(bad, one);
  REQUIRE(capped.size() == 1);
  CHECK(capped.front() == first);
}

TEST_CASE("violation records are re-evaluated, not trusted") {
  const FiniteSA f12 = handmade::f12();
  AxiomViolation fake;
  fake.axiom = 1;
  fake.kappa = 0;
  fake.x = 0;
  CHECK_FALSE(violation_holds(f12, fake));
  AxiomViolation incomplete;
  incomplete.axiom = 5;
  incomplete.kappa = 0;
  incomplete.x = 0;
  CHECK_THROWS_AS(violation_holds(f12, incomplete), usage_error);  // y, z missing
}

TEST_CASE("the projection table breaks the schema") {
  const auto violations = check_axioms(handmade::left_proj2());
  CHECK(!violations.empty());
  for (const AxiomViolation& v : violations)
    CHECK(violation_holds(handmade::left_proj2(), v));
}

TEST_CASE("separation by constants") {
  const DistinguishedReport good = is_distinguished(handmade::f12());
  CHECK(good.holds);
  CHECK(good.witnesses.size() == 6);  // one per unordered pair
  CHECK_FALSE(good.failure.has_value());
  const FiniteSA f12 = handmade::f12();
  for (const DistinguishedWitness& w : good.witnesses) {
    CHECK(dimension_set(f12, w.c).empty());
    CHECK(f12.star(w.c, w.x, w.kappa) != f12.star(w.c, w.y, w.kappa));
  }

  const DistinguishedReport merged = is_distinguished(handmade::collapse3());
  CHECK_FALSE(merged.holds);
  REQUIRE(merged.failure.has_value());
  CHECK(merged.failure->kappa == 0);
  CHECK(merged.failure->x == 0);
  CHECK(merged.failure->y == 1);

  const DistinguishedReport empty = is_distinguished(handmade::xor2());
  CHECK_FALSE(empty.holds);
  REQUIRE(empty.failure.has_value());
  CHECK(empty.failure->x == 0);
  CHECK(empty.failure->y == 1);
}

TEST_CASE("separation by tuples under every index subset") {
  const FiniteSA f12 = handmade::f12();
  const StrongReport good = is_strongly_distinguished(f12);
  CHECK(good.holds);
  CHECK(good.witnesses.size() == 6);
  bool saw_pair = false;
  for (const StrongWitness& w : good.witnesses) {
    if (w.a == 1 && w.b == 2) {
      saw_pair = true;
      CHECK(w.t == std::vector<Id>{0});
    }
    // Re-verify: the tuple separates under both subsets of {0}.
    for (std::uint64_t bits = 0; bits < 2; ++bits) {
      const SubstContext ctx(f12, w.t, DimSet::from_bits(bits));
      CHECK(generalized_subst(ctx, w.a) != generalized_subst(ctx, w.b));
    }
  }
  CHECK(saw_pair);

  const StrongReport merged = is_strongly_distinguished(handmade::collapse3());
  CHECK_FALSE(merged.holds);
  REQUIRE(merged.failure.has_value());
  CHECK(merged.failure->a == 0);
  CHECK(merged.failure->b == 1);

  CHECK_FALSE(is_strongly_distinguished(handmade::xor2()).holds);
}

TEST_CASE("strongly distinguished implies distinguished on the samples") {
  for (const FiniteSA& alg : {handmade::f12(), handmade::sub3(), handmade::xor2(),
                              handmade::collapse3(), as_finite_sa(full_fsa(2, 2))}) {
    if (is_strongly_distinguished(alg).holds) CHECK(is_distinguished(alg).holds);
  }
}

TEST_CASE("dimension reserve is the union of dimension sets") {
  const FiniteSA f12 = handmade::f12();
  CHECK(dimension_reserve(f12, {1, 2}) == DimSet({0}));
  CHECK(dimension_reserve(f12, {0, 3}).empty());
  CHECK(dimension_reserve(f12, {}).empty());
  CHECK(dimension_reserve(f12, {0, 1, 2, 3}) == DimSet({0}));
  CHECK_THROWS_AS(dimension_reserve(f12, {4}), usage_error);
}

TEST_CASE("every representable carrier here is finite") {
  CHECK(is_locally_finite(handmade::f12()));
  CHECK(is_locally_finite(handmade::xor2()));
}
