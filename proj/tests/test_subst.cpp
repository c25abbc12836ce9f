#include <doctest.h>

#include <string>
#include <vector>

#include "sa/error.hpp"
#include "sa/fn_algebra.hpp"
#include "sa/subst.hpp"
#include "support/algebras.hpp"

using namespace sa;

TEST_CASE("context construction enforces the avoidance requirement") {
  const FiniteSA f12 = handmade::f12();
  CHECK_NOTHROW(SubstContext(f12, {0}, DimSet({0})));
  CHECK_NOTHROW(SubstContext(f12, {3}, DimSet({0})));
  // The variable depends on index 0, so it cannot be substituted along it.
  CHECK_THROWS_AS(SubstContext(f12, {2}, DimSet({0})), usage_error);
  CHECK_THROWS_AS(SubstContext(f12, {1}, DimSet({0})), usage_error);
  // Every entry is validated, even at positions outside gamma.
  CHECK_NOTHROW(SubstContext(f12, {2}, DimSet{}));
  CHECK_THROWS_AS(SubstContext(f12, {0, 0}, DimSet({0})), usage_error);  // length
  CHECK_THROWS_AS(SubstContext(f12, {4}, DimSet({0})), usage_error);     // range
  CHECK_THROWS_AS(SubstContext(f12, {0}, DimSet({1})), usage_error);     // index
}

TEST_CASE("a singleton index set is a single star application") {
  const FiniteSA f12 = handmade::f12();
  for (const Id s0 : {Id{0}, Id{3}}) {
    const SubstContext ctx(f12, {s0}, DimSet({0}));
    for (Id a = 0; a < f12.size(); ++a)
      CHECK(generalized_subst(ctx, a) == f12.star(s0, a, 0));
  }
}

TEST_CASE("the empty index set substitutes nothing") {
  const FiniteSA f12 = handmade::f12();
  const SubstContext ctx(f12, {1}, DimSet{});
  for (Id a = 0; a < f12.size(); ++a) CHECK(generalized_subst(ctx, a) == a);
  CHECK_THROWS_AS(generalized_subst(ctx, 4), usage_error);
}

TEST_CASE("two-index folds equal the explicit nested stars in either order") {
  const FiniteSA full22 = as_finite_sa(full_fsa(2, 2));
  const std::vector<Id> zs = zero_set(full22, DimSet::full(2));
  REQUIRE(zs == std::vector<Id>{0, 15});
  for (const Id s0 : zs)
    for (const Id s1 : zs) {
      const SubstContext ctx(full22, {s0, s1}, DimSet({0, 1}));
      for (Id a = 0; a < full22.size(); ++a) {
        const Id lo_first = full22.star(s1, full22.star(s0, a, 0), 1);
        const Id hi_first = full22.star(s0, full22.star(s1, a, 1), 0);
        CHECK(generalized_subst(ctx, a) == lo_first);
        CHECK(lo_first == hi_first);
      }
    }
}

TEST_CASE("substitution laws hold on the conforming algebras") {
  for (const FiniteSA& alg : {handmade::f12(), as_finite_sa(full_fsa(2, 2)), handmade::sub3()}) {
    CHECK(check_subst_order_independence(alg).pass);
    const auto reports = check_subst_laws(alg);
    REQUIRE(reports.size() == 4);
    CHECK(reports[0].law == "peel-off");
    CHECK(reports[1].law == "dimension-bound");
    CHECK(reports[2].law == "update-peel");
    CHECK(reports[3].law == "distribution");
    for (const LawReport& r : reports) {
      CHECK(r.pass);
      CHECK(r.cases_checked > 0);
      CHECK_FALSE(r.counterexample.has_value());
    }
  }
  // With an empty zero set no law has a valid instance; the checks must
  // report a vacuous pass rather than fail or refuse.
  for (const LawReport& r : check_subst_laws(handmade::xor2())) {
    CHECK(r.pass);
    CHECK_FALSE(r.counterexample.has_value());
  }
}

TEST_CASE("law checks refuse schema violators unless forced") {
  const FiniteSA broken = handmade::left_proj2();
  CHECK_THROWS_AS(check_subst_laws(broken), usage_error);
  CHECK_THROWS_AS(check_subst_order_independence(broken), usage_error);
  LawCheckOptions forced;
  forced.require_valid = false;
  CHECK_NOTHROW(check_subst_laws(broken, forced));
}

TEST_CASE("law sampling with a case cap is deterministic") {
  const FiniteSA full22 = as_finite_sa(full_fsa(2, 2));
  LawCheckOptions capped;
  capped.max_cases_per_law = 50;
  const auto first = check_subst_laws(full22, capped);
  const auto second = check_subst_laws(full22, capped);
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].pass);
    CHECK(first[i].cases_checked <= 50);
    CHECK(first[i].cases_checked == second[i].cases_checked);
  }
}

TEST_CASE("zero-set images reproduce the hand-computed tables") {
  const FiniteSA f12 = handmade::f12();
  const DimSet gamma({0});
  const std::vector<std::vector<Id>> expect = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  for (Id a = 0; a < 4; ++a) {
    const GammaHomImage img = gamma_hom_image(f12, gamma, a);
    CHECK(img.base == std::vector<Id>{0, 3});
    CHECK(img.fn.table == expect[a]);
  }
}

TEST_CASE("zero-set images require a conforming algebra and a nonempty base") {
  CHECK_THROWS_AS(gamma_hom_image(handmade::left_proj2(), DimSet({0}), 0), usage_error);
  CHECK_THROWS_AS(gamma_hom_image(handmade::xor2(), DimSet({0}), 0), degenerate_error);
  CHECK_THROWS_AS(gamma_hom_image(handmade::f12(), DimSet({0}), 4), usage_error);
}

TEST_CASE("the canonical images form a homomorphism into the function space") {
  const FiniteSA f12 = handmade::f12();
  const DimSet gamma({0});
  std::vector<FnElement> images;
  for (Id a = 0; a < 4; ++a) images.push_back(gamma_hom_image(f12, gamma, a).fn);
  const HomReport good = check_hom_into_function_space(f12, gamma, images, 2);
  CHECK(good.pass);
  CHECK(good.cases_checked > 0);
  CHECK(good.violations.empty());

  auto broken = images;
  broken[1].table[0] ^= 1;
  const HomReport bad = check_hom_into_function_space(f12, gamma, broken, 2);
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.violations.empty());

  auto v_wrong = images;
  v_wrong[2].table = {1, 0};  // distinguished image must be the variable
  const HomReport dist = check_hom_into_function_space(f12, gamma, v_wrong, 2);
  CHECK_FALSE(dist.pass);
  bool saw_distinguished = false;
  for (const HomViolation& v : dist.violations)
    saw_distinguished |= v.kind == HomViolation::Kind::distinguished;
  CHECK(saw_distinguished);
}

TEST_CASE("plain homomorphism checks between table algebras") {
  const FiniteSA f12 = handmade::f12();
  const FiniteSA sub3 = handmade::sub3();
  const std::vector<Id> inclusion = {0, 2, 3};
  CHECK(is_gamma_homomorphism(inclusion, sub3, f12, DimSet({0})).pass);
  CHECK(is_gamma_homomorphism({0, 1, 2, 3}, f12, f12, DimSet({0})).pass);

  const HomReport collapsed = is_gamma_homomorphism({0, 0, 0, 0}, f12, f12, DimSet({0}));
  CHECK_FALSE(collapsed.pass);
  bool saw_distinguished = false;
  for (const HomViolation& v : collapsed.violations)
    saw_distinguished |= v.kind == HomViolation::Kind::distinguished;
  CHECK(saw_distinguished);

  CHECK_THROWS_AS(is_gamma_homomorphism({0, 1}, sub3, f12, DimSet({0})), usage_error);
  CHECK_THROWS_AS(is_gamma_homomorphism(inclusion, sub3, as_finite_sa(full_fsa(2, 2)),
                                        DimSet({0})),
                  usage_error);
}
