#include <doctest.h>

#include <cstdint>
#include <vector>

#include "sa/error.hpp"
#include "sa/fn_space.hpp"
#include "support/oracles.hpp"

using namespace sa;

namespace {

FnElement lift(const oracle::Table& t) {
  FnElement f;
  f.table.assign(t.begin(), t.end());
  return f;
}

Assignment lift_point(const oracle::Point& p) {
  Assignment s;
  s.entries.assign(p.begin(), p.end());
  return s;
}

}  // namespace

TEST_CASE("assignment ranking agrees with counting order") {
  for (const auto [dim, base] : {std::pair{1u, 2u}, {2u, 2u}, {2u, 3u}, {3u, 2u}, {1u, 5u}}) {
    const FnSpace space(dim, base);
    const auto pts = oracle::points(dim, base);
    REQUIRE(space.point_count() == pts.size());
    for (std::uint64_t r = 0; r < pts.size(); ++r) {
      CHECK(space.unrank(r) == lift_point(pts[r]));
      CHECK(space.rank(lift_point(pts[r])) == r);
    }
  }
}

TEST_CASE("updated replaces exactly one slot") {
  const FnSpace space(3, 2);
  for (std::uint64_t r = 0; r < space.point_count(); ++r) {
    const Assignment s = space.unrank(r);
    for (std::uint32_t k = 0; k < 3; ++k)
      for (Id x = 0; x < 2; ++x) {
        const Assignment t = space.updated(s, k, x);
        CHECK(t.entries[k] == x);
        for (std::uint32_t l = 0; l < 3; ++l)
          if (l != k) CHECK(t.entries[l] == s.entries[l]);
      }
  }
}

TEST_CASE("variable and constant tables match their definitions") {
  const FnSpace space(2, 3);
  for (std::uint32_t k = 0; k < 2; ++k)
    CHECK(space.variable(k) == lift(oracle::variable(k, 2, 3)));
  for (Id c = 0; c < 3; ++c)
    CHECK(space.constant(c) == lift(oracle::constant(c, 2, 3)));
  CHECK_THROWS_AS(space.variable(2), usage_error);
  CHECK_THROWS_AS(space.constant(3), usage_error);
}

TEST_CASE("eval is table lookup at the point's rank") {
  const FnSpace space(2, 2);
  const auto pts = oracle::points(2, 2);
  const oracle::Table t{0, 1, 1, 0};
  const FnElement f = lift(t);
  for (std::size_t r = 0; r < pts.size(); ++r)
    CHECK(space.eval(f, lift_point(pts[r])) == t[r]);
}

TEST_CASE("negation composed with itself is the variable") {
  const FnSpace space(1, 2);
  const FnElement neg = lift({1, 0});
  CHECK(space.star(neg, neg, 0) == space.variable(0));
  CHECK(space.star(neg, space.variable(0), 0) == neg);
}

TEST_CASE("star agrees with the pointwise formula on whole small spaces") {
  for (const auto [dim, base] : {std::pair{1u, 2u}, {2u, 2u}, {1u, 3u}}) {
    const FnSpace space(dim, base);
    const auto pts = oracle::points(dim, base);
    std::vector<oracle::Table> all;
    oracle::Table t(pts.size(), 0);
    for (;;) {
      all.push_back(t);
      std::size_t r = 0;
      while (r < t.size() && t[r] + 1 == base) t[r++] = 0;
      if (r == t.size()) break;
      ++t[r];
    }
    for (const auto& f : all)
      for (const auto& g : all)
        for (unsigned k = 0; k < dim; ++k)
          CHECK(space.star(lift(f), lift(g), k) == lift(oracle::star(f, g, k, dim, base)));
  }
}

TEST_CASE("canonical ids follow the digit formula and round-trip") {
  const FnSpace space(2, 2);
  for (std::uint64_t id = 0; id < 16; ++id) {
    const FnElement f = space.from_canonical_id(id);
    oracle::Table t(f.table.begin(), f.table.end());
    CHECK(oracle::can_id(t, 2) == id);
    CHECK(space.canonical_id(f) == id);
  }
  CHECK(space.canonical_id(space.variable(0)) == 10);
  CHECK(space.canonical_id(space.variable(1)) == 12);
  CHECK_THROWS_AS(space.from_canonical_id(16), usage_error);
}

TEST_CASE("canonical id overflow is a capacity error") {
  const FnSpace space(2, 256);  // 256^65536 element functions
  CHECK(space.canonical_id(space.constant(0)) == 0);
  CHECK_THROWS_AS(space.canonical_id(space.constant(1)), capacity_error);
}

TEST_CASE("element counts") {
  CHECK(FnSpace(1, 2).element_count() == 4);
  CHECK(FnSpace(2, 2).element_count() == 16);
  CHECK(FnSpace(4, 2).element_count() == 65536);
  CHECK(FnSpace(2, 3).element_count() == 19683);
  CHECK_FALSE(FnSpace(2, 16).element_count().has_value());
}

TEST_CASE("dependence matches the two-point definition") {
  for (const auto [dim, base] : {std::pair{2u, 2u}, {3u, 2u}, {1u, 3u}}) {
    const FnSpace space(dim, base);
    const auto pts = oracle::points(dim, base);
    oracle::Table t(pts.size(), 0);
    for (int trial = 0; trial < 64; ++trial) {
      const auto expect = oracle::depends_on(t, dim, base);
      const DimSet got = space.dependence(lift(t));
      CHECK(std::vector<std::uint32_t>(expect.begin(), expect.end()) == got.members());
      std::size_t r = 0;  // next table in counting order
      while (r < t.size() && t[r] + 1 == base) t[r++] = 0;
      if (r == t.size()) break;
      ++t[r];
    }
    for (unsigned k = 0; k < dim; ++k)
      CHECK(space.dependence(space.variable(k)).members() == std::vector<std::uint32_t>{k});
    CHECK(space.dependence(space.constant(0)).empty());
  }
}

TEST_CASE("validation rejects malformed inputs") {
  const FnSpace space(2, 2);
  CHECK_THROWS_AS(space.validate_assignment(Assignment{{0}}), usage_error);
  CHECK_THROWS_AS(space.validate_assignment(Assignment{{0, 2}}), usage_error);
  CHECK_THROWS_AS(space.validate_element(FnElement{{0, 1, 0}}), usage_error);
  CHECK_THROWS_AS(space.validate_element(FnElement{{0, 1, 0, 2}}), usage_error);
  CHECK_THROWS_AS(FnSpace(0, 2), usage_error);
  CHECK_THROWS_AS(FnSpace(1, 0), usage_error);
  CHECK_THROWS_AS(FnSpace(65, 2), usage_error);
  CHECK_THROWS_AS(FnSpace(63, 3), capacity_error);  // 3^63 points overflow
}
