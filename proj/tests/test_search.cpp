#include <doctest.h>

#include <optional>
#include <vector>

#include "sa/constructions.hpp"
#include "sa/error.hpp"
#include "sa/fn_algebra.hpp"
#include "sa/search.hpp"
#include "support/algebras.hpp"

using namespace sa;

namespace {

// Reference search: enumerate injective maps in lexicographic order and keep
// the first one that is a star- and v-preserving homomorphism. No pruning,
// no seeding, so agreement with find_embedding checks both the answer and
// its least-witness contract.
bool oracle_valid(const FiniteSA& a, const FiniteSA& b, const std::vector<Id>& map) {
  for (std::uint32_t k = 0; k < a.dimension(); ++k)
    if (map[a.v(k)] != b.v(k)) return false;
  for (Id x = 0; x < a.size(); ++x)
    for (Id y = 0; y < a.size(); ++y)
      for (std::uint32_t k = 0; k < a.dimension(); ++k)
        if (b.star(map[x], map[y], k) != map[a.star(x, y, k)]) return false;
  return true;
}

std::optional<std::vector<Id>> oracle_embed(const FiniteSA& a, const FiniteSA& b) {
  std::vector<Id> map(a.size(), 0);
  std::vector<bool> used(b.size(), false);
  std::optional<std::vector<Id>> out;
  auto rec = [&](auto&& self, Id x) -> bool {
    if (x == a.size()) {
      if (!oracle_valid(a, b, map)) return false;
      out = map;
      return true;
    }
    for (Id y = 0; y < b.size(); ++y) {
      if (used[y]) continue;
      map[x] = y;
      used[y] = true;
      if (self(self, x + 1)) return true;
      used[y] = false;
    }
    return false;
  };
  rec(rec, 0);
  return out;
}

std::vector<Id> narrow(const std::vector<std::uint64_t>& wide) {
  return std::vector<Id>(wide.begin(), wide.end());
}

}  // namespace

TEST_CASE("embedding search agrees with exhaustive enumeration") {
  const FiniteSA f12 = handmade::f12();
  const FiniteSA sub3 = handmade::sub3();
  const FiniteSA xor2 = handmade::xor2();

  struct Case {
    const FiniteSA* a;
    const FiniteSA* b;
  };
  const Case cases[] = {{&f12, &f12}, {&sub3, &f12}, {&f12, &sub3},
                        {&xor2, &f12}, {&xor2, &sub3}, {&sub3, &sub3},
                        {&xor2, &xor2}, {&f12, &xor2}};
  for (const Case& c : cases) {
    const auto got = find_embedding(*c.a, *c.b);
    const auto want = oracle_embed(*c.a, *c.b);
    REQUIRE(got.has_value() == want.has_value());
    if (got) {
      CHECK(narrow(got->map) == *want);
      CHECK(got->verified);
      CHECK(got->target.kind == TargetDescriptor::Kind::finite);
      CHECK(got->target.dimension == c.b->dimension());
      CHECK(got->target.size == c.b->size());
    }
  }

  CHECK(narrow(find_embedding(f12, f12)->map) == std::vector<Id>{0, 1, 2, 3});
  CHECK(narrow(find_embedding(sub3, f12)->map) == std::vector<Id>{0, 2, 3});
  CHECK(narrow(find_embedding(xor2, f12)->map) == std::vector<Id>{2, 1});
  CHECK_FALSE(find_embedding(f12, sub3).has_value());
  CHECK_FALSE(find_embedding(xor2, sub3).has_value());

  CHECK_THROWS_AS(find_embedding(f12, as_finite_sa(full_fsa(2, 2))), usage_error);
}

TEST_CASE("lazy full-algebra target matches the materialized one") {
  const FiniteSA collapse3 = handmade::collapse3();
  const FiniteSA full13 = as_finite_sa(full_fsa(1, 3));

  // In a full algebra element ids equal canonical ids, so the two witness
  // encodings are directly comparable.
  const auto lazy = find_embedding_into_full(collapse3, 3);
  const auto dense = oracle_embed(collapse3, full13);
  REQUIRE(lazy.has_value());
  REQUIRE(dense.has_value());
  CHECK(narrow(lazy->map) == *dense);
  CHECK(narrow(lazy->map) == std::vector<Id>{21, 0, 3});
  CHECK(lazy->verified);
  CHECK(lazy->target.kind == TargetDescriptor::Kind::full_fn);
  CHECK(lazy->target.dimension == 1);
  CHECK(lazy->target.base_size == 3);

  CHECK_FALSE(find_embedding_into_full(collapse3, 2).has_value());
  CHECK_FALSE(oracle_embed(collapse3, as_finite_sa(full_fsa(1, 2))).has_value());

  const auto self = find_embedding_into_full(handmade::f12(), 2);
  REQUIRE(self.has_value());
  CHECK(narrow(self->map) == std::vector<Id>{0, 1, 2, 3});

  Budget tiny;
  tiny.max_elements = 3;
  CHECK_THROWS_AS(find_embedding_into_full(collapse3, 3, tiny), capacity_error);
}

TEST_CASE("bounded representability tries the canonical route first") {
  const RepresentabilityResult direct = is_representable_up_to(handmade::f12(), 2);
  CHECK(direct.found);
  CHECK(direct.base_size == 2);
  REQUIRE(direct.witness.has_value());
  CHECK(direct.witness->target.kind == TargetDescriptor::Kind::full_fn);
  CHECK(narrow(direct.witness->map) == std::vector<Id>{0, 1, 2, 3});

  // Empty zero set: the canonical route yields nothing, the bounded search
  // still succeeds at base 2.
  const RepresentabilityResult fallback = is_representable_up_to(handmade::xor2(), 2);
  CHECK(fallback.found);
  CHECK(fallback.base_size == 2);
  CHECK(narrow(fallback.witness->map) == std::vector<Id>{2, 1});

  CHECK_FALSE(is_representable_up_to(handmade::xor2(), 1).found);

  // Z-map collision: only the bounded search can answer, and base 2 is too
  // small for this algebra.
  CHECK_FALSE(is_representable_up_to(handmade::collapse3(), 2).found);
  const RepresentabilityResult at3 = is_representable_up_to(handmade::collapse3(), 3);
  CHECK(at3.found);
  CHECK(at3.base_size == 3);
  CHECK(narrow(at3.witness->map) == std::vector<Id>{21, 0, 3});

  const FiniteSA bad = handmade::left_proj2();
  CHECK_THROWS_AS(is_representable_up_to(bad, 2), usage_error);
}

TEST_CASE("neat embeddings land on low-dimension elements") {
  const FiniteSA f12 = handmade::f12();
  const FiniteSA wide = as_finite_sa(full_fsa(2, 2));

  const auto neat = find_neat_embedding(f12, wide, 1);
  REQUIRE(neat.has_value());
  CHECK(neat->map == std::vector<std::uint64_t>{0, 5, 10, 15});
  CHECK(neat->verified);
  CHECK(neat->target.kind == TargetDescriptor::Kind::finite);

  const auto lazy = find_neat_embedding_into_full(f12, 2, 2);
  REQUIRE(lazy.has_value());
  CHECK(lazy->map == std::vector<std::uint64_t>{0, 5, 10, 15});
  CHECK(lazy->verified);
  CHECK(lazy->target.kind == TargetDescriptor::Kind::full_fn);
  CHECK(lazy->target.dimension == 2);
  CHECK(lazy->target.base_size == 2);

  // No fresh indices: the neat part is the whole full algebra.
  const auto flat = find_neat_embedding_into_full(f12, 1, 2);
  REQUIRE(flat.has_value());
  CHECK(flat->map == std::vector<std::uint64_t>{0, 1, 2, 3});

  // beta must match the embedded algebra's dimension and fit the ambient one.
  CHECK_THROWS_AS(find_neat_embedding(f12, wide, 0), usage_error);
  CHECK_THROWS_AS(find_neat_embedding(f12, wide, 2), usage_error);
  CHECK_THROWS_AS(find_neat_embedding(wide, f12, 2), usage_error);
  CHECK_THROWS_AS(find_neat_embedding_into_full(f12, 0, 2), usage_error);
}
