#pragma once

// Small algebras with hand-derived tables, shared across tests. Each table
// was computed on paper from the pointwise product formula (or designed as a
// deliberate counterexample), so comparing library output against these is an
// independent check.

#include <vector>

#include "sa/finite_sa.hpp"

namespace handmade {

inline sa::FiniteSA fsa(std::uint32_t dim, sa::Id size, const std::vector<sa::Id>& v,
                        const std::vector<std::vector<std::vector<sa::Id>>>& tables) {
  std::vector<std::vector<sa::Cell>> star(tables.size());
  for (std::size_t k = 0; k < tables.size(); ++k)
    for (const auto& row : tables[k])
      for (const sa::Id cell : row) star[k].push_back(static_cast<sa::Cell>(cell));
  return sa::FiniteSA(dim, size, v, std::move(star));
}

// All four functions {0,1} -> {0,1} under (f*g)(s) = g(f(s)), so the table is
// composition g o f. Ids by canonical order: 0 = const 0, 1 = negation,
// 2 = the variable, 3 = const 1.
inline sa::FiniteSA f12() {
  return fsa(1, 4, {2},
             {{{0, 3, 0, 3},
               {0, 2, 1, 3},
               {0, 1, 2, 3},
               {0, 0, 3, 3}}});
}

// The subalgebra of f12 on {const 0, variable, const 1}, renumbered 0, 1, 2.
inline sa::FiniteSA sub3() {
  return fsa(1, 3, {1},
             {{{0, 0, 2},
               {0, 1, 2},
               {0, 2, 2}}});
}

// Two elements with x*y = x xor y. Satisfies the schema but both elements
// depend on the only index, so the zero set is empty.
inline sa::FiniteSA xor2() {
  return fsa(1, 2, {0},
             {{{0, 1},
               {1, 0}}});
}

// Satisfies the schema, zero set {1}, and 1*x = 1 for every x, so the
// zero-set map merges 0 and 1. Not distinguished.
inline sa::FiniteSA collapse3() {
  return fsa(1, 3, {0},
             {{{0, 1, 2},
               {1, 1, 1},
               {2, 1, 2}}});
}

// x*y = x. Breaks the schema; no element has an empty dimension set.
inline sa::FiniteSA left_proj2() {
  return fsa(1, 2, {0},
             {{{0, 0},
               {1, 1}}});
}

}  // namespace handmade
