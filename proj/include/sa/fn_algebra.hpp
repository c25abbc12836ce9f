#pragma once

#include <cstdint>
#include <vector>

#include "sa/finite_sa.hpp"
#include "sa/fn_space.hpp"
#include "sa/types.hpp"

namespace sa {

// A finite set of function elements over a fixed space, intended to be closed
// under every star operation and to contain every variable element. The
// "full" flag records that the carrier is the entire function space; for full
// algebras the elements are enumerated in ascending canonical id, so position
// equals canonical id.
struct FnAlgebra {
  std::uint32_t dimension = 1;
  Id base_size = 1;
  std::vector<FnElement> elements;
  bool full = false;

  FnSpace space() const { return FnSpace(dimension, base_size); }
};

// Problems found by check_fn_algebra.
struct FnAlgebraDefect {
  enum class Kind {
    bad_table,          // a table has the wrong length or out-of-range values
    duplicate_element,  // two positions hold the same table
    missing_variable,   // some variable element is absent
    not_closed,         // a star product escapes the carrier
    full_flag_wrong,    // the full flag disagrees with the element count
  };
  Kind kind;
  // Meaning depends on kind: positions of the offending elements and the
  // dimension index involved, where applicable.
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint32_t kappa = 0;
};

std::vector<FnAlgebraDefect> check_fn_algebra(const FnAlgebra& algebra);

// The full function substitution algebra over the given space. Refuses to
// materialize more than budget.max_elements elements.
FnAlgebra full_fsa(std::uint32_t dimension, Id base_size, const Budget& budget = {});

// Tabulates the star operations of a closed FnAlgebra as a FiniteSA whose id
// i is the position of the i-th element. Throws integrity_error if the
// algebra fails check_fn_algebra.
FiniteSA as_finite_sa(const FnAlgebra& algebra, const Budget& budget = {});

}  // namespace sa
