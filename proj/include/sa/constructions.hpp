#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sa/finite_sa.hpp"
#include "sa/fn_algebra.hpp"
#include "sa/fn_space.hpp"
#include "sa/types.hpp"

namespace sa {

// A family of subsets of the index set {0, ..., index_size-1}, each packed as
// a bit mask. Intended to be a proper filter; validate_filter checks that.
struct FilterSpec {
  std::uint32_t index_size = 0;
  std::vector<std::uint64_t> sets;

  bool member(std::uint64_t mask) const;
  std::uint64_t universe() const { return (std::uint64_t{1} << index_size) - 1; }
};

struct FilterViolation {
  enum class Kind {
    bad_index_size,          // index_size is 0 or above 63
    set_outside_universe,    // witness_a lists stray bits
    missing_universe,        // the full index set is absent
    not_upward_closed,       // witness_a is present, superset witness_b is not
    not_intersection_closed, // witness_a and witness_b present, meet absent
    improper,                // the empty set is present
  };
  Kind kind;
  std::uint64_t witness_a = 0;
  std::uint64_t witness_b = 0;
};

std::vector<FilterViolation> validate_filter(const FilterSpec& filter);

// {I} and the upward closure of one core set, spelled out explicitly.
FilterSpec trivial_filter(std::uint32_t index_size);
FilterSpec principal_filter(std::uint32_t index_size, std::uint64_t core_mask);

// Tuple ranks are lexicographic with position 0 most significant, so rank
// order equals lexicographic tuple order.
struct QuotientMap {
  std::vector<Id> class_of;                  // tuple rank -> class id
  std::vector<std::vector<Id>> representatives;  // class id -> least tuple
};

struct ReducedProduct {
  FiniteSA algebra;
  QuotientMap quotient;
};

struct ProductOptions {
  // Improper filters collapse everything to one class; refused unless set.
  bool allow_improper = false;
  // Recompute each table cell from second representatives where available to
  // confirm the operations are well defined on classes.
  bool verify_well_defined = false;
  std::uint64_t max_tuples = 1'000'000;
};

// The product of the factors modulo the filter congruence: tuples x ~ y iff
// the set of positions where they agree belongs to the filter. Class ids are
// assigned in order of each class's least tuple.
ReducedProduct reduced_product(const std::vector<const FiniteSA*>& factors,
                               const FilterSpec& filter, const ProductOptions& options = {});

struct Subalgebra {
  FiniteSA algebra;
  std::vector<Id> inclusion;  // new id -> old id, ascending
};

// Closure of the generators and all distinguished elements under every star
// operation, renumbered by ascending old id.
Subalgebra generate_subalgebra(const FiniteSA& algebra, std::vector<Id> generators);

enum class RepresentationStatus { embedding, not_injective, empty_base };

// The canonical map into functions over the full zero set: images[a] is the
// table of s -> s *_(full) a over zero-set assignments, base lists the zero
// set ascending. status is embedding when the map is injective (it is always
// a homomorphism on inputs that satisfy the axioms; recorded anyway).
struct ZRepresentation {
  RepresentationStatus status = RepresentationStatus::empty_base;
  std::vector<Id> base;
  std::vector<FnElement> images;
  bool homomorphism = false;
  // Set when not_injective: two sources with equal images.
  std::optional<std::pair<Id, Id>> collision;
};

ZRepresentation representation_via_Z(const FiniteSA& algebra);

// First beta indices only, same carrier.
FiniteSA reduct(const FiniteSA& algebra, std::uint32_t beta);

struct NeatReduct {
  FiniteSA algebra;
  std::vector<Id> carrier;  // new id -> old id, ascending
};

// Elements whose dimension set sits below beta, with the first beta
// operations. Throws integrity_error if that set is not closed or misses a
// distinguished element.
NeatReduct neat_reduct(const FiniteSA& algebra, std::uint32_t beta);

// Images of a function algebra's elements inside the function space with
// extra fresh indices appended: each image is the cylinder f(s) = f(s
// restricted to the original indices).
struct Dilation {
  std::uint32_t target_dimension = 0;
  Id base_size = 0;
  std::vector<FnElement> images;
  // Canonical ids of the images in the larger space, where they fit 64 bits.
  std::vector<std::optional<std::uint64_t>> canonical_ids;
  bool verified = false;  // hom + injectivity + dependence below the original dimension
};

Dilation dilate(const FnAlgebra& algebra, std::uint32_t extra, const Budget& budget = {});

// Extends the algebra to dimension gamma: new indices act by right
// projection (x *_l y = y) with chosen distinguished elements. The result is
// generally not an algebra of the axiom schema; its violations all mention
// an added index.
FiniteSA pad_algebra(const FiniteSA& algebra, std::uint32_t gamma,
                     const std::vector<Id>& v_choice);

}  // namespace sa
