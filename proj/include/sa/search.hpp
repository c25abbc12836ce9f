#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sa/finite_sa.hpp"
#include "sa/fn_space.hpp"
#include "sa/types.hpp"

namespace sa {

// Where an embedding landed: either a concrete finite algebra supplied by the
// caller, or the full function algebra of the stated dimension and base, in
// which case map entries are canonical ids.
struct TargetDescriptor {
  enum class Kind { finite, full_fn };
  Kind kind = Kind::finite;
  std::uint32_t dimension = 0;
  std::uint64_t size = 0;  // finite targets: carrier size
  Id base_size = 0;        // full_fn targets: base size
};

struct EmbeddingWitness {
  std::vector<std::uint64_t> map;  // source id -> target id
  TargetDescriptor target;
  bool verified = false;  // injective homomorphism, rechecked exhaustively
};

// Backtracking search for an injective homomorphism from a into b
// (star-preserving for every index, distinguished elements onto distinguished
// elements). The distinguished elements are seeded, the remaining source ids
// are assigned in ascending order with candidates tried in ascending target
// id, and candidates whose dimension set does not cover the source element's
// are pruned. Returns the lexicographically least witness map, or nothing
// after an exhaustive search.
std::optional<EmbeddingWitness> find_embedding(const FiniteSA& a, const FiniteSA& b);

// Same search against the full function algebra over the given base, held
// lazily: candidate tables are decoded from canonical ids and star products
// are computed pointwise, so nothing quadratic in the target is ever stored.
// Throws capacity_error if the target would have more than
// budget.max_elements elements.
std::optional<EmbeddingWitness> find_embedding_into_full(const FiniteSA& a, Id base_size,
                                                         const Budget& budget = {});

struct RepresentabilityResult {
  bool found = false;
  std::optional<EmbeddingWitness> witness;
  Id base_size = 0;  // of the witness, when found
};

// Searches for an embedding into a full function algebra: first the canonical
// zero-set representation (whatever base size that yields), then full
// algebras over base sizes 1..max_base in increasing order. A negative
// result means "no witness within these bounds", never "not representable".
// Requires the algebra to pass the axiom check.
RepresentabilityResult is_representable_up_to(const FiniteSA& algebra, Id max_base,
                                              const Budget& budget = {});

// Embedding of b into the neat reduct of a at b's dimension. beta is
// validated against b's dimension.
std::optional<EmbeddingWitness> find_neat_embedding(const FiniteSA& b, const FiniteSA& a,
                                                    std::uint32_t beta);

// Same, with the ambient algebra being the full function algebra of the given
// dimension over the given base. The neat part (elements depending only on
// indices below beta) is materialized directly by filtering canonical ids, so
// the ambient algebra itself never is. Requires base_size^(base_size^gamma)
// to stay within budget.max_elements.
std::optional<EmbeddingWitness> find_neat_embedding_into_full(const FiniteSA& b,
                                                              std::uint32_t gamma, Id base_size,
                                                              const Budget& budget = {});

}  // namespace sa
