#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sa/finite_sa.hpp"
#include "sa/types.hpp"

namespace sa {

// One failed axiom instance. The axiom field is the schema number (1..6);
// lambda is used by axioms 2, 4 and 6, y by 5 and 6, z by 4, 5 and 6.
// Stored witnesses always satisfy: re-evaluating the instance on the algebra
// reproduces the inequality (see violation_holds).
struct AxiomViolation {
  int axiom = 0;
  std::uint32_t kappa = 0;
  std::optional<std::uint32_t> lambda;
  Id x = 0;
  std::optional<Id> y;
  std::optional<Id> z;

  friend bool operator==(const AxiomViolation&, const AxiomViolation&) = default;
};

struct CheckOptions {
  // Stop collecting after this many violations (the checker still decides
  // emptiness exactly; only the reported list is truncated).
  std::size_t max_violations = 100;
  // Axiom families whose literal instance count stays at or below this run by
  // lexicographic enumeration; larger ones switch to the reduction strategy
  // described in check_axioms.
  std::uint64_t literal_budget = 2'000'000'000;
  unsigned jobs = 0;
};

// Decides the axiom schema exhaustively and returns violations, sorted by
// (axiom, kappa, lambda, x, y, z), truncated to max_violations.
//
// Axioms, for each index kappa (and lambda where present), writing x*y for
// star(x, y, kappa) and v for the distinguished elements:
//   (1) x *_k v_k = x
//   (2) x *_k v_l = v_l                       for l != k
//   (3) v_k *_k x = x
//   (4) x *_l (v_l *_k z) = x *_l (x *_k z)   when l avoids dims(x)
//   (5) (x *_k y) *_k z = x *_k (y *_k z)
//   (6) x *_k (y *_l z) = (x *_k y) *_l (x *_k z)
//                                             for l != k, l avoiding dims(x)
// "l avoids dims(x)" is equivalent to w *_l x = x for all w.
//
// Within the literal budget every instance is enumerated directly, so the
// reported list is the lexicographic prefix of all violating instances. Above
// the budget, associativity (5) is decided by a generating-set argument
// (products against a greedy generating set decide the whole carrier) and
// (6) by the induced reduction (given (5), preservation against a generating
// set extends to all products); both decide emptiness exactly, but on failure
// report only instances from the reduced families.
std::vector<AxiomViolation> check_axioms(const FiniteSA& algebra,
                                         const CheckOptions& options = {});

// Re-evaluates one reported instance; true iff the inequality really holds.
bool violation_holds(const FiniteSA& algebra, const AxiomViolation& violation);

// Every algebra this workbench can hold is finite, so every subalgebra is;
// provided for completeness of the predicate vocabulary.
bool is_locally_finite(const FiniteSA& algebra);

// Witness that index kappa separates x and y: some c with empty dimension set
// has c *_kappa x != c *_kappa y.
struct DistinguishedWitness {
  std::uint32_t kappa = 0;
  Id x = 0, y = 0;
  Id c = 0;
};

struct DistinguishedFailure {
  std::uint32_t kappa = 0;
  Id x = 0, y = 0;
};

struct DistinguishedReport {
  bool holds = true;
  // One witness per (kappa, x < y) when holds; the first failing triple
  // otherwise.
  std::vector<DistinguishedWitness> witnesses;
  std::optional<DistinguishedFailure> failure;
};

DistinguishedReport is_distinguished(const FiniteSA& algebra);

// Witness that t separates a and b under every simultaneous substitution:
// t *_(S) a != t *_(S) b for every index subset S.
struct StrongWitness {
  Id a = 0, b = 0;
  std::vector<Id> t;
};

struct StrongFailure {
  Id a = 0, b = 0;
};

struct StrongReport {
  bool holds = true;
  std::vector<StrongWitness> witnesses;
  std::optional<StrongFailure> failure;
};

// For every pair a != b searches tuples t over the full zero set (ascending
// in the tuple's little-endian rank) for one whose substitutions never merge
// a and b.
StrongReport is_strongly_distinguished(const FiniteSA& algebra);

// Indices that some element of xs depends on: the union of their dimension
// sets. The complementary infinitude predicate is vacuous at finite
// dimension; callers report it as false.
DimSet dimension_reserve(const FiniteSA& algebra, const std::vector<Id>& xs);

}  // namespace sa
