#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sa/finite_sa.hpp"
#include "sa/fn_space.hpp"
#include "sa/types.hpp"

namespace sa {

// A simultaneous substitution context: one substituted element per dimension
// index, each of whose dimension set avoids gamma. Validated on construction.
class SubstContext {
public:
  SubstContext(const FiniteSA& algebra, std::vector<Id> s, DimSet gamma);

  const FiniteSA& algebra() const { return *algebra_; }
  const std::vector<Id>& s() const { return s_; }
  const DimSet& gamma() const { return gamma_; }

private:
  const FiniteSA* algebra_;
  std::vector<Id> s_;
  DimSet gamma_;
};

// s *_(gamma) a: folds a through star(s[kappa], -, kappa) for kappa in gamma
// ascending. The empty gamma yields a itself. Order does not matter for
// algebras satisfying the axioms; this entry point just fixes one order.
Id generalized_subst(const SubstContext& ctx, Id a);

namespace detail {
// Unchecked fold for hot paths; callers guarantee the context is valid.
Id subst_fold(const FiniteSA& algebra, const std::vector<Id>& s, const DimSet& gamma, Id a);
}  // namespace detail

// Variable bindings of a law counterexample. Fields not used by a law stay
// unset.
struct LawBindings {
  DimSet gamma;
  std::optional<DimSet> sigma;
  std::optional<std::uint32_t> kappa;
  std::vector<Id> s;
  std::optional<Id> a, b, x;
  Id lhs = 0, rhs = 0;
};

struct LawReport {
  std::string law;
  bool pass = true;
  std::uint64_t cases_checked = 0;
  std::optional<LawBindings> counterexample;
};

struct LawCheckOptions {
  // 0 means exhaustive; otherwise at most this many sampled cases per law.
  std::uint64_t max_cases_per_law = 0;
  std::uint64_t seed = 0x5eed5a11;
  // Run the laws even on inputs with axiom violations (used by mutation
  // analysis); by default such inputs are refused.
  bool require_valid = true;
};

// Checks the generalized substitution laws:
//   peel-off:        s *_(G) a = s *_(G-k) (s_k *_k a) for k in G
//   dimension-bound: dims(s *_(G) a) within union of dims(s_k) and dims(a)-G
//   update-peel:     (s with k:=x) *_(G) a = x *_k (s *_(G-k) a) for k in G,
//                    x avoiding G
//   distribution:    (s *_(G) a) *_k (s *_(S) b)
//                      = s *_(G&S) ((s *_(G-S) a) *_k (s *_(S-G) b)),
//                    k not in S, every s_l avoiding G|S|{k}
// Only instances meeting each law's hypotheses are enumerated.
std::vector<LawReport> check_subst_laws(const FiniteSA& algebra,
                                        const LawCheckOptions& options = {});

// Checks that folding gamma in any order yields the same result everywhere.
LawReport check_subst_order_independence(const FiniteSA& algebra,
                                         const LawCheckOptions& options = {});

// The image of a under the canonical map into functions over the gamma-free
// zero set: base lists the zero-set ids ascending, fn tabulates assignments
// (as indices into base) to indices into base.
struct GammaHomImage {
  std::vector<Id> base;
  FnElement fn;
};

GammaHomImage gamma_hom_image(const FiniteSA& algebra, const DimSet& gamma, Id a);

namespace detail {
// Same as gamma_hom_image but skips the axiom re-check; callers guarantee it.
GammaHomImage gamma_hom_image_trusted(const FiniteSA& algebra, const DimSet& gamma, Id a);
}  // namespace detail

// One failed homomorphism condition: either a star product for some index in
// gamma, or a distinguished element mismatch.
struct HomViolation {
  enum class Kind { op, distinguished };
  Kind kind;
  std::uint32_t kappa = 0;
  Id a = 0, b = 0;
};

struct HomReport {
  bool pass = true;
  std::uint64_t cases_checked = 0;
  std::vector<HomViolation> violations;
};

// Checks whether phi (a total map from A's carrier to B's) preserves star and
// the distinguished elements for every index in gamma.
HomReport is_gamma_homomorphism(const std::vector<Id>& phi, const FiniteSA& a,
                                const FiniteSA& b, const DimSet& gamma);

// The same conditions against a function-space target that is never
// materialized: images[x] is the table of x's image over a base of the given
// size, star on images is computed pointwise, and the distinguished elements
// are the variable functions.
HomReport check_hom_into_function_space(const FiniteSA& a, const DimSet& gamma,
                                        const std::vector<FnElement>& images, Id base_size);

}  // namespace sa
