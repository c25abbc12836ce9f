#include "sa/search.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "sa/fn_algebra.hpp"
#include "sa/constructions.hpp"
#include "sa/predicates.hpp"

namespace sa {

namespace {

// What the backtracking engine needs from an embedding target. Kept abstract
// so full function algebras can stay lazy (ids are canonical ids, products
// are computed pointwise on decoded tables).
class TargetView {
public:
  virtual ~TargetView() = default;
  virtual std::uint64_t size() const = 0;
  virtual std::uint64_t v(std::uint32_t kappa) const = 0;
  virtual std::uint64_t star(std::uint64_t a, std::uint64_t b, std::uint32_t kappa) const = 0;
  virtual std::uint64_t mask(std::uint64_t x) const = 0;
  virtual TargetDescriptor descriptor() const = 0;
};

class FiniteTargetView : public TargetView {
public:
  explicit FiniteTargetView(const FiniteSA& algebra)
      : algebra_(algebra), masks_(dependence_masks(algebra)) {}
  std::uint64_t size() const override { return algebra_.size(); }
  std::uint64_t v(std::uint32_t kappa) const override { return algebra_.v(kappa); }
  std::uint64_t star(std::uint64_t a, std::uint64_t b, std::uint32_t kappa) const override {
    return algebra_.row(kappa, static_cast<Id>(a))[b];
  }
  std::uint64_t mask(std::uint64_t x) const override { return masks_[x]; }
  TargetDescriptor descriptor() const override {
    return TargetDescriptor{.kind = TargetDescriptor::Kind::finite,
                            .dimension = algebra_.dimension(),
                            .size = algebra_.size()};
  }

private:
  const FiniteSA& algebra_;
  std::vector<std::uint64_t> masks_;
};

class FullFnTargetView : public TargetView {
public:
  FullFnTargetView(std::uint32_t dimension, Id base_size, const Budget& budget)
      : space_(dimension, base_size) {
    const auto count = space_.element_count();
    if (!count || *count > budget.max_elements)
      throw capacity_error("full function algebra target over base " +
                           std::to_string(base_size) + " in dimension " +
                           std::to_string(dimension) +
                           " exceeds the materialization budget of " +
                           std::to_string(budget.max_elements) + " elements");
    tables_.reserve(*count);
    masks_.reserve(*count);
    for (std::uint64_t id = 0; id < *count; ++id) {
      tables_.push_back(space_.from_canonical_id(id));
      masks_.push_back(space_.dependence(tables_.back()).bits());
    }
  }
  std::uint64_t size() const override { return tables_.size(); }
  std::uint64_t v(std::uint32_t kappa) const override {
    return space_.canonical_id(space_.variable(kappa));
  }
  std::uint64_t star(std::uint64_t a, std::uint64_t b, std::uint32_t kappa) const override {
    return space_.canonical_id(space_.star(tables_[a], tables_[b], kappa));
  }
  std::uint64_t mask(std::uint64_t x) const override { return masks_[x]; }
  TargetDescriptor descriptor() const override {
    return TargetDescriptor{.kind = TargetDescriptor::Kind::full_fn,
                            .dimension = space_.dimension(),
                            .base_size = space_.base_size()};
  }

private:
  FnSpace space_;
  std::vector<FnElement> tables_;
  std::vector<std::uint64_t> masks_;
};

// One product constraint: map[left] *_kappa map[right] must equal
// map[result]. Grouped by the assignment step at which all three are mapped.
struct Constraint {
  Id left, right, result;
  std::uint32_t kappa;
};

std::optional<EmbeddingWitness> run_search(const FiniteSA& a, const TargetView& view) {
  const std::uint32_t alpha = a.dimension();
  const Id n = a.size();
  const std::uint64_t m = view.size();
  if (n > m) return std::nullopt;
  const auto masks_a = dependence_masks(a);

  constexpr std::uint64_t kUnassigned = ~std::uint64_t{0};
  std::vector<std::uint64_t> map(n, kUnassigned);
  std::vector<std::uint8_t> used(m, 0);

  // Distinguished elements are forced.
  for (std::uint32_t k = 0; k < alpha; ++k) {
    const Id src = a.v(k);
    const std::uint64_t dst = view.v(k);
    if (map[src] != kUnassigned) {
      if (map[src] != dst) return std::nullopt;
      continue;
    }
    if (used[dst]) return std::nullopt;  // two sources forced onto one target
    if (masks_a[src] & ~view.mask(dst)) return std::nullopt;
    map[src] = dst;
    used[dst] = 1;
  }

  // Assignment sequence: seeded elements first, then the remaining ids in
  // ascending order. Seed images agree across all embeddings, so exploring
  // candidates for the rest in ascending target order makes the first witness
  // the lexicographically least map.
  std::vector<Id> sequence;
  std::vector<std::uint8_t> in_sequence(n, 0);
  for (std::uint32_t k = 0; k < alpha; ++k)
    if (!in_sequence[a.v(k)]) {
      sequence.push_back(a.v(k));
      in_sequence[a.v(k)] = 1;
    }
  const std::size_t seeded = sequence.size();
  for (Id x = 0; x < n; ++x)
    if (!in_sequence[x]) {
      sequence.push_back(x);
      in_sequence[x] = 1;
    }

  // Bucket every product triple at the earliest step where all three of its
  // elements are mapped.
  std::vector<std::size_t> step_of(n);
  for (std::size_t i = 0; i < sequence.size(); ++i) step_of[sequence[i]] = i;
  std::vector<std::vector<Constraint>> at_step(n);
  for (std::uint32_t k = 0; k < alpha; ++k)
    for (Id x = 0; x < n; ++x)
      for (Id y = 0; y < n; ++y) {
        const Id r = a.star(x, y, k);
        const std::size_t step = std::max({step_of[x], step_of[y], step_of[r]});
        at_step[step].push_back(Constraint{x, y, r, k});
      }

  const auto satisfied = [&](const Constraint& c) {
    return view.star(map[c.left], map[c.right], c.kappa) == map[c.result];
  };
  for (std::size_t i = 0; i < seeded; ++i)
    for (const Constraint& c : at_step[i])
      if (!satisfied(c)) return std::nullopt;

  // Depth-first over the remaining steps, candidates in ascending target id.
  // An embedding forces the target's dimension set to cover the source's
  // (kappa moving x is witnessed inside the image), hence the mask prune.
  std::vector<std::uint64_t> cursor(n, 0);
  std::size_t depth = seeded;
  while (true) {
    if (depth == n) break;
    const Id x = sequence[depth];
    bool advanced = false;
    for (std::uint64_t y = cursor[depth]; y < m; ++y) {
      if (used[y]) continue;
      if (masks_a[x] & ~view.mask(y)) continue;
      map[x] = y;
      bool ok = true;
      for (const Constraint& c : at_step[depth])
        if (!satisfied(c)) {
          ok = false;
          break;
        }
      if (!ok) {
        map[x] = kUnassigned;
        continue;
      }
      used[y] = 1;
      cursor[depth] = y + 1;
      ++depth;
      if (depth < n) cursor[depth] = 0;
      advanced = true;
      break;
    }
    if (!advanced) {
      map[x] = kUnassigned;
      cursor[depth] = 0;
      if (depth == seeded) return std::nullopt;
      --depth;
      const Id prev = sequence[depth];
      used[map[prev]] = 0;
      map[prev] = kUnassigned;
    }
  }

  EmbeddingWitness witness;
  witness.map.assign(map.begin(), map.end());
  witness.target = view.descriptor();
  // Exhaustive recheck, independent of the pruned search above.
  witness.verified = true;
  for (Id x = 0; x < n && witness.verified; ++x)
    for (Id y = 0; y < n && witness.verified; ++y)
      witness.verified = x == y || witness.map[x] != witness.map[y];
  for (std::uint32_t k = 0; k < alpha && witness.verified; ++k)
    witness.verified = witness.map[a.v(k)] == view.v(k);
  for (std::uint32_t k = 0; k < alpha && witness.verified; ++k)
    for (Id x = 0; x < n && witness.verified; ++x)
      for (Id y = 0; y < n && witness.verified; ++y)
        witness.verified =
            view.star(witness.map[x], witness.map[y], k) == witness.map[a.star(x, y, k)];
  return witness;
}

}  // namespace

std::optional<EmbeddingWitness> find_embedding(const FiniteSA& a, const FiniteSA& b) {
  if (a.dimension() != b.dimension())
    throw usage_error("algebras have different dimensions (" + std::to_string(a.dimension()) +
                      " and " + std::to_string(b.dimension()) + ")");
  return run_search(a, FiniteTargetView(b));
}

std::optional<EmbeddingWitness> find_embedding_into_full(const FiniteSA& a, Id base_size,
                                                         const Budget& budget) {
  return run_search(a, FullFnTargetView(a.dimension(), base_size, budget));
}

RepresentabilityResult is_representable_up_to(const FiniteSA& algebra, Id max_base,
                                              const Budget& budget) {
  {
    CheckOptions quick;
    quick.max_violations = 1;
    if (!check_axioms(algebra, quick).empty())
      throw usage_error(
          "the algebra violates the axiom schema; run an axiom check for details");
  }
  RepresentabilityResult result;
  const ZRepresentation rep = representation_via_Z(algebra);
  if (rep.status == RepresentationStatus::embedding) {
    const Id base = static_cast<Id>(rep.base.size());
    const FnSpace sp(algebra.dimension(), base);
    EmbeddingWitness witness;
    witness.target = TargetDescriptor{.kind = TargetDescriptor::Kind::full_fn,
                                      .dimension = algebra.dimension(),
                                      .base_size = base};
    bool ids_fit = true;
    witness.map.reserve(rep.images.size());
    for (const FnElement& f : rep.images) {
      try {
        witness.map.push_back(sp.canonical_id(f));
      } catch (const capacity_error&) {
        ids_fit = false;  // witness not expressible as 64-bit ids; fall through to search
        break;
      }
    }
    if (ids_fit) {
      witness.verified = rep.homomorphism;
      result.found = true;
      result.witness = std::move(witness);
      result.base_size = base;
      return result;
    }
  }
  for (Id u = 1; u <= max_base; ++u) {
    auto witness = find_embedding_into_full(algebra, u, budget);
    if (witness) {
      result.found = true;
      result.base_size = u;
      result.witness = std::move(witness);
      return result;
    }
  }
  return result;
}

std::optional<EmbeddingWitness> find_neat_embedding(const FiniteSA& b, const FiniteSA& a,
                                                    std::uint32_t beta) {
  if (beta != b.dimension())
    throw usage_error("the embedded algebra has dimension " + std::to_string(b.dimension()) +
                      ", expected " + std::to_string(beta));
  if (beta > a.dimension())
    throw usage_error("the ambient algebra has dimension " + std::to_string(a.dimension()) +
                      ", below " + std::to_string(beta));
  const NeatReduct neat = neat_reduct(a, beta);
  auto witness = run_search(b, FiniteTargetView(neat.algebra));
  if (!witness) return witness;
  // Translate to ambient ids; the target descriptor keeps the ambient shape.
  for (auto& t : witness->map) t = neat.carrier[t];
  witness->target = TargetDescriptor{.kind = TargetDescriptor::Kind::finite,
                                     .dimension = a.dimension(),
                                     .size = a.size()};
  return witness;
}

std::optional<EmbeddingWitness> find_neat_embedding_into_full(const FiniteSA& b,
                                                              std::uint32_t gamma, Id base_size,
                                                              const Budget& budget) {
  const std::uint32_t beta = b.dimension();
  if (beta > gamma)
    throw usage_error("the embedded algebra has dimension " + std::to_string(beta) +
                      ", above the ambient dimension " + std::to_string(gamma));
  const FnSpace big(gamma, base_size);
  const auto count = big.element_count();
  if (!count || *count > budget.max_elements)
    throw capacity_error("full function algebra over base " + std::to_string(base_size) +
                         " in dimension " + std::to_string(gamma) +
                         " exceeds the materialization budget of " +
                         std::to_string(budget.max_elements) + " elements");

  // The neat part at beta is exactly the elements depending only on indices
  // below beta; collect them by filtering canonical ids.
  std::vector<std::uint64_t> carrier;
  std::vector<FnElement> tables;
  for (std::uint64_t id = 0; id < *count; ++id) {
    FnElement f = big.from_canonical_id(id);
    const DimSet deps = big.dependence(f);
    if (deps.empty() || deps.members().back() < beta) {
      carrier.push_back(id);
      tables.push_back(std::move(f));
    }
  }
  if (carrier.size() > kMaxCarrier)
    throw capacity_error("the neat part has " + std::to_string(carrier.size()) +
                         " elements, above the carrier limit of " + std::to_string(kMaxCarrier));

  // Tabulate the neat part (it is closed: a product of elements depending
  // only on indices below beta again depends only on those).
  std::map<std::vector<Id>, Id> position;
  for (std::size_t i = 0; i < tables.size(); ++i)
    position.emplace(tables[i].table, static_cast<Id>(i));
  const Id msize = static_cast<Id>(tables.size());
  std::vector<Id> v(beta);
  std::vector<std::vector<Cell>> star(beta);
  for (std::uint32_t k = 0; k < beta; ++k) {
    const auto vi = position.find(big.variable(k).table);
    if (vi == position.end())
      throw integrity_error("variable element escaped the neat part; this cannot happen");
    v[k] = vi->second;
    star[k].resize(std::size_t{msize} * msize);
    for (Id i = 0; i < msize; ++i)
      for (Id j = 0; j < msize; ++j) {
        const auto at = position.find(big.star(tables[i], tables[j], k).table);
        if (at == position.end())
          throw integrity_error("the neat part is not closed; this cannot happen");
        star[k][std::size_t{i} * msize + j] = static_cast<Cell>(at->second);
      }
  }
  const FiniteSA neat(beta, msize, std::move(v), std::move(star));
  auto witness = run_search(b, FiniteTargetView(neat));
  if (!witness) return witness;
  for (auto& t : witness->map) t = carrier[t];
  witness->target = TargetDescriptor{.kind = TargetDescriptor::Kind::full_fn,
                                     .dimension = gamma,
                                     .base_size = base_size};
  return witness;
}

}  // namespace sa
