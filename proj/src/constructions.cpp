#include "sa/constructions.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <unordered_set>

#include "sa/predicates.hpp"
#include "sa/subst.hpp"

namespace sa {

bool FilterSpec::member(std::uint64_t mask) const {
  return std::find(sets.begin(), sets.end(), mask) != sets.end();
}

std::vector<FilterViolation> validate_filter(const FilterSpec& filter) {
  std::vector<FilterViolation> out;
  if (filter.index_size == 0 || filter.index_size > 63) {
    out.push_back(FilterViolation{FilterViolation::Kind::bad_index_size, filter.index_size, 0});
    return out;
  }
  const std::uint64_t universe = filter.universe();
  for (std::uint64_t s : filter.sets)
    if (s & ~universe)
      out.push_back(FilterViolation{FilterViolation::Kind::set_outside_universe, s, 0});
  if (!out.empty()) return out;

  const std::unordered_set<std::uint64_t> members(filter.sets.begin(), filter.sets.end());
  if (!members.contains(universe))
    out.push_back(FilterViolation{FilterViolation::Kind::missing_universe, universe, 0});
  // Upward closure is equivalent to closure under adding a single index.
  for (std::uint64_t s : filter.sets)
    for (std::uint32_t i = 0; i < filter.index_size; ++i) {
      const std::uint64_t t = s | std::uint64_t{1} << i;
      if (t != s && !members.contains(t))
        out.push_back(FilterViolation{FilterViolation::Kind::not_upward_closed, s, t});
    }
  for (std::size_t i = 0; i < filter.sets.size(); ++i)
    for (std::size_t j = i + 1; j < filter.sets.size(); ++j) {
      const std::uint64_t meet = filter.sets[i] & filter.sets[j];
      if (!members.contains(meet))
        out.push_back(FilterViolation{FilterViolation::Kind::not_intersection_closed,
                                      filter.sets[i], filter.sets[j]});
    }
  if (members.contains(0)) out.push_back(FilterViolation{FilterViolation::Kind::improper, 0, 0});
  return out;
}

FilterSpec trivial_filter(std::uint32_t index_size) {
  if (index_size == 0 || index_size > 63)
    throw usage_error("filter index set size must be between 1 and 63");
  FilterSpec f;
  f.index_size = index_size;
  f.sets.push_back(f.universe());
  return f;
}

FilterSpec principal_filter(std::uint32_t index_size, std::uint64_t core_mask) {
  if (index_size == 0 || index_size > 16)
    throw usage_error("principal filters are spelled out explicitly; index set size must be "
                      "between 1 and 16");
  FilterSpec f;
  f.index_size = index_size;
  if (core_mask & ~f.universe())
    throw usage_error("core set lies outside the index set");
  for (std::uint64_t mask = 0; mask <= f.universe(); ++mask)
    if ((mask & core_mask) == core_mask) f.sets.push_back(mask);
  return f;
}

namespace {

std::uint64_t agreement_mask(const std::vector<Id>& x, const std::vector<Id>& y) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] == y[i]) m |= std::uint64_t{1} << i;
  return m;
}

// Sorted copy of a filter's sets for logarithmic membership tests.
class FilterIndex {
public:
  explicit FilterIndex(const FilterSpec& filter) : sets_(filter.sets) {
    std::sort(sets_.begin(), sets_.end());
    sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
  }
  bool member(std::uint64_t mask) const {
    return std::binary_search(sets_.begin(), sets_.end(), mask);
  }

private:
  std::vector<std::uint64_t> sets_;
};

}  // namespace

ReducedProduct reduced_product(const std::vector<const FiniteSA*>& factors,
                               const FilterSpec& filter, const ProductOptions& options) {
  if (factors.empty()) throw usage_error("a product needs at least one factor");
  if (filter.index_size != factors.size())
    throw usage_error("filter is over " + std::to_string(filter.index_size) +
                      " indices, product has " + std::to_string(factors.size()) + " factors");
  const std::uint32_t alpha = factors[0]->dimension();
  for (const FiniteSA* f : factors)
    if (f->dimension() != alpha)
      throw usage_error("factors must share one dimension");
  {
    const auto violations = validate_filter(filter);
    bool only_improper = true;
    for (const auto& v : violations)
      if (v.kind != FilterViolation::Kind::improper) only_improper = false;
    if (!violations.empty() && !only_improper)
      throw usage_error("the subset family is not a filter; validate it for details");
    if (!violations.empty() && !options.allow_improper)
      throw usage_error("the filter is improper (contains the empty set); pass the "
                        "improper-filter override to collapse everything");
  }

  const std::size_t count = factors.size();
  std::uint64_t tuples = 1;
  for (const FiniteSA* f : factors) {
    if (tuples > options.max_tuples / f->size())
      throw capacity_error("the direct product has more than " +
                           std::to_string(options.max_tuples) + " tuples");
    tuples *= f->size();
  }

  // Tuple ranks: position 0 most significant, so rank order is lex order.
  std::vector<std::uint64_t> weight(count, 1);
  for (std::size_t i = count; i-- > 1;) weight[i - 1] = weight[i] * factors[i]->size();
  const auto unrank = [&](std::uint64_t r) {
    std::vector<Id> t(count);
    for (std::size_t i = 0; i < count; ++i) {
      t[i] = static_cast<Id>(r / weight[i]);
      r %= weight[i];
    }
    return t;
  };
  const auto rank = [&](const std::vector<Id>& t) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < count; ++i) r += weight[i] * t[i];
    return r;
  };

  const FilterIndex index(filter);
  QuotientMap q;
  q.class_of.assign(tuples, 0);
  std::vector<bool> assigned(tuples, false);
  for (std::uint64_t r = 0; r < tuples; ++r) {
    if (assigned[r]) continue;
    const Id cls = static_cast<Id>(q.representatives.size());
    if (q.representatives.size() >= kMaxCarrier)
      throw capacity_error("quotient would exceed the carrier limit of " +
                           std::to_string(kMaxCarrier));
    const std::vector<Id> rep = unrank(r);
    q.representatives.push_back(rep);
    q.class_of[r] = cls;
    assigned[r] = true;
    for (std::uint64_t r2 = r + 1; r2 < tuples; ++r2) {
      if (assigned[r2]) continue;
      if (index.member(agreement_mask(rep, unrank(r2)))) {
        q.class_of[r2] = cls;
        assigned[r2] = true;
      }
    }
  }
  // The congruence is transitive for filters (and for the improper family,
  // which merges everything), so one sweep per representative suffices.

  const Id size = static_cast<Id>(q.representatives.size());
  std::vector<Id> v(alpha);
  std::vector<std::vector<Cell>> star(alpha);
  std::vector<Id> tuple(count);
  for (std::uint32_t k = 0; k < alpha; ++k) {
    for (std::size_t i = 0; i < count; ++i) tuple[i] = factors[i]->v(k);
    v[k] = q.class_of[rank(tuple)];
    star[k].resize(std::size_t{size} * size);
    for (Id ca = 0; ca < size; ++ca)
      for (Id cb = 0; cb < size; ++cb) {
        for (std::size_t i = 0; i < count; ++i)
          tuple[i] = factors[i]->star(q.representatives[ca][i], q.representatives[cb][i], k);
        star[k][std::size_t{ca} * size + cb] = static_cast<Cell>(q.class_of[rank(tuple)]);
      }
  }

  if (options.verify_well_defined) {
    // Recompute every cell from alternative representatives: the second
    // member of each class where one exists.
    std::vector<std::vector<Id>> alt(size);
    std::vector<std::uint32_t> seen_members(size, 0);
    for (std::uint64_t r = 0; r < tuples; ++r) {
      const Id cls = q.class_of[r];
      if (++seen_members[cls] == 2) alt[cls] = unrank(r);
    }
    for (Id cls = 0; cls < size; ++cls)
      if (alt[cls].empty()) alt[cls] = q.representatives[cls];
    for (std::uint32_t k = 0; k < alpha; ++k)
      for (Id ca = 0; ca < size; ++ca)
        for (Id cb = 0; cb < size; ++cb) {
          for (std::size_t i = 0; i < count; ++i)
            tuple[i] = factors[i]->star(alt[ca][i], alt[cb][i], k);
          if (q.class_of[rank(tuple)] != star[k][std::size_t{ca} * size + cb])
            throw integrity_error("operations are not well defined on quotient classes (index " +
                                  std::to_string(k) + ", classes " + std::to_string(ca) + ", " +
                                  std::to_string(cb) + ")");
        }
  }

  return ReducedProduct{FiniteSA(alpha, size, std::move(v), std::move(star)), std::move(q)};
}

Subalgebra generate_subalgebra(const FiniteSA& algebra, std::vector<Id> generators) {
  const Id n = algebra.size();
  for (Id g : generators)
    if (g >= n)
      throw usage_error("generator id " + std::to_string(g) + " out of range (size " +
                        std::to_string(n) + ")");
  std::vector<std::uint8_t> in(n, 0);
  std::vector<Id> members;
  const auto adopt = [&](Id x) {
    if (!in[x]) {
      in[x] = 1;
      members.push_back(x);
    }
  };
  for (std::uint32_t k = 0; k < algebra.dimension(); ++k) adopt(algebra.v(k));
  for (Id g : generators) adopt(g);
  for (std::size_t next = 0; next < members.size(); ++next) {
    const Id u = members[next];
    // members may grow while iterating; products with later members are
    // handled when those members reach this position themselves.
    for (std::size_t i = 0; i <= next; ++i)
      for (std::uint32_t k = 0; k < algebra.dimension(); ++k) {
        adopt(algebra.star(u, members[i], k));
        adopt(algebra.star(members[i], u, k));
      }
  }
  std::sort(members.begin(), members.end());

  std::vector<Id> position(n, 0);
  for (std::size_t i = 0; i < members.size(); ++i) position[members[i]] = static_cast<Id>(i);
  const Id m = static_cast<Id>(members.size());
  std::vector<Id> v(algebra.dimension());
  std::vector<std::vector<Cell>> star(algebra.dimension());
  for (std::uint32_t k = 0; k < algebra.dimension(); ++k) {
    v[k] = position[algebra.v(k)];
    star[k].resize(std::size_t{m} * m);
    for (Id a = 0; a < m; ++a)
      for (Id b = 0; b < m; ++b)
        star[k][std::size_t{a} * m + b] =
            static_cast<Cell>(position[algebra.star(members[a], members[b], k)]);
  }
  return Subalgebra{FiniteSA(algebra.dimension(), m, std::move(v), std::move(star)),
                    std::move(members)};
}

ZRepresentation representation_via_Z(const FiniteSA& algebra) {
  {
    CheckOptions quick;
    quick.max_violations = 1;
    if (!check_axioms(algebra, quick).empty())
      throw usage_error(
          "the algebra violates the axiom schema; run an axiom check for details");
  }
  ZRepresentation rep;
  rep.base = zero_set(algebra, DimSet::full(algebra.dimension()));
  if (rep.base.empty()) {
    rep.status = RepresentationStatus::empty_base;
    return rep;
  }
  const DimSet full = DimSet::full(algebra.dimension());
  rep.images.reserve(algebra.size());
  for (Id a = 0; a < algebra.size(); ++a)
    rep.images.push_back(detail::gamma_hom_image_trusted(algebra, full, a).fn);

  rep.homomorphism =
      check_hom_into_function_space(algebra, full, rep.images,
                                    static_cast<Id>(rep.base.size()))
          .pass;

  std::map<std::vector<Id>, Id> first;
  rep.status = RepresentationStatus::embedding;
  for (Id a = 0; a < algebra.size(); ++a) {
    auto [it, fresh] = first.emplace(rep.images[a].table, a);
    if (!fresh) {
      rep.status = RepresentationStatus::not_injective;
      rep.collision = std::pair<Id, Id>(it->second, a);
      break;
    }
  }
  return rep;
}

FiniteSA reduct(const FiniteSA& algebra, std::uint32_t beta) {
  if (beta > algebra.dimension())
    throw usage_error("reduct dimension " + std::to_string(beta) +
                      " exceeds the algebra dimension " +
                      std::to_string(algebra.dimension()));
  std::vector<Id> v(algebra.v_all().begin(), algebra.v_all().begin() + beta);
  std::vector<std::vector<Cell>> star;
  star.reserve(beta);
  for (std::uint32_t k = 0; k < beta; ++k) star.push_back(algebra.table(k));
  FiniteSA out(beta, algebra.size(), std::move(v), std::move(star));
#ifndef NDEBUG
  // Keeping only the first beta operations preserves the schema.
  if (check_axioms(algebra).empty() && !check_axioms(out).empty())
    throw integrity_error("reduct of a conforming algebra stopped conforming");
#endif
  return out;
}

NeatReduct neat_reduct(const FiniteSA& algebra, std::uint32_t beta) {
  if (beta > algebra.dimension())
    throw usage_error("neat reduct dimension " + std::to_string(beta) +
                      " exceeds the algebra dimension " +
                      std::to_string(algebra.dimension()));
  const auto masks = dependence_masks(algebra);
  const std::uint64_t below = (beta >= 64) ? ~std::uint64_t{0}
                                           : (std::uint64_t{1} << beta) - 1;
  std::vector<Id> carrier;
  for (Id x = 0; x < algebra.size(); ++x)
    if ((masks[x] & ~below) == 0) carrier.push_back(x);

  std::vector<Id> position(algebra.size(), algebra.size());
  for (std::size_t i = 0; i < carrier.size(); ++i) position[carrier[i]] = static_cast<Id>(i);
  for (std::uint32_t k = 0; k < beta; ++k)
    if (position[algebra.v(k)] == algebra.size())
      throw integrity_error("distinguished element for index " + std::to_string(k) +
                            " depends on an index at or above " + std::to_string(beta));
  if (carrier.empty())
    throw integrity_error("no element keeps its dimension set below " + std::to_string(beta));

  const Id m = static_cast<Id>(carrier.size());
  std::vector<Id> v(beta);
  std::vector<std::vector<Cell>> star(beta);
  for (std::uint32_t k = 0; k < beta; ++k) {
    v[k] = position[algebra.v(k)];
    star[k].resize(std::size_t{m} * m);
    for (Id a = 0; a < m; ++a)
      for (Id b = 0; b < m; ++b) {
        const Id p = algebra.star(carrier[a], carrier[b], k);
        if (position[p] == algebra.size())
          throw integrity_error(
              "the neat carrier is not closed: product of " + std::to_string(carrier[a]) +
              " and " + std::to_string(carrier[b]) + " under index " + std::to_string(k) +
              " depends on an index at or above " + std::to_string(beta));
        star[k][std::size_t{a} * m + b] = static_cast<Cell>(position[p]);
      }
  }
  return NeatReduct{FiniteSA(beta, m, std::move(v), std::move(star)), std::move(carrier)};
}

Dilation dilate(const FnAlgebra& algebra, std::uint32_t extra, const Budget& budget) {
  if (extra == 0) throw usage_error("dilation needs at least one fresh index");
  const FnSpace small = algebra.space();
  const FnSpace big(algebra.dimension + extra, algebra.base_size);
  if (big.point_count() * algebra.elements.size() > budget.max_cells)
    throw capacity_error("dilated tables would exceed the cell budget");

  Dilation out;
  out.target_dimension = big.dimension();
  out.base_size = algebra.base_size;
  out.images.reserve(algebra.elements.size());
  // Appended indices are more significant in the rank, so restriction to the
  // original indices is rank % small.point_count() and each image table is
  // the original tiled.
  for (const FnElement& f : algebra.elements) {
    small.validate_element(f);
    FnElement g;
    g.table.resize(big.point_count());
    for (std::uint64_t r = 0; r < big.point_count(); ++r)
      g.table[r] = f.table[r % small.point_count()];
    out.images.push_back(std::move(g));
  }
  for (const FnElement& g : out.images) {
    try {
      out.canonical_ids.push_back(big.canonical_id(g));
    } catch (const capacity_error&) {
      out.canonical_ids.push_back(std::nullopt);
    }
  }

  // Verification: injectivity, dependence confined to the original indices,
  // star preserved for the original indices, variables preserved.
  out.verified = true;
  const std::uint64_t alpha = algebra.dimension;
  std::map<std::vector<Id>, std::size_t> seen;
  for (std::size_t i = 0; i < out.images.size() && out.verified; ++i)
    out.verified = seen.emplace(out.images[i].table, i).second;
  for (std::size_t i = 0; i < out.images.size() && out.verified; ++i) {
    const DimSet deps = big.dependence(out.images[i]);
    out.verified = deps.empty() || deps.members().back() < alpha;
  }
  for (std::uint32_t k = 0; k < alpha && out.verified; ++k)
    for (std::size_t i = 0; i < algebra.elements.size() && out.verified; ++i)
      for (std::size_t j = 0; j < algebra.elements.size() && out.verified; ++j) {
        const FnElement direct = small.star(algebra.elements[i], algebra.elements[j],
                                            static_cast<std::uint32_t>(k));
        const auto at = seen.find(big.star(out.images[i], out.images[j], k).table);
        out.verified = at != seen.end() && algebra.elements[at->second] == direct;
      }
  for (std::uint32_t k = 0; k < alpha && out.verified; ++k) {
    const auto at = seen.find(big.variable(k).table);
    out.verified = at != seen.end() && algebra.elements[at->second] == small.variable(k);
  }
  return out;
}

FiniteSA pad_algebra(const FiniteSA& algebra, std::uint32_t gamma,
                     const std::vector<Id>& v_choice) {
  const std::uint32_t beta = algebra.dimension();
  if (gamma < beta)
    throw usage_error("target dimension " + std::to_string(gamma) +
                      " is below the algebra dimension " + std::to_string(beta));
  if (v_choice.size() != gamma - beta)
    throw usage_error("expected " + std::to_string(gamma - beta) +
                      " distinguished choices, got " + std::to_string(v_choice.size()));
  const Id n = algebra.size();
  std::vector<Id> v = algebra.v_all();
  for (Id c : v_choice) {
    if (c >= n)
      throw usage_error("distinguished choice " + std::to_string(c) +
                        " out of range (size " + std::to_string(n) + ")");
    v.push_back(c);
  }
  std::vector<std::vector<Cell>> star;
  star.reserve(gamma);
  for (std::uint32_t k = 0; k < beta; ++k) star.push_back(algebra.table(k));
  std::vector<Cell> projection(std::size_t{n} * n);
  for (Id a = 0; a < n; ++a)
    for (Id b = 0; b < n; ++b) projection[std::size_t{a} * n + b] = static_cast<Cell>(b);
  for (std::uint32_t k = beta; k < gamma; ++k) star.push_back(projection);
  return FiniteSA(gamma, n, std::move(v), std::move(star));
}

}  // namespace sa
