#include "sa/suite.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "sa/constructions.hpp"
#include "sa/error.hpp"
#include "sa/fn_algebra.hpp"
#include "sa/io.hpp"
#include "sa/predicates.hpp"
#include "sa/search.hpp"
#include "sa/subst.hpp"

namespace sa {

namespace {

struct NamedAlgebra {
  std::string name;
  FiniteSA algebra;
};

struct NamedFn {
  std::string name;
  FnAlgebra algebra;
};

// The bundled canonical fixtures. valid holds conforming algebras
// (full_1_2, full_2_2, sub3_1_2), broken holds the deliberate
// counterexamples (mutated_1_2, pad_1_2_dim2).
struct FixtureSet {
  std::vector<NamedAlgebra> valid;
  std::vector<NamedAlgebra> broken;
  std::vector<NamedFn> fn_full;
  std::vector<std::filesystem::path> files;
};

FixtureSet load_fixtures(const std::filesystem::path& dir) {
  if (dir.empty()) throw usage_error("no fixtures directory configured");
  FixtureSet fx;
  const auto finite = [&](const char* name) {
    const auto path = dir / (std::string(name) + ".json");
    fx.files.push_back(path);
    return NamedAlgebra{name, load_finite_sa(path)};
  };
  const auto fn = [&](const char* name) {
    const auto path = dir / (std::string(name) + ".json");
    fx.files.push_back(path);
    return NamedFn{name, load_fn_algebra(path)};
  };
  fx.valid.push_back(finite("full_1_2"));
  fx.valid.push_back(finite("full_2_2"));
  fx.valid.push_back(finite("sub3_1_2"));
  fx.broken.push_back(finite("mutated_1_2"));
  fx.broken.push_back(finite("pad_1_2_dim2"));
  fx.fn_full.push_back(fn("fn_full_1_2"));
  fx.fn_full.push_back(fn("fn_full_2_2"));
  return fx;
}

std::string dump_violation(const AxiomViolation& v) {
  return axiom_violation_to_json(v).dump();
}

std::uint64_t fixture_seed(const SuiteConfig& cfg, std::uint64_t salt) {
  return cfg.seed ^ (0x9e3779b97f4a7c15ULL * (salt + 1));
}

// Seeded single-cell mutations that pass every axiom and law. Any survivor
// is reviewed by hand and recorded here and in the fixture notes; an
// unreviewed survivor fails the criterion.
struct ReviewedMutation {
  const char* fixture;
  std::uint32_t kappa;
  Id x, y, value;
};
constexpr ReviewedMutation kReviewedMutations[] = {
    // Row map of element 2 becomes constant 2; the mutant satisfies the whole
    // schema (see fixtures/NOTES.md), so no sound checker can reject it.
    {"sub3_1_2", 0, 2, 0, 2},
};

bool mutation_reviewed(const std::string& fixture, std::uint32_t kappa, Id x, Id y, Id value) {
  for (const ReviewedMutation& m : kReviewedMutations)
    if (m.fixture == fixture && m.kappa == kappa && m.x == x && m.y == y && m.value == value)
      return true;
  return false;
}

// ---- criterion 1: the axiom schema holds on every full function algebra ----

std::string criterion_axioms(const FixtureSet&, const SuiteConfig& cfg) {
  std::vector<std::pair<std::uint32_t, Id>> pairs;
  for (std::uint32_t d = 1; d <= cfg.max_dim; ++d)
    for (Id u = 1; u <= cfg.max_base; ++u) pairs.emplace_back(d, u);
  pairs.insert(pairs.end(), cfg.extra.begin(), cfg.extra.end());
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  for (const auto& [dim, base] : pairs) {
    const FnAlgebra full = full_fsa(dim, base);
    const FiniteSA algebra = as_finite_sa(full);
    CheckOptions opts;
    opts.max_violations = 1;
    opts.jobs = cfg.jobs;
    const auto violations = check_axioms(algebra, opts);
    if (!violations.empty())
      return "full function algebra, dimension " + std::to_string(dim) + ", base " +
             std::to_string(base) + ": " + dump_violation(violations.front());
  }
  return "";
}

// ---- criterion 2: single-cell mutations are caught by axioms or laws ----

std::string criterion_mutations(const FixtureSet& fx, const SuiteConfig& cfg) {
  CheckOptions one;
  one.max_violations = 1;
  for (std::size_t i = 0; i < fx.valid.size(); ++i) {
    const NamedAlgebra& named = fx.valid[i];
    const FiniteSA& a = named.algebra;
    const std::uint32_t alpha = a.dimension();
    const Id n = a.size();
    if (n < 2) continue;  // no cell can change value
    std::mt19937_64 rng(fixture_seed(cfg, i));
    for (int t = 0; t < 20; ++t) {
      const auto kappa = static_cast<std::uint32_t>(uniform_below(rng, alpha));
      const auto x = static_cast<Id>(uniform_below(rng, n));
      const auto y = static_cast<Id>(uniform_below(rng, n));
      const Id old = a.star(x, y, kappa);
      auto value = static_cast<Id>(uniform_below(rng, n - std::uint64_t{1}));
      if (value >= old) ++value;
      std::vector<std::vector<Cell>> tables;
      tables.reserve(alpha);
      for (std::uint32_t k = 0; k < alpha; ++k) tables.push_back(a.table(k));
      tables[kappa][std::size_t{x} * n + y] = static_cast<Cell>(value);
      const FiniteSA mutant(alpha, n, a.v_all(), std::move(tables));
      if (!check_axioms(mutant, one).empty()) continue;
      LawCheckOptions lopts;
      lopts.max_cases_per_law = cfg.budget;
      lopts.seed = cfg.seed;
      lopts.require_valid = false;
      bool caught = !check_subst_order_independence(mutant, lopts).pass;
      if (!caught)
        for (const LawReport& r : check_subst_laws(mutant, lopts))
          if (!r.pass) {
            caught = true;
            break;
          }
      if (caught) continue;
      if (mutation_reviewed(named.name, kappa, x, y, value)) continue;
      return named.name + ": mutation #" + std::to_string(t) + " (star[" +
             std::to_string(kappa) + "][" + std::to_string(x) + "][" + std::to_string(y) +
             "] := " + std::to_string(value) +
             ") passes every axiom and law and is not in the reviewed list";
    }
  }
  return "";
}

// ---- criterion 3: substitution laws and fold-order independence ----

std::string criterion_laws(const FixtureSet& fx, const SuiteConfig& cfg) {
  for (std::size_t i = 0; i < 2; ++i) {
    const NamedAlgebra& named = fx.valid[i];
    LawCheckOptions lopts;
    lopts.max_cases_per_law = cfg.budget;
    lopts.seed = cfg.seed;
    const LawReport order = check_subst_order_independence(named.algebra, lopts);
    if (!order.pass) return named.name + ": " + law_report_to_json(order).dump();
    for (const LawReport& r : check_subst_laws(named.algebra, lopts))
      if (!r.pass) return named.name + ": " + law_report_to_json(r).dump();
  }
  return "";
}

// ---- criterion 4: the canonical map is a gamma-homomorphism for every gamma ----

std::string criterion_gamma_hom(const FixtureSet& fx, const SuiteConfig&) {
  for (std::size_t i = 0; i < 2; ++i) {
    const NamedAlgebra& named = fx.valid[i];
    const FiniteSA& a = named.algebra;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << a.dimension()); ++bits) {
      const DimSet gamma = DimSet::from_bits(bits);
      std::vector<FnElement> images;
      images.reserve(a.size());
      Id base_size = 0;
      for (Id x = 0; x < a.size(); ++x) {
        GammaHomImage img = gamma_hom_image(a, gamma, x);
        base_size = static_cast<Id>(img.base.size());
        images.push_back(std::move(img.fn));
      }
      const HomReport rep = check_hom_into_function_space(a, gamma, images, base_size);
      if (!rep.pass)
        return named.name + ", gamma bits " + std::to_string(bits) + ": " +
               hom_report_to_json(rep).dump();
    }
  }
  return "";
}

// ---- criterion 5: strong distinguishedness and the constant-tuple witness ----

std::string criterion_strong(const FixtureSet& fx, const SuiteConfig& cfg) {
  for (std::size_t i = 0; i < 2; ++i) {
    const NamedAlgebra& named = fx.valid[i];
    const StrongReport rep = is_strongly_distinguished(named.algebra);
    if (!rep.holds)
      return named.name + ": pair (" + std::to_string(rep.failure->a) + ", " +
             std::to_string(rep.failure->b) + ") has no separating tuple";
  }
  // Direct form of the witness: for f != g pick s with f(s) != g(s); the
  // tuple of constants t, t_l = const s_l, then separates f and g under
  // every subset of indices.
  for (std::size_t i = 0; i < fx.fn_full.size(); ++i) {
    const NamedFn& named = fx.fn_full[i];
    const FnAlgebra& fn = named.algebra;
    const FnSpace sp = fn.space();
    const FiniteSA a = as_finite_sa(fn);  // position equals canonical id
    const std::uint32_t alpha = sp.dimension();
    const Id n = a.size();
    std::mt19937_64 rng(fixture_seed(cfg, 100 + i));
    for (int t = 0; t < 10; ++t) {
      const auto f = static_cast<Id>(uniform_below(rng, n));
      auto g = static_cast<Id>(uniform_below(rng, n - std::uint64_t{1}));
      if (g >= f) ++g;
      std::vector<std::uint64_t> diffs;
      for (std::uint64_t r = 0; r < sp.point_count(); ++r)
        if (fn.elements[f].table[r] != fn.elements[g].table[r]) diffs.push_back(r);
      const Assignment s = sp.unrank(diffs[uniform_below(rng, diffs.size())]);
      std::vector<Id> tuple(alpha);
      for (std::uint32_t l = 0; l < alpha; ++l)
        tuple[l] = static_cast<Id>(sp.canonical_id(sp.constant(s.entries[l])));
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << alpha); ++bits) {
        const DimSet sigma = DimSet::from_bits(bits);
        const SubstContext ctx(a, tuple, sigma);
        if (generalized_subst(ctx, f) == generalized_subst(ctx, g))
          return named.name + ": constant-tuple witness fails for f=" + std::to_string(f) +
                 ", g=" + std::to_string(g) + ", sigma bits " + std::to_string(bits);
      }
    }
  }
  return "";
}

// ---- criterion 6: the zero-set representation and its literal origin ----

// Literal form of the collapse: components indexed by every subset G of the
// dimension indices, carrying the G-free zero sets; the filter on the
// component index set is generated by the up-sets of each subset. Classes of
// the product modulo the filter form the base; the represented value of a at
// an assignment s is the class of the tuple of folds. At finite dimension
// the filter is principal at the full set, so each class is determined by
// its full-set component and the construction collapses to the zero-set map.
std::string literal_collapse_mismatch(const NamedAlgebra& named) {
  const FiniteSA& a = named.algebra;
  const std::uint32_t alpha = a.dimension();
  const std::uint32_t comps = 1u << alpha;  // component index = subset bits
  // up[S] = indices of components whose subset contains S.
  std::vector<std::uint32_t> up(comps, 0);
  for (std::uint32_t s = 0; s < comps; ++s)
    for (std::uint32_t g = 0; g < comps; ++g)
      if ((g & s) == s) up[s] |= 1u << g;
  const auto in_filter = [&](std::uint32_t q) {
    for (std::uint32_t s = 0; s < comps; ++s)
      if ((q & up[s]) == up[s]) return true;
    return false;
  };
  std::vector<std::vector<Id>> zg(comps);
  std::uint64_t total = 1;
  for (std::uint32_t g = 0; g < comps; ++g) {
    zg[g] = zero_set(a, DimSet::from_bits(g));
    if (zg[g].empty()) return named.name + ": empty zero set, nothing to represent over";
    total *= zg[g].size();
  }
  std::vector<std::vector<Id>> tuples(total, std::vector<Id>(comps));
  for (std::uint64_t r = 0; r < total; ++r) {
    std::uint64_t rest = r;
    for (std::uint32_t g = 0; g < comps; ++g) {
      tuples[r][g] = zg[g][rest % zg[g].size()];
      rest /= zg[g].size();
    }
  }
  const auto rank_of = [&](const std::vector<Id>& w) {
    std::uint64_t r = 0, weight = 1;
    for (std::uint32_t g = 0; g < comps; ++g) {
      const auto at = std::lower_bound(zg[g].begin(), zg[g].end(), w[g]);
      r += static_cast<std::uint64_t>(at - zg[g].begin()) * weight;
      weight *= zg[g].size();
    }
    return r;
  };
  // Equivalence: tuples are related when their agreement components form a
  // filter member; transitive because agreement of the outer pair contains
  // the intersection of the two inner agreements.
  constexpr Id kUnset = ~Id{0};
  std::vector<Id> class_of(total, kUnset);
  std::vector<std::uint64_t> least_member;
  for (std::uint64_t r = 0; r < total; ++r) {
    if (class_of[r] != kUnset) continue;
    const auto cls = static_cast<Id>(least_member.size());
    least_member.push_back(r);
    class_of[r] = cls;
    for (std::uint64_t r2 = r + 1; r2 < total; ++r2) {
      if (class_of[r2] != kUnset) continue;
      std::uint32_t agree = 0;
      for (std::uint32_t g = 0; g < comps; ++g)
        if (tuples[r][g] == tuples[r2][g]) agree |= 1u << g;
      if (in_filter(agree)) class_of[r2] = cls;
    }
  }
  const auto classes = static_cast<Id>(least_member.size());
  // Choice function: the constant member when one exists (there is at most
  // one), otherwise the least member.
  std::vector<std::vector<Id>> choice(classes);
  for (Id c = 0; c < classes; ++c) {
    std::optional<std::vector<Id>> constant;
    for (std::uint64_t r = 0; r < total; ++r) {
      if (class_of[r] != c) continue;
      bool all_same = true;
      for (std::uint32_t g = 1; g < comps; ++g) all_same &= tuples[r][g] == tuples[r][0];
      if (!all_same) continue;
      if (constant) return named.name + ": two constant tuples in one class";
      constant = tuples[r];
    }
    choice[c] = constant ? *constant : tuples[least_member[c]];
  }
  // The collapsed map to compare against.
  const ZRepresentation rep = representation_via_Z(a);
  if (rep.base.size() != classes)
    return named.name + ": " + std::to_string(classes) + " classes but " +
           std::to_string(rep.base.size()) + " zero-set elements";
  // Class -> its full-set component; must list the zero set exactly.
  std::vector<Id> class_value(classes);
  std::vector<Id> class_of_zero(a.size(), kUnset);
  for (Id c = 0; c < classes; ++c) {
    class_value[c] = tuples[least_member[c]][comps - 1];
    class_of_zero[class_value[c]] = c;
  }
  {
    std::vector<Id> sorted = class_value;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != rep.base)
      return named.name + ": class full-set components do not list the zero set";
  }
  const auto base_size = static_cast<Id>(rep.base.size());
  const FnSpace zsp(alpha, base_size);
  std::uint64_t s_total = 1;
  for (std::uint32_t l = 0; l < alpha; ++l) s_total *= classes;
  std::vector<Id> svec(alpha), w(comps);
  for (Id x = 0; x < a.size(); ++x) {
    // s ranges over class tuples; digit l picks the class of coordinate l.
    std::vector<Id> digits(alpha, 0);
    for (std::uint64_t srank = 0; srank < s_total; ++srank) {
      std::uint64_t rest = srank;
      for (std::uint32_t l = 0; l < alpha; ++l) {
        digits[l] = static_cast<Id>(rest % classes);
        rest /= classes;
      }
      for (std::uint32_t g = 0; g < comps; ++g) {
        for (std::uint32_t l = 0; l < alpha; ++l) svec[l] = choice[digits[l]][g];
        w[g] = detail::subst_fold(a, svec, DimSet::from_bits(g), x);
      }
      const Id literal_class = class_of[rank_of(w)];
      // Collapsed: the image table over the zero-set base, at the assignment
      // whose coordinate l is the base position of digit l's class value.
      Assignment zs;
      zs.entries.resize(alpha);
      for (std::uint32_t l = 0; l < alpha; ++l) {
        const auto at = std::lower_bound(rep.base.begin(), rep.base.end(),
                                         class_value[digits[l]]);
        zs.entries[l] = static_cast<Id>(at - rep.base.begin());
      }
      const Id collapsed_pos = rep.images[x].table[zsp.rank(zs)];
      if (class_value[literal_class] != rep.base[collapsed_pos])
        return named.name + ": element " + std::to_string(x) + ", assignment rank " +
               std::to_string(srank) + ": literal class value " +
               std::to_string(class_value[literal_class]) + " but collapsed value " +
               std::to_string(rep.base[collapsed_pos]);
    }
  }
  return "";
}

std::string criterion_collapse(const FixtureSet& fx, const SuiteConfig&) {
  for (const NamedAlgebra& named : fx.valid) {
    const StrongReport strong = is_strongly_distinguished(named.algebra);
    if (!strong.holds) continue;
    const ZRepresentation rep = representation_via_Z(named.algebra);
    if (rep.status != RepresentationStatus::embedding)
      return named.name + ": strongly distinguished but the zero-set map is not an embedding";
    if (named.algebra.dimension() <= 2) {
      const std::string mismatch = literal_collapse_mismatch(named);
      if (!mismatch.empty()) return mismatch;
    }
  }
  return "";
}

// ---- criterion 7: principal-ultrafilter quotients preserve the properties ----

std::string criterion_quotients(const FixtureSet& fx, const SuiteConfig&) {
  const Budget budget;
  std::vector<Id> witness_base(fx.valid.size());
  for (std::size_t i = 0; i < fx.valid.size(); ++i) {
    const StrongReport strong = is_strongly_distinguished(fx.valid[i].algebra);
    if (!strong.holds) return fx.valid[i].name + ": factor is not strongly distinguished";
    const RepresentabilityResult r = is_representable_up_to(fx.valid[i].algebra, 4, budget);
    if (!r.found) return fx.valid[i].name + ": factor has no representation witness";
    witness_base[i] = r.base_size;
  }
  for (std::size_t i = 0; i < fx.valid.size(); ++i)
    for (std::size_t j = 0; j < fx.valid.size(); ++j) {
      const FiniteSA& a = fx.valid[i].algebra;
      const FiniteSA& b = fx.valid[j].algebra;
      if (a.dimension() != b.dimension()) continue;
      for (std::uint32_t point = 0; point < 2; ++point) {
        const FilterSpec ultra = principal_filter(2, std::uint64_t{1} << point);
        ProductOptions popts;
        popts.verify_well_defined = true;
        const ReducedProduct q = reduced_product({&a, &b}, ultra, popts);
        const std::string label = fx.valid[i].name + " x " + fx.valid[j].name +
                                  " at point " + std::to_string(point);
        const StrongReport strong = is_strongly_distinguished(q.algebra);
        if (!strong.holds) return label + ": quotient is not strongly distinguished";
        const Id bound = std::max(witness_base[i], witness_base[j]);
        const RepresentabilityResult r = is_representable_up_to(q.algebra, bound, budget);
        if (!r.found) return label + ": no representation witness within base " +
                             std::to_string(bound);
        if (r.base_size > bound)
          return label + ": witness base " + std::to_string(r.base_size) + " exceeds " +
                 std::to_string(bound);
      }
    }
  return "";
}

// ---- criterion 8: strongly distinguished implies distinguished ----

std::string criterion_implication(const FixtureSet& fx, const SuiteConfig& cfg) {
  std::vector<const NamedAlgebra*> pool;
  for (const NamedAlgebra& n : fx.valid) pool.push_back(&n);
  for (const NamedAlgebra& n : fx.broken) pool.push_back(&n);
  std::vector<NamedAlgebra> random_subs;
  for (std::size_t i = 0; i < 2; ++i) {
    const FiniteSA& full = fx.valid[i].algebra;
    std::mt19937_64 rng(fixture_seed(cfg, 200 + i));
    for (int t = 0; t < 25; ++t) {
      const auto count = 1 + uniform_below(rng, 3);
      std::vector<Id> gens;
      for (std::uint64_t k = 0; k < count; ++k)
        gens.push_back(static_cast<Id>(uniform_below(rng, full.size())));
      random_subs.push_back(NamedAlgebra{
          fx.valid[i].name + " subalgebra #" + std::to_string(t),
          generate_subalgebra(full, gens).algebra});
    }
  }
  for (const NamedAlgebra& n : random_subs) pool.push_back(&n);
  for (const NamedAlgebra* n : pool) {
    if (!is_strongly_distinguished(n->algebra).holds) continue;
    const DistinguishedReport d = is_distinguished(n->algebra);
    if (!d.holds)
      return n->name + ": strongly distinguished but not distinguished (kappa=" +
             std::to_string(d.failure->kappa) + ", x=" + std::to_string(d.failure->x) +
             ", y=" + std::to_string(d.failure->y) + ")";
  }
  return "";
}

// ---- criterion 9: reducts stay representable; dilations land neatly ----

std::string criterion_reducts(const FixtureSet& fx, const SuiteConfig&) {
  const Budget budget;
  for (const NamedAlgebra& named : fx.valid) {
    CheckOptions one;
    one.max_violations = 1;
    if (!check_axioms(named.algebra, one).empty()) continue;
    if (!is_representable_up_to(named.algebra, 4, budget).found) continue;
    for (std::uint32_t beta = 1; beta <= named.algebra.dimension(); ++beta) {
      const FiniteSA r = reduct(named.algebra, beta);
      const RepresentabilityResult rr = is_representable_up_to(r, 4, budget);
      if (!rr.found)
        return named.name + " reduct at " + std::to_string(beta) +
               ": no representation witness";
    }
  }
  for (const NamedFn& named : fx.fn_full) {
    const std::uint32_t alpha = named.algebra.dimension;
    for (std::uint32_t extra = 1; extra <= 2; ++extra) {
      const Dilation d = dilate(named.algebra, extra, budget);
      const std::string label = named.name + " dilated by " + std::to_string(extra);
      if (!d.verified) return label + ": dilation failed verification";
      const FnSpace big(alpha + extra, named.algebra.base_size);
      for (std::size_t x = 0; x < d.images.size(); ++x) {
        const DimSet deps = big.dependence(d.images[x]);
        if (!deps.empty() && deps.members().back() >= alpha)
          return label + ": image of element " + std::to_string(x) +
                 " depends on an added index";
      }
      const FiniteSA a = as_finite_sa(named.algebra);
      const auto witness =
          find_neat_embedding_into_full(a, alpha + extra, named.algebra.base_size, budget);
      if (!witness || !witness->verified)
        return label + ": no verified embedding into the neat part of the full algebra";
    }
  }
  return "";
}

// ---- criterion 10: padding violates the schema only at the added indices ----

std::string criterion_pad(const FixtureSet& fx, const SuiteConfig&) {
  const FiniteSA& f12 = fx.valid[0].algebra;
  const FiniteSA padded = pad_algebra(f12, 2, {0});
  if (!(padded == fx.broken[1].algebra))
    return "pad fixture does not match pad_algebra(full_1_2, 2, v1:=0)";
  CheckOptions all;
  all.max_violations = 1u << 20;
  const auto violations = check_axioms(padded, all);
  if (violations.empty()) return "padded algebra unexpectedly satisfies the schema";
  for (const AxiomViolation& v : violations) {
    const bool below = v.kappa < 1 && (!v.lambda || *v.lambda < 1);
    if (below) return "violation confined to the original index: " + dump_violation(v);
  }
  CheckOptions one;
  one.max_violations = 1;
  const auto original_part = check_axioms(reduct(padded, 1), one);
  if (!original_part.empty())
    return "reduct to the original index is not clean: " + dump_violation(original_part.front());
  return "";
}

// ---- criterion 11: the embedding search agrees with brute force ----

std::optional<std::vector<std::uint64_t>> brute_force_embedding(const FiniteSA& a,
                                                                const FiniteSA& b) {
  const Id n = a.size(), m = b.size();
  if (n > m) return std::nullopt;
  std::vector<std::uint64_t> map(n, 0);
  std::vector<std::uint8_t> used(m, 0);
  const std::function<bool(Id)> rec = [&](Id i) -> bool {
    if (i == n) {
      for (std::uint32_t k = 0; k < a.dimension(); ++k)
        if (map[a.v(k)] != b.v(k)) return false;
      for (std::uint32_t k = 0; k < a.dimension(); ++k)
        for (Id x = 0; x < n; ++x)
          for (Id y = 0; y < n; ++y)
            if (b.star(static_cast<Id>(map[x]), static_cast<Id>(map[y]), k) !=
                map[a.star(x, y, k)])
              return false;
      return true;
    }
    for (Id y = 0; y < m; ++y) {
      if (used[y]) continue;
      used[y] = 1;
      map[i] = y;
      if (rec(i + 1)) return true;
      used[y] = 0;
    }
    return false;
  };
  if (rec(0)) return map;
  return std::nullopt;
}

std::string criterion_search_oracle(const FixtureSet& fx, const SuiteConfig&) {
  // Pools keyed by dimension: fixtures plus every distinct subalgebra
  // reachable from generator sets of size up to two, kept when the carrier
  // has at most six elements.
  std::map<std::uint32_t, std::vector<NamedAlgebra>> pools;
  std::set<std::string> seen;
  const auto add = [&](const std::string& name, const FiniteSA& algebra) {
    if (algebra.size() > 6) return;
    const std::string key = dump_canonical(finite_sa_to_json(algebra));
    if (!seen.insert(key).second) return;
    pools[algebra.dimension()].push_back(NamedAlgebra{name, algebra});
  };
  std::vector<const NamedAlgebra*> sources;
  for (const NamedAlgebra& n : fx.valid) sources.push_back(&n);
  for (const NamedAlgebra& n : fx.broken) sources.push_back(&n);
  for (const NamedAlgebra* n : sources) {
    add(n->name, n->algebra);
    const Id size = n->algebra.size();
    for (Id g = 0; g < size; ++g)
      add(n->name + " sub{" + std::to_string(g) + "}",
          generate_subalgebra(n->algebra, {g}).algebra);
    for (Id g = 0; g < size; ++g)
      for (Id h = g + 1; h < size; ++h)
        add(n->name + " sub{" + std::to_string(g) + "," + std::to_string(h) + "}",
            generate_subalgebra(n->algebra, {g, h}).algebra);
  }
  for (const auto& [dim, pool] : pools) {
    (void)dim;
    for (const NamedAlgebra& a : pool)
      for (const NamedAlgebra& b : pool) {
        const auto expected = brute_force_embedding(a.algebra, b.algebra);
        const auto got = find_embedding(a.algebra, b.algebra);
        const std::string label = a.name + " -> " + b.name;
        if (expected.has_value() != got.has_value())
          return label + ": search " + (got ? "finds a witness" : "finds none") +
                 " but brute force " + (expected ? "finds one" : "finds none");
        if (!expected) continue;
        if (!got->verified) return label + ": witness failed its own verification";
        if (got->map != *expected) return label + ": witness is not the least map";
      }
  }
  return "";
}

// ---- criterion 12: canonical files survive a round trip byte for byte ----

std::string criterion_roundtrip(const FixtureSet& fx, const SuiteConfig&) {
  const auto tmp = std::filesystem::temp_directory_path() / "sa_roundtrip";
  std::filesystem::create_directories(tmp);
  std::string failure;
  for (const std::filesystem::path& file : fx.files) {
    const auto out = tmp / file.filename();
    io_roundtrip(file, out);
    if (read_file(file) != read_file(out)) {
      failure = file.filename().string() + ": round trip changed the bytes";
      break;
    }
  }
  std::filesystem::remove_all(tmp);
  return failure;
}

}  // namespace

bool SuiteReport::all_pass() const {
  return std::all_of(results.begin(), results.end(),
                     [](const CriterionResult& r) { return r.pass; });
}

SuiteReport run_suite(const SuiteConfig& config) {
  const FixtureSet fixtures = load_fixtures(config.fixtures_dir);
  using Fn = std::string (*)(const FixtureSet&, const SuiteConfig&);
  struct Entry {
    const char* name;
    Fn fn;
  };
  const Entry entries[] = {
      {"axioms", criterion_axioms},
      {"mutation-sensitivity", criterion_mutations},
      {"substitution-laws", criterion_laws},
      {"gamma-homomorphism", criterion_gamma_hom},
      {"strong-distinguishedness", criterion_strong},
      {"zero-set-collapse", criterion_collapse},
      {"quotient-preservation", criterion_quotients},
      {"strong-implies-distinguished", criterion_implication},
      {"reducts-and-dilations", criterion_reducts},
      {"pad-locality", criterion_pad},
      {"search-oracle", criterion_search_oracle},
      {"format-stability", criterion_roundtrip},
  };
  SuiteReport report;
  int number = 0;
  for (const Entry& entry : entries) {
    CriterionResult result;
    result.number = ++number;
    result.name = entry.name;
    const auto start = std::chrono::steady_clock::now();
    try {
      result.detail = entry.fn(fixtures, config);
      result.pass = result.detail.empty();
    } catch (const capacity_error& e) {
      result.skipped = true;
      result.pass = config.allow_skip;
      result.detail = std::string("skipped: ") + e.what();
    } catch (const std::exception& e) {
      result.pass = false;
      result.detail = std::string("error: ") + e.what();
    }
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.results.push_back(std::move(result));
  }
  return report;
}

}  // namespace sa
