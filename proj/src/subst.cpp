#include "sa/subst.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "sa/predicates.hpp"

namespace sa {

namespace detail {

Id subst_fold(const FiniteSA& algebra, const std::vector<Id>& s, const DimSet& gamma, Id a) {
  Id acc = a;
  for (std::uint32_t k : gamma) acc = algebra.row(k, s[k])[acc];
  return acc;
}

}  // namespace detail

SubstContext::SubstContext(const FiniteSA& algebra, std::vector<Id> s, DimSet gamma)
    : algebra_(&algebra), s_(std::move(s)), gamma_(std::move(gamma)) {
  const std::uint32_t alpha = algebra.dimension();
  if (s_.size() != alpha)
    throw usage_error("substitution context needs " + std::to_string(alpha) +
                      " elements, got " + std::to_string(s_.size()));
  if (!gamma_.empty() && gamma_.members().back() >= alpha)
    throw usage_error("index " + std::to_string(gamma_.members().back()) +
                      " out of range (dimension " + std::to_string(alpha) + ")");
  for (std::uint32_t lambda = 0; lambda < alpha; ++lambda) {
    if (s_[lambda] >= algebra.size())
      throw usage_error("substituted element " + std::to_string(s_[lambda]) +
                        " out of range (size " + std::to_string(algebra.size()) + ")");
  }
  // Every coordinate must avoid gamma, not only the ones gamma folds over.
  for (std::uint32_t lambda = 0; lambda < alpha; ++lambda) {
    const DimSet d = dimension_set(algebra, s_[lambda]);
    if (!d.intersect(gamma_).empty())
      throw usage_error("substituted element at position " + std::to_string(lambda) +
                        " has dimension set meeting the substituted index set");
  }
}

Id generalized_subst(const SubstContext& ctx, Id a) {
  if (a >= ctx.algebra().size())
    throw usage_error("element id " + std::to_string(a) + " out of range (size " +
                      std::to_string(ctx.algebra().size()) + ")");
  return detail::subst_fold(ctx.algebra(), ctx.s(), ctx.gamma(), a);
}

namespace {

// Shared machinery for the law checkers: zero-set lists per index set and a
// deterministic two-pass sampler. Pass one counts the instances a law
// enumerator yields; pass two evaluates either all of them or a uniform
// sample of max_cases of them (selection algorithm: sequential sampling
// without replacement, Knuth's method S).
class LawRunner {
public:
  LawRunner(const FiniteSA& algebra, const LawCheckOptions& options)
      : algebra_(algebra), options_(options), masks_(dependence_masks(algebra)) {}

  const FiniteSA& algebra() const { return algebra_; }
  const std::vector<std::uint64_t>& masks() const { return masks_; }

  const std::vector<Id>& zero_list(std::uint64_t bits) {
    auto it = zero_lists_.find(bits);
    if (it != zero_lists_.end()) return it->second;
    std::vector<Id> zl;
    for (Id x = 0; x < algebra_.size(); ++x)
      if ((masks_[x] & bits) == 0) zl.push_back(x);
    return zero_lists_.emplace(bits, std::move(zl)).first->second;
  }

  // enumerate(visit) must call visit() once per instance and stop early if it
  // returns false. evaluate(record) must enumerate the same instances in the
  // same order, call record() per instance, and when record() returns true,
  // check the instance, filling the report's counterexample on failure.
  template <class Enumerate, class Evaluate>
  LawReport run(const std::string& name, Enumerate&& enumerate, Evaluate&& evaluate) {
    LawReport report;
    report.law = name;
    std::uint64_t total = 0;
    enumerate([&](void) -> bool {
      ++total;
      return true;
    });
    const bool sample = options_.max_cases_per_law != 0 && total > options_.max_cases_per_law;
    std::mt19937_64 rng(options_.seed);
    std::uint64_t need = sample ? options_.max_cases_per_law : total;
    std::uint64_t pool = total;
    report.cases_checked = need;
    evaluate(report, [&](void) -> bool {
      bool take = true;
      if (sample) {
        take = uniform_below(rng, pool) < need;
        --pool;
        if (take) --need;
      }
      return take;
    });
    return report;
  }

private:
  const FiniteSA& algebra_;
  const LawCheckOptions& options_;
  std::vector<std::uint64_t> masks_;
  std::map<std::uint64_t, std::vector<Id>> zero_lists_;
};

// Calls body(s) for every tuple over list^alpha, coordinates stepping
// little-endian (position 0 fastest). Stops when body returns false.
template <class Body>
void for_each_tuple(const std::vector<Id>& list, std::uint32_t alpha, Body&& body) {
  if (list.empty()) return;
  std::vector<std::size_t> digit(alpha, 0);
  std::vector<Id> tuple(alpha, list[0]);
  for (;;) {
    if (!body(const_cast<const std::vector<Id>&>(tuple))) return;
    std::uint32_t pos = 0;
    while (pos < alpha) {
      if (++digit[pos] < list.size()) {
        tuple[pos] = list[digit[pos]];
        break;
      }
      digit[pos] = 0;
      tuple[pos] = list[0];
      ++pos;
    }
    if (pos == alpha) return;
  }
}

using detail::subst_fold;

}  // namespace

std::vector<LawReport> check_subst_laws(const FiniteSA& algebra,
                                        const LawCheckOptions& options) {
  if (options.require_valid) {
    CheckOptions quick;
    quick.max_violations = 1;
    if (!check_axioms(algebra, quick).empty())
      throw usage_error(
          "the algebra violates the axiom schema; run an axiom check for details");
  }
  const std::uint32_t alpha = algebra.dimension();
  const Id n = algebra.size();
  LawRunner runner(algebra, options);
  std::vector<LawReport> out;

  {  // peel-off: s *_(G) a = s *_(G-k) (s_k *_k a) for k in G.
    auto domain = [&](auto&& visit) {
      for (std::uint64_t gbits = 1; gbits < (std::uint64_t{1} << alpha); ++gbits) {
        const DimSet gamma = DimSet::from_bits(gbits);
        bool go = true;
        for_each_tuple(runner.zero_list(gbits), alpha, [&](const std::vector<Id>& s) {
          for (std::uint32_t k : gamma)
            for (Id a = 0; a < n && go; ++a) go = visit(gamma, s, k, a);
          return go;
        });
        if (!go) return;
      }
    };
    out.push_back(runner.run(
        "peel-off",
        [&](auto&& count) {
          domain([&](const DimSet&, const std::vector<Id>&, std::uint32_t, Id) {
            return count();
          });
        },
        [&](LawReport& report, auto&& take) {
          domain([&](const DimSet& gamma, const std::vector<Id>& s, std::uint32_t k, Id a) {
            if (!take()) return true;
            const Id lhs = subst_fold(algebra, s, gamma, a);
            const Id rhs = subst_fold(algebra, s, gamma.without(k), algebra.star(s[k], a, k));
            if (lhs == rhs) return true;
            LawBindings c;
            c.gamma = gamma;
            c.kappa = k;
            c.s = s;
            c.a = a;
            c.lhs = lhs;
            c.rhs = rhs;
            report.pass = false;
            report.counterexample = std::move(c);
            return false;
          });
        }));
  }

  {  // dimension-bound: dims(s *_(G) a) within union of dims(s_k), k in G, and dims(a) - G.
    auto domain = [&](auto&& visit) {
      for (std::uint64_t gbits = 0; gbits < (std::uint64_t{1} << alpha); ++gbits) {
        const DimSet gamma = DimSet::from_bits(gbits);
        bool go = true;
        for_each_tuple(runner.zero_list(gbits), alpha, [&](const std::vector<Id>& s) {
          for (Id a = 0; a < n && go; ++a) go = visit(gamma, s, a);
          return go;
        });
        if (!go) return;
      }
    };
    out.push_back(runner.run(
        "dimension-bound",
        [&](auto&& count) {
          domain([&](const DimSet&, const std::vector<Id>&, Id) { return count(); });
        },
        [&](LawReport& report, auto&& take) {
          domain([&](const DimSet& gamma, const std::vector<Id>& s, Id a) {
            if (!take()) return true;
            const Id res = subst_fold(algebra, s, gamma, a);
            std::uint64_t allowed = runner.masks()[a] & ~gamma.bits();
            for (std::uint32_t k : gamma) allowed |= runner.masks()[s[k]];
            if ((runner.masks()[res] & ~allowed) == 0) return true;
            LawBindings c;
            c.gamma = gamma;
            c.s = s;
            c.a = a;
            c.x = res;
            report.pass = false;
            report.counterexample = std::move(c);
            return false;
          });
        }));
  }

  {  // update-peel: (s with k:=x) *_(G) a = x *_k (s *_(G-k) a).
    auto domain = [&](auto&& visit) {
      for (std::uint64_t gbits = 1; gbits < (std::uint64_t{1} << alpha); ++gbits) {
        const DimSet gamma = DimSet::from_bits(gbits);
        const auto& zl = runner.zero_list(gbits);
        bool go = true;
        for_each_tuple(zl, alpha, [&](const std::vector<Id>& s) {
          for (std::uint32_t k : gamma)
            for (Id x : zl)
              for (Id a = 0; a < n && go; ++a) go = visit(gamma, s, k, x, a);
          return go;
        });
        if (!go) return;
      }
    };
    out.push_back(runner.run(
        "update-peel",
        [&](auto&& count) {
          domain([&](const DimSet&, const std::vector<Id>&, std::uint32_t, Id, Id) {
            return count();
          });
        },
        [&](LawReport& report, auto&& take) {
          domain([&](const DimSet& gamma, const std::vector<Id>& s, std::uint32_t k, Id x,
                     Id a) {
            if (!take()) return true;
            std::vector<Id> updated = s;
            updated[k] = x;
            const Id lhs = subst_fold(algebra, updated, gamma, a);
            const Id rhs = algebra.star(x, subst_fold(algebra, s, gamma.without(k), a), k);
            if (lhs == rhs) return true;
            LawBindings c;
            c.gamma = gamma;
            c.kappa = k;
            c.s = s;
            c.x = x;
            c.a = a;
            c.lhs = lhs;
            c.rhs = rhs;
            report.pass = false;
            report.counterexample = std::move(c);
            return false;
          });
        }));
  }

  {  // distribution: (s*_(G)a) *_k (s*_(S)b) = s*_(G&S)((s*_(G-S)a) *_k (s*_(S-G)b)).
    auto domain = [&](auto&& visit) {
      for (std::uint64_t gbits = 0; gbits < (std::uint64_t{1} << alpha); ++gbits)
        for (std::uint64_t sbits = 0; sbits < (std::uint64_t{1} << alpha); ++sbits) {
          const DimSet gamma = DimSet::from_bits(gbits);
          const DimSet sigma = DimSet::from_bits(sbits);
          for (std::uint32_t k = 0; k < alpha; ++k) {
            if (sbits >> k & 1) continue;
            bool go = true;
            for_each_tuple(runner.zero_list(gbits | sbits | std::uint64_t{1} << k), alpha,
                           [&](const std::vector<Id>& s) {
                             for (Id a = 0; a < n && go; ++a)
                               for (Id b = 0; b < n && go; ++b)
                                 go = visit(gamma, sigma, k, s, a, b);
                             return go;
                           });
            if (!go) return;
          }
        }
    };
    out.push_back(runner.run(
        "distribution",
        [&](auto&& count) {
          domain([&](const DimSet&, const DimSet&, std::uint32_t, const std::vector<Id>&, Id,
                     Id) { return count(); });
        },
        [&](LawReport& report, auto&& take) {
          domain([&](const DimSet& gamma, const DimSet& sigma, std::uint32_t k,
                     const std::vector<Id>& s, Id a, Id b) {
            if (!take()) return true;
            const Id lhs = algebra.star(subst_fold(algebra, s, gamma, a),
                                        subst_fold(algebra, s, sigma, b), k);
            const Id inner = algebra.star(subst_fold(algebra, s, gamma.minus(sigma), a),
                                          subst_fold(algebra, s, sigma.minus(gamma), b), k);
            const Id rhs = subst_fold(algebra, s, gamma.intersect(sigma), inner);
            if (lhs == rhs) return true;
            LawBindings c;
            c.gamma = gamma;
            c.sigma = sigma;
            c.kappa = k;
            c.s = s;
            c.a = a;
            c.b = b;
            c.lhs = lhs;
            c.rhs = rhs;
            report.pass = false;
            report.counterexample = std::move(c);
            return false;
          });
        }));
  }

  return out;
}

LawReport check_subst_order_independence(const FiniteSA& algebra,
                                         const LawCheckOptions& options) {
  if (options.require_valid) {
    CheckOptions quick;
    quick.max_violations = 1;
    if (!check_axioms(algebra, quick).empty())
      throw usage_error(
          "the algebra violates the axiom schema; run an axiom check for details");
  }
  const std::uint32_t alpha = algebra.dimension();
  const Id n = algebra.size();
  LawRunner runner(algebra, options);

  auto domain = [&](auto&& visit) {
    for (std::uint64_t gbits = 0; gbits < (std::uint64_t{1} << alpha); ++gbits) {
      const DimSet gamma = DimSet::from_bits(gbits);
      std::vector<std::uint32_t> order = gamma.members();
      bool go = true;
      // All fold orders of gamma, lexicographic via next_permutation.
      do {
        for_each_tuple(runner.zero_list(gbits), alpha, [&](const std::vector<Id>& s) {
          for (Id a = 0; a < n && go; ++a) go = visit(gamma, order, s, a);
          return go;
        });
      } while (go && std::next_permutation(order.begin(), order.end()));
      if (!go) return;
    }
  };

  return runner.run(
      "order-independence",
      [&](auto&& count) {
        domain([&](const DimSet&, const std::vector<std::uint32_t>&, const std::vector<Id>&,
                   Id) { return count(); });
      },
      [&](LawReport& report, auto&& take) {
        domain([&](const DimSet& gamma, const std::vector<std::uint32_t>& order,
                   const std::vector<Id>& s, Id a) {
          if (!take()) return true;
          const Id canonical = subst_fold(algebra, s, gamma, a);
          Id acc = a;
          for (std::uint32_t k : order) acc = algebra.row(k, s[k])[acc];
          if (acc == canonical) return true;
          LawBindings c;
          c.gamma = gamma;
          c.s = s;
          c.a = a;
          c.lhs = acc;
          c.rhs = canonical;
          report.pass = false;
          report.counterexample = std::move(c);
          return false;
        });
      });
}

GammaHomImage gamma_hom_image(const FiniteSA& algebra, const DimSet& gamma, Id a) {
  if (a >= algebra.size())
    throw usage_error("element id " + std::to_string(a) + " out of range (size " +
                      std::to_string(algebra.size()) + ")");
  {
    CheckOptions quick;
    quick.max_violations = 1;
    if (!check_axioms(algebra, quick).empty())
      throw usage_error(
          "the algebra violates the axiom schema; run an axiom check for details");
  }
  return detail::gamma_hom_image_trusted(algebra, gamma, a);
}

namespace detail {

GammaHomImage gamma_hom_image_trusted(const FiniteSA& algebra, const DimSet& gamma, Id a) {
  GammaHomImage out;
  out.base = zero_set(algebra, gamma);
  if (out.base.empty())
    throw degenerate_error("the zero set for the given index set is empty");
  std::vector<Id> pos(algebra.size(), 0);
  for (std::size_t i = 0; i < out.base.size(); ++i) pos[out.base[i]] = static_cast<Id>(i);
  const FnSpace sp(algebra.dimension(), static_cast<Id>(out.base.size()));
  out.fn.table.resize(sp.point_count());
  std::vector<Id> s(algebra.dimension());
  for (std::uint64_t r = 0; r < sp.point_count(); ++r) {
    std::uint64_t rest = r;
    for (std::uint32_t k = 0; k < algebra.dimension(); ++k) {
      s[k] = out.base[rest % out.base.size()];
      rest /= out.base.size();
    }
    const Id value = subst_fold(algebra, s, gamma, a);
    const DimSet d = dimension_set(algebra, value);
    if (!d.intersect(gamma).empty())
      throw integrity_error("substitution image escaped the zero set; the algebra is corrupt");
    out.fn.table[r] = pos[value];
  }
  return out;
}

}  // namespace detail

HomReport check_hom_into_function_space(const FiniteSA& a, const DimSet& gamma,
                                        const std::vector<FnElement>& images, Id base_size) {
  if (!gamma.empty() && gamma.members().back() >= a.dimension())
    throw usage_error("index " + std::to_string(gamma.members().back()) +
                      " out of range (dimension " + std::to_string(a.dimension()) + ")");
  if (images.size() != a.size())
    throw usage_error("expected " + std::to_string(a.size()) + " images, got " +
                      std::to_string(images.size()));
  const FnSpace sp(a.dimension(), base_size);
  for (const auto& f : images) sp.validate_element(f);
  HomReport report;
  for (std::uint32_t k : gamma) {
    if (images[a.v(k)] != sp.variable(k)) {
      report.pass = false;
      report.violations.push_back(
          HomViolation{HomViolation::Kind::distinguished, k, a.v(k), 0});
    }
    ++report.cases_checked;
    for (Id x = 0; x < a.size(); ++x)
      for (Id y = 0; y < a.size(); ++y) {
        ++report.cases_checked;
        if (images[a.row(k, x)[y]] != sp.star(images[x], images[y], k)) {
          report.pass = false;
          report.violations.push_back(HomViolation{HomViolation::Kind::op, k, x, y});
        }
      }
  }
  return report;
}

HomReport is_gamma_homomorphism(const std::vector<Id>& phi, const FiniteSA& a,
                                const FiniteSA& b, const DimSet& gamma) {
  if (a.dimension() != b.dimension())
    throw usage_error("algebras have different dimensions (" + std::to_string(a.dimension()) +
                      " and " + std::to_string(b.dimension()) + ")");
  if (!gamma.empty() && gamma.members().back() >= a.dimension())
    throw usage_error("index " + std::to_string(gamma.members().back()) +
                      " out of range (dimension " + std::to_string(a.dimension()) + ")");
  if (phi.size() != a.size())
    throw usage_error("map covers " + std::to_string(phi.size()) + " elements, expected " +
                      std::to_string(a.size()));
  for (Id x = 0; x < a.size(); ++x)
    if (phi[x] >= b.size())
      throw usage_error("map sends " + std::to_string(x) + " to " + std::to_string(phi[x]) +
                        ", target size is " + std::to_string(b.size()));
  HomReport report;
  for (std::uint32_t k : gamma) {
    if (phi[a.v(k)] != b.v(k)) {
      report.pass = false;
      report.violations.push_back(
          HomViolation{HomViolation::Kind::distinguished, k, a.v(k), 0});
    }
    ++report.cases_checked;
    for (Id x = 0; x < a.size(); ++x)
      for (Id y = 0; y < a.size(); ++y) {
        ++report.cases_checked;
        if (phi[a.row(k, x)[y]] != b.row(k, phi[x])[phi[y]]) {
          report.pass = false;
          report.violations.push_back(HomViolation{HomViolation::Kind::op, k, x, y});
        }
      }
  }
  return report;
}

}  // namespace sa
