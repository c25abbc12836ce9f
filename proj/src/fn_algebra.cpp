#include "sa/fn_algebra.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "sa/parallel.hpp"

namespace sa {

namespace {

void push(std::vector<FnAlgebraDefect>& out, FnAlgebraDefect::Kind kind, std::uint64_t a = 0,
          std::uint64_t b = 0, std::uint32_t kappa = 0) {
  out.push_back(FnAlgebraDefect{kind, a, b, kappa});
}

}  // namespace

std::vector<FnAlgebraDefect> check_fn_algebra(const FnAlgebra& algebra) {
  const FnSpace sp = algebra.space();
  std::vector<FnAlgebraDefect> out;
  const std::uint64_t n = algebra.elements.size();

  for (std::uint64_t i = 0; i < n; ++i) {
    const auto& t = algebra.elements[i].table;
    bool ok = t.size() == sp.point_count();
    for (std::size_t r = 0; ok && r < t.size(); ++r) ok = t[r] < sp.base_size();
    if (!ok) push(out, FnAlgebraDefect::Kind::bad_table, i);
  }
  if (!out.empty()) return out;  // later checks assume well-formed tables

  std::map<std::vector<Id>, std::uint64_t> position;
  for (std::uint64_t i = 0; i < n; ++i) {
    auto [it, fresh] = position.emplace(algebra.elements[i].table, i);
    if (!fresh) push(out, FnAlgebraDefect::Kind::duplicate_element, it->second, i);
  }

  for (std::uint32_t k = 0; k < sp.dimension(); ++k)
    if (!position.count(sp.variable(k).table))
      push(out, FnAlgebraDefect::Kind::missing_variable, 0, 0, k);

  const auto count = sp.element_count();
  const bool genuinely_full = count && *count == n && position.size() == n;
  if (algebra.full != genuinely_full) push(out, FnAlgebraDefect::Kind::full_flag_wrong);

  // A duplicate-free carrier of the whole space is closed by construction;
  // scanning it would be quadratic in a possibly huge element count.
  if (!genuinely_full && out.empty()) {
    for (std::uint32_t k = 0; k < sp.dimension() && out.empty(); ++k)
      for (std::uint64_t a = 0; a < n && out.empty(); ++a)
        for (std::uint64_t b = 0; b < n; ++b) {
          const FnElement p = sp.star(algebra.elements[a], algebra.elements[b], k);
          if (!position.count(p.table)) {
            push(out, FnAlgebraDefect::Kind::not_closed, a, b, k);
            break;
          }
        }
  }
  return out;
}

FnAlgebra full_fsa(std::uint32_t dimension, Id base_size, const Budget& budget) {
  const FnSpace sp(dimension, base_size);
  const auto count = sp.element_count();
  if (!count || *count > budget.max_elements)
    throw capacity_error(
        "full function algebra over base " + std::to_string(base_size) + " in dimension " +
        std::to_string(dimension) + " has " +
        (count ? std::to_string(*count)
               : std::to_string(base_size) + "^" + std::to_string(sp.point_count())) +
        " elements, which exceeds the materialization budget of " +
        std::to_string(budget.max_elements));
  FnAlgebra out;
  out.dimension = dimension;
  out.base_size = base_size;
  out.full = true;
  out.elements.reserve(*count);
  for (std::uint64_t id = 0; id < *count; ++id) out.elements.push_back(sp.from_canonical_id(id));
  return out;
}

namespace {

// Star table row filler for a full algebra, where element position equals
// canonical id. For fixed kappa and left operand f,
//   id(f *_kappa g) = sum over table positions p of W[p] * g.table[p]
// with W[p] = sum of base^r over ranks r remapped to p by the update
// s -> s with kappa-slot f(s). Splitting positions into low and high halves
// turns the row into two table lookups per right operand.
class FullRowFiller {
public:
  FullRowFiller(const FnSpace& sp, std::uint32_t kappa)
      : sp_(sp),
        points_(sp.point_count()),
        kappa_weight_(1),
        low_positions_(0),
        low_count_(1) {
    for (std::uint32_t k = 0; k < kappa; ++k) kappa_weight_ *= sp.base_size();
    while (low_positions_ < points_ && low_count_ * sp_.base_size() <= 4096) {
      low_count_ *= sp_.base_size();
      ++low_positions_;
    }
    high_count_ = 1;
    for (std::uint64_t p = low_positions_; p < points_; ++p) high_count_ *= sp_.base_size();
    weights_.resize(points_);
    low_table_.resize(low_count_);
    high_table_.resize(high_count_);
    rank_weight_.resize(points_);
    std::uint64_t w = 1;
    for (std::uint64_t r = 0; r < points_; ++r) {
      rank_weight_[r] = w;
      w *= sp_.base_size();
    }
  }

  // Writes the full row for left operand f into out[0..n).
  void fill(const FnElement& f, Cell* out) {
    const Id u = sp_.base_size();
    std::fill(weights_.begin(), weights_.end(), 0);
    std::uint64_t digit = 0, until_carry = kappa_weight_;
    for (std::uint64_t r = 0; r < points_; ++r) {
      const std::uint64_t p = r + (std::uint64_t{f.table[r]} - digit) * kappa_weight_;
      weights_[p] += rank_weight_[r];
      if (--until_carry == 0) {
        until_carry = kappa_weight_;
        digit = digit + 1 == u ? 0 : digit + 1;
      }
    }
    accumulate(low_table_, 0, low_positions_);
    accumulate(high_table_, low_positions_, points_);
    Cell* cursor = out;
    for (std::uint64_t h = 0; h < high_count_; ++h) {
      const std::uint64_t base = high_table_[h];
      for (std::uint64_t l = 0; l < low_count_; ++l)
        *cursor++ = static_cast<Cell>(base + low_table_[l]);
    }
  }

private:
  // table[i] = sum over positions p in [first, last) of weights_[p] * digit(i, p - first).
  void accumulate(std::vector<std::uint64_t>& table, std::uint64_t first, std::uint64_t last) {
    const Id u = sp_.base_size();
    table[0] = 0;
    std::uint64_t filled = 1;
    for (std::uint64_t p = first; p < last; ++p) {
      for (Id d = 1; d < u; ++d)
        for (std::uint64_t i = 0; i < filled; ++i)
          table[d * filled + i] = table[(d - 1) * filled + i] + weights_[p];
      filled *= u;
    }
  }

  const FnSpace& sp_;
  std::uint64_t points_;
  std::uint64_t kappa_weight_;
  std::uint64_t low_positions_, low_count_, high_count_;
  std::vector<std::uint64_t> weights_, low_table_, high_table_, rank_weight_;
};

}  // namespace

FiniteSA as_finite_sa(const FnAlgebra& algebra, const Budget& budget) {
  {
    const auto defects = check_fn_algebra(algebra);
    if (!defects.empty()) {
      const auto& d = defects.front();
      std::string what = "function algebra failed validation: ";
      switch (d.kind) {
        case FnAlgebraDefect::Kind::bad_table:
          what += "element " + std::to_string(d.a) + " has a malformed table";
          break;
        case FnAlgebraDefect::Kind::duplicate_element:
          what += "elements " + std::to_string(d.a) + " and " + std::to_string(d.b) +
                  " hold the same table";
          break;
        case FnAlgebraDefect::Kind::missing_variable:
          what += "variable element for index " + std::to_string(d.kappa) + " is absent";
          break;
        case FnAlgebraDefect::Kind::not_closed:
          what += "product of elements " + std::to_string(d.a) + " and " + std::to_string(d.b) +
                  " under index " + std::to_string(d.kappa) + " escapes the carrier";
          break;
        case FnAlgebraDefect::Kind::full_flag_wrong:
          what += "the full flag disagrees with the carrier";
          break;
      }
      throw integrity_error(what);
    }
  }

  const FnSpace sp = algebra.space();
  const std::uint64_t n = algebra.elements.size();
  if (n > budget.max_elements || n > kMaxCarrier)
    throw capacity_error("carrier of " + std::to_string(n) +
                         " elements exceeds the materialization budget");
  const std::uint64_t cells = std::uint64_t{sp.dimension()} * n * n;
  if (cells > budget.max_cells)
    throw capacity_error("operation tables would need " + std::to_string(cells) +
                         " cells, which exceeds the budget of " +
                         std::to_string(budget.max_cells));

  std::vector<Id> v(sp.dimension());
  std::vector<std::vector<Cell>> star(sp.dimension());

  if (algebra.full) {
    // Positions must equal canonical ids; verify before relying on it.
    for (std::uint64_t i = 0; i < n; ++i)
      if (sp.canonical_id(algebra.elements[i]) != i)
        throw integrity_error("full algebra elements are not in canonical id order at position " +
                              std::to_string(i));
    for (std::uint32_t k = 0; k < sp.dimension(); ++k) {
      v[k] = static_cast<Id>(sp.canonical_id(sp.variable(k)));
      star[k].resize(n * n);
      Cell* data = star[k].data();
      run_chunks(n, 0, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
        FullRowFiller filler(sp, k);
        for (std::uint64_t f = begin; f < end; ++f)
          filler.fill(algebra.elements[f], data + f * n);
      });
    }
  } else {
    std::map<std::vector<Id>, Id> position;
    for (std::uint64_t i = 0; i < n; ++i)
      position.emplace(algebra.elements[i].table, static_cast<Id>(i));
    for (std::uint32_t k = 0; k < sp.dimension(); ++k) {
      const auto it = position.find(sp.variable(k).table);
      v[k] = it->second;  // presence guaranteed by check_fn_algebra
      star[k].resize(n * n);
      for (std::uint64_t a = 0; a < n; ++a)
        for (std::uint64_t b = 0; b < n; ++b) {
          const FnElement p = sp.star(algebra.elements[a], algebra.elements[b], k);
          star[k][a * n + b] = static_cast<Cell>(position.at(p.table));
        }
    }
  }
  return FiniteSA(sp.dimension(), static_cast<Id>(n), std::move(v), std::move(star));
}

}  // namespace sa
