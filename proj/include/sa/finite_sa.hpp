#pragma once

#include <cstdint>
#include <vector>

#include "sa/types.hpp"

namespace sa {

// A finite algebra with one binary operation and one distinguished element per
// dimension index: carrier {0, ..., size-1}, tables star[kappa] of size n*n in
// row-major order (row = left operand), and v[kappa] the distinguished ids.
// Purely syntactic: nothing here assumes the axioms hold.
class FiniteSA {
public:
  FiniteSA(std::uint32_t dimension, Id size, std::vector<Id> v,
           std::vector<std::vector<Cell>> star);

  std::uint32_t dimension() const { return dimension_; }
  Id size() const { return size_; }
  Id v(std::uint32_t kappa) const;
  // star(a, b, kappa) = a *_kappa b, bounds-checked.
  Id star(Id a, Id b, std::uint32_t kappa) const;

  // Unchecked row access for bulk scans: row(kappa, a)[b] = a *_kappa b.
  const Cell* row(std::uint32_t kappa, Id a) const {
    return star_[kappa].data() + std::size_t{a} * size_;
  }
  const std::vector<Cell>& table(std::uint32_t kappa) const { return star_[kappa]; }
  const std::vector<Id>& v_all() const { return v_; }

  friend bool operator==(const FiniteSA&, const FiniteSA&) = default;

private:
  std::uint32_t dimension_;
  Id size_;
  std::vector<Id> v_;
  std::vector<std::vector<Cell>> star_;
};

// Indices kappa such that some a moves x: a *_kappa x != x.
DimSet dimension_set(const FiniteSA& algebra, Id x);

// dimension_set for every element at once, packed as bit masks (bit kappa of
// masks[x] set iff kappa is in the dimension set of x). One sequential sweep
// per table instead of a column scan per element.
std::vector<std::uint64_t> dependence_masks(const FiniteSA& algebra);

// Elements whose dimension set avoids gamma, ascending.
std::vector<Id> zero_set(const FiniteSA& algebra, const DimSet& gamma);

}  // namespace sa
