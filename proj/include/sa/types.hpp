#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <string>
#include <vector>

#include "sa/error.hpp"

namespace sa {

// Element / base-point identifier as seen by the public API and JSON files.
using Id = std::uint32_t;

// Packed operation-table cell. Carriers are capped at kMaxCarrier so a cell
// always fits 16 bits; this halves table memory, which matters because a
// single full function algebra can need hundreds of millions of cells.
using Cell = std::uint16_t;

inline constexpr std::size_t kMaxCarrier = 65536;
inline constexpr std::uint32_t kMaxDimension = 64;

// Global materialization budgets. max_elements bounds carrier sizes produced
// by constructions; max_cells bounds total operation-table cells.
struct Budget {
  std::uint64_t max_elements = 65536;
  std::uint64_t max_cells = 1'000'000'000;
};

// A finite set of dimension indices below some algebra dimension, kept as a
// sorted duplicate-free vector. Values never exceed kMaxDimension.
class DimSet {
public:
  DimSet() = default;
  explicit DimSet(std::vector<std::uint32_t> members);
  static DimSet full(std::uint32_t alpha);
  static DimSet from_bits(std::uint64_t bits);

  bool contains(std::uint32_t k) const;
  bool subset_of(const DimSet& other) const;
  DimSet unite(const DimSet& other) const;
  DimSet intersect(const DimSet& other) const;
  DimSet minus(const DimSet& other) const;
  DimSet with(std::uint32_t k) const;
  DimSet without(std::uint32_t k) const;

  std::uint64_t bits() const;
  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }
  const std::vector<std::uint32_t>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  friend bool operator==(const DimSet&, const DimSet&) = default;

private:
  std::vector<std::uint32_t> members_;
};

inline DimSet::DimSet(std::vector<std::uint32_t> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.back() >= kMaxDimension)
    throw usage_error("dimension index " + std::to_string(members_.back()) +
                      " exceeds the supported maximum of " + std::to_string(kMaxDimension - 1));
}

inline DimSet DimSet::full(std::uint32_t alpha) {
  std::vector<std::uint32_t> m(alpha);
  for (std::uint32_t k = 0; k < alpha; ++k) m[k] = k;
  return DimSet(std::move(m));
}

inline DimSet DimSet::from_bits(std::uint64_t bits) {
  std::vector<std::uint32_t> m;
  for (std::uint32_t k = 0; k < kMaxDimension; ++k)
    if (bits >> k & 1) m.push_back(k);
  return DimSet(std::move(m));
}

inline std::uint64_t DimSet::bits() const {
  std::uint64_t b = 0;
  for (auto k : members_) b |= std::uint64_t{1} << k;
  return b;
}

inline bool DimSet::contains(std::uint32_t k) const {
  return std::binary_search(members_.begin(), members_.end(), k);
}

inline bool DimSet::subset_of(const DimSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end());
}

inline DimSet DimSet::unite(const DimSet& other) const {
  std::vector<std::uint32_t> m;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                 std::back_inserter(m));
  return DimSet(std::move(m));
}

inline DimSet DimSet::intersect(const DimSet& other) const {
  std::vector<std::uint32_t> m;
  std::set_intersection(members_.begin(), members_.end(), other.members_.begin(),
                        other.members_.end(), std::back_inserter(m));
  return DimSet(std::move(m));
}

inline DimSet DimSet::minus(const DimSet& other) const {
  std::vector<std::uint32_t> m;
  std::set_difference(members_.begin(), members_.end(), other.members_.begin(),
                      other.members_.end(), std::back_inserter(m));
  return DimSet(std::move(m));
}

inline DimSet DimSet::with(std::uint32_t k) const {
  auto m = members_;
  m.push_back(k);
  return DimSet(std::move(m));
}

inline DimSet DimSet::without(std::uint32_t k) const {
  auto m = members_;
  std::erase(m, k);
  return DimSet(std::move(m));
}

// Deterministic replacement for std::uniform_int_distribution (whose output
// is implementation-defined). Draws uniformly from [0, n) by rejection.
template <class Rng>
std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n == 0) throw usage_error("uniform_below: empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    std::uint64_t draw = rng();
    if (draw < limit) return draw % n;
  }
}

}  // namespace sa
