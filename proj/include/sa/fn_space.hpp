#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sa/types.hpp"

namespace sa {

// A point of U^alpha: one base value per dimension index.
struct Assignment {
  std::vector<Id> entries;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// A function U^alpha -> U, tabulated over assignments in rank order.
struct FnElement {
  std::vector<Id> table;

  friend bool operator==(const FnElement&, const FnElement&) = default;
};

// The space of assignments and function elements for a fixed dimension and
// finite base. Assignments are ranked little-endian in mixed radix base_size:
// rank(s) = sum over lambda of s[lambda] * base_size^lambda.
class FnSpace {
public:
  FnSpace(std::uint32_t dimension, Id base_size);

  std::uint32_t dimension() const { return dimension_; }
  Id base_size() const { return base_size_; }
  // Number of assignments, |U|^alpha.
  std::uint64_t point_count() const { return point_count_; }
  // Number of function elements |U|^(|U|^alpha), if it fits 64 bits.
  std::optional<std::uint64_t> element_count() const;

  std::uint64_t rank(const Assignment& s) const;
  Assignment unrank(std::uint64_t r) const;
  // s with position kappa replaced by x.
  Assignment updated(const Assignment& s, std::uint32_t kappa, Id x) const;

  void validate_assignment(const Assignment& s) const;
  void validate_element(const FnElement& f) const;

  Id eval(const FnElement& f, const Assignment& s) const;
  FnElement variable(std::uint32_t kappa) const;
  FnElement constant(Id c) const;
  // (f *_kappa g)(s) = g(s with kappa-slot replaced by f(s)).
  FnElement star(const FnElement& f, const FnElement& g, std::uint32_t kappa) const;

  // canonical_id(f) = sum over ranks r of f(r) * base_size^r. Injective over
  // the whole space; throws capacity_error if the value exceeds 64 bits.
  std::uint64_t canonical_id(const FnElement& f) const;
  FnElement from_canonical_id(std::uint64_t id) const;

  // Indices the function genuinely depends on (some pair of assignments
  // differing only there gets different values).
  DimSet dependence(const FnElement& f) const;

private:
  std::uint32_t dimension_;
  Id base_size_;
  std::uint64_t point_count_;
  std::vector<std::uint64_t> weight_;  // base_size^lambda per dimension index
};

}  // namespace sa
