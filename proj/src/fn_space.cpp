#include "sa/fn_space.hpp"

#include <limits>
#include <string>

namespace sa {

namespace {

// a^b with overflow detection.
std::optional<std::uint64_t> checked_pow(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < b; ++i) {
    if (a != 0 && out > std::numeric_limits<std::uint64_t>::max() / a) return std::nullopt;
    out *= a;
  }
  return out;
}

}  // namespace

FnSpace::FnSpace(std::uint32_t dimension, Id base_size)
    : dimension_(dimension), base_size_(base_size) {
  if (dimension == 0) throw usage_error("function space dimension must be at least 1");
  if (dimension > kMaxDimension)
    throw usage_error("function space dimension " + std::to_string(dimension) +
                      " exceeds the supported maximum of " + std::to_string(kMaxDimension));
  if (base_size == 0) throw usage_error("function space base must be nonempty");
  auto points = checked_pow(base_size, dimension);
  // Tables are materialized as vectors, so keep the point count addressable.
  if (!points || *points > (std::uint64_t{1} << 32))
    throw capacity_error("assignment space of size " + std::to_string(base_size) + "^" +
                         std::to_string(dimension) + " is too large to tabulate");
  point_count_ = *points;
  weight_.resize(dimension);
  std::uint64_t w = 1;
  for (std::uint32_t k = 0; k < dimension; ++k) {
    weight_[k] = w;
    w *= base_size;
  }
}

std::optional<std::uint64_t> FnSpace::element_count() const {
  return checked_pow(base_size_, point_count_);
}

std::uint64_t FnSpace::rank(const Assignment& s) const {
  validate_assignment(s);
  std::uint64_t r = 0;
  for (std::uint32_t k = 0; k < dimension_; ++k) r += weight_[k] * s.entries[k];
  return r;
}

Assignment FnSpace::unrank(std::uint64_t r) const {
  if (r >= point_count_)
    throw usage_error("assignment rank " + std::to_string(r) + " out of range (space has " +
                      std::to_string(point_count_) + " points)");
  Assignment s;
  s.entries.resize(dimension_);
  for (std::uint32_t k = 0; k < dimension_; ++k) {
    s.entries[k] = static_cast<Id>(r % base_size_);
    r /= base_size_;
  }
  return s;
}

Assignment FnSpace::updated(const Assignment& s, std::uint32_t kappa, Id x) const {
  validate_assignment(s);
  if (kappa >= dimension_)
    throw usage_error("index " + std::to_string(kappa) + " out of range (dimension " +
                      std::to_string(dimension_) + ")");
  if (x >= base_size_)
    throw usage_error("base value " + std::to_string(x) + " out of range (base size " +
                      std::to_string(base_size_) + ")");
  Assignment out = s;
  out.entries[kappa] = x;
  return out;
}

void FnSpace::validate_assignment(const Assignment& s) const {
  if (s.entries.size() != dimension_)
    throw usage_error("assignment has " + std::to_string(s.entries.size()) +
                      " entries, expected " + std::to_string(dimension_));
  for (std::uint32_t k = 0; k < dimension_; ++k)
    if (s.entries[k] >= base_size_)
      throw usage_error("assignment entry " + std::to_string(k) + " is " +
                        std::to_string(s.entries[k]) + ", base size is " +
                        std::to_string(base_size_));
}

void FnSpace::validate_element(const FnElement& f) const {
  if (f.table.size() != point_count_)
    throw usage_error("function table has " + std::to_string(f.table.size()) +
                      " entries, expected " + std::to_string(point_count_));
  for (std::size_t r = 0; r < f.table.size(); ++r)
    if (f.table[r] >= base_size_)
      throw usage_error("function value " + std::to_string(f.table[r]) + " at rank " +
                        std::to_string(r) + " is outside base size " +
                        std::to_string(base_size_));
}

Id FnSpace::eval(const FnElement& f, const Assignment& s) const {
  validate_element(f);
  return f.table[rank(s)];
}

FnElement FnSpace::variable(std::uint32_t kappa) const {
  if (kappa >= dimension_)
    throw usage_error("index " + std::to_string(kappa) + " out of range (dimension " +
                      std::to_string(dimension_) + ")");
  FnElement f;
  f.table.resize(point_count_);
  // Digit kappa of the rank cycles with period weight_[kappa].
  for (std::uint64_t r = 0; r < point_count_; ++r)
    f.table[r] = static_cast<Id>(r / weight_[kappa] % base_size_);
  return f;
}

FnElement FnSpace::constant(Id c) const {
  if (c >= base_size_)
    throw usage_error("base value " + std::to_string(c) + " out of range (base size " +
                      std::to_string(base_size_) + ")");
  FnElement f;
  f.table.assign(point_count_, c);
  return f;
}

FnElement FnSpace::star(const FnElement& f, const FnElement& g, std::uint32_t kappa) const {
  validate_element(f);
  validate_element(g);
  if (kappa >= dimension_)
    throw usage_error("index " + std::to_string(kappa) + " out of range (dimension " +
                      std::to_string(dimension_) + ")");
  FnElement out;
  out.table.resize(point_count_);
  const std::uint64_t w = weight_[kappa];
  // rank(s with kappa-slot x) = rank(s) + (x - s[kappa]) * base^kappa; track
  // digit kappa of r incrementally instead of unranking every point. The
  // subtraction may wrap, but the sum is a valid rank, so the wrap cancels.
  std::uint64_t digit = 0, until_carry = w;
  for (std::uint64_t r = 0; r < point_count_; ++r) {
    const std::uint64_t moved = r + (std::uint64_t{f.table[r]} - digit) * w;
    out.table[r] = g.table[moved];
    if (--until_carry == 0) {
      until_carry = w;
      digit = digit + 1 == base_size_ ? 0 : digit + 1;
    }
  }
  return out;
}

std::uint64_t FnSpace::canonical_id(const FnElement& f) const {
  validate_element(f);
  std::uint64_t id = 0;
  for (std::uint64_t r = point_count_; r-- > 0;) {
    if (id > (std::numeric_limits<std::uint64_t>::max() - f.table[r]) / base_size_)
      throw capacity_error("canonical id does not fit 64 bits for base " +
                           std::to_string(base_size_) + " and " + std::to_string(point_count_) +
                           " table entries");
    id = id * base_size_ + f.table[r];
  }
  return id;
}

FnElement FnSpace::from_canonical_id(std::uint64_t id) const {
  FnElement f;
  f.table.resize(point_count_);
  for (std::uint64_t r = 0; r < point_count_; ++r) {
    f.table[r] = static_cast<Id>(id % base_size_);
    id /= base_size_;
  }
  if (id != 0)
    throw usage_error("canonical id has leftover digits beyond the table size");
  return f;
}

DimSet FnSpace::dependence(const FnElement& f) const {
  validate_element(f);
  std::vector<std::uint32_t> deps;
  for (std::uint32_t k = 0; k < dimension_; ++k) {
    const std::uint64_t w = weight_[k];
    bool moved = false;
    // Compare each point against its neighbour one step up in digit k.
    for (std::uint64_t r = 0; r < point_count_ && !moved; ++r) {
      if (r / w % base_size_ + 1 == base_size_) continue;
      if (f.table[r] != f.table[r + w]) moved = true;
    }
    if (moved) deps.push_back(k);
  }
  return DimSet(std::move(deps));
}

}  // namespace sa
