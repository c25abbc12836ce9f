#include "sa/finite_sa.hpp"

#include <string>

namespace sa {

FiniteSA::FiniteSA(std::uint32_t dimension, Id size, std::vector<Id> v,
                   std::vector<std::vector<Cell>> star)
    : dimension_(dimension), size_(size), v_(std::move(v)), star_(std::move(star)) {
  if (dimension > kMaxDimension)
    throw usage_error("dimension " + std::to_string(dimension) +
                      " exceeds the supported maximum of " + std::to_string(kMaxDimension));
  if (size == 0) throw usage_error("carrier must be nonempty");
  if (size > kMaxCarrier)
    throw capacity_error("carrier of size " + std::to_string(size) +
                         " exceeds the supported maximum of " + std::to_string(kMaxCarrier));
  if (v_.size() != dimension)
    throw usage_error("expected " + std::to_string(dimension) + " distinguished elements, got " +
                      std::to_string(v_.size()));
  for (std::uint32_t k = 0; k < dimension; ++k)
    if (v_[k] >= size)
      throw usage_error("distinguished element for index " + std::to_string(k) + " is " +
                        std::to_string(v_[k]) + ", carrier size is " + std::to_string(size));
  if (star_.size() != dimension)
    throw usage_error("expected " + std::to_string(dimension) + " operation tables, got " +
                      std::to_string(star_.size()));
  const std::size_t cells = std::size_t{size} * size;
  for (std::uint32_t k = 0; k < dimension; ++k) {
    if (star_[k].size() != cells)
      throw usage_error("operation table for index " + std::to_string(k) + " has " +
                        std::to_string(star_[k].size()) + " cells, expected " +
                        std::to_string(cells));
    for (std::size_t i = 0; i < cells; ++i)
      if (star_[k][i] >= size)
        throw usage_error("operation table for index " + std::to_string(k) + ", row " +
                          std::to_string(i / size) + ", column " + std::to_string(i % size) +
                          ": id " + std::to_string(star_[k][i]) + " out of range (size " +
                          std::to_string(size) + ")");
  }
}

Id FiniteSA::v(std::uint32_t kappa) const {
  if (kappa >= dimension_)
    throw usage_error("index " + std::to_string(kappa) + " out of range (dimension " +
                      std::to_string(dimension_) + ")");
  return v_[kappa];
}

Id FiniteSA::star(Id a, Id b, std::uint32_t kappa) const {
  if (kappa >= dimension_)
    throw usage_error("index " + std::to_string(kappa) + " out of range (dimension " +
                      std::to_string(dimension_) + ")");
  if (a >= size_ || b >= size_)
    throw usage_error("element id out of range (size " + std::to_string(size_) + ")");
  return star_[kappa][std::size_t{a} * size_ + b];
}

DimSet dimension_set(const FiniteSA& algebra, Id x) {
  if (x >= algebra.size())
    throw usage_error("element id " + std::to_string(x) + " out of range (size " +
                      std::to_string(algebra.size()) + ")");
  std::vector<std::uint32_t> deps;
  for (std::uint32_t k = 0; k < algebra.dimension(); ++k) {
    for (Id a = 0; a < algebra.size(); ++a) {
      if (algebra.row(k, a)[x] != x) {
        deps.push_back(k);
        break;
      }
    }
  }
  return DimSet(std::move(deps));
}

std::vector<std::uint64_t> dependence_masks(const FiniteSA& algebra) {
  const Id n = algebra.size();
  std::vector<std::uint64_t> masks(n, 0);
  for (std::uint32_t k = 0; k < algebra.dimension(); ++k) {
    const std::uint64_t bit = std::uint64_t{1} << k;
    for (Id a = 0; a < n; ++a) {
      const Cell* r = algebra.row(k, a);
      for (Id x = 0; x < n; ++x)
        if (r[x] != x) masks[x] |= bit;
    }
  }
  return masks;
}

std::vector<Id> zero_set(const FiniteSA& algebra, const DimSet& gamma) {
  if (!gamma.empty() && gamma.members().back() >= algebra.dimension())
    throw usage_error("index " + std::to_string(gamma.members().back()) +
                      " out of range (dimension " + std::to_string(algebra.dimension()) + ")");
  const auto masks = dependence_masks(algebra);
  const std::uint64_t avoid = gamma.bits();
  std::vector<Id> out;
  for (Id x = 0; x < algebra.size(); ++x)
    if ((masks[x] & avoid) == 0) out.push_back(x);
  return out;
}

}  // namespace sa
