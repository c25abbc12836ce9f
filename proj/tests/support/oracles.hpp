#pragma once

// Reference implementations the tests trust instead of the library. Points
// are enumerated by counting, values are found by searching that enumeration,
// and products come straight from the defining formula, so none of this
// shares code or representation tricks with the checked implementation.

#include <cstdint>
#include <vector>

namespace oracle {

using Table = std::vector<unsigned>;
using Point = std::vector<unsigned>;

// All points of {0..base-1}^dim by counting with position 0 as the fastest
// moving digit. Index in this list is the rank the library must agree with.
inline std::vector<Point> points(unsigned dim, unsigned base) {
  std::vector<Point> out;
  Point s(dim, 0);
  for (;;) {
    out.push_back(s);
    unsigned k = 0;
    while (k < dim && s[k] + 1 == base) s[k++] = 0;
    if (k == dim) return out;
    ++s[k];
  }
}

inline unsigned value_at(const Table& f, const std::vector<Point>& pts, const Point& s) {
  for (std::size_t r = 0; r < pts.size(); ++r)
    if (pts[r] == s) return f[r];
  return ~0u;  // unreachable for in-range points
}

// (f *_kappa g)(s) = g(s with slot kappa set to f(s)).
inline Table star(const Table& f, const Table& g, unsigned kappa, unsigned dim, unsigned base) {
  const auto pts = points(dim, base);
  Table out(pts.size());
  for (std::size_t r = 0; r < pts.size(); ++r) {
    Point moved = pts[r];
    moved[kappa] = f[r];
    out[r] = value_at(g, pts, moved);
  }
  return out;
}

inline Table variable(unsigned kappa, unsigned dim, unsigned base) {
  const auto pts = points(dim, base);
  Table out(pts.size());
  for (std::size_t r = 0; r < pts.size(); ++r) out[r] = pts[r][kappa];
  return out;
}

inline Table constant(unsigned c, unsigned dim, unsigned base) {
  return Table(points(dim, base).size(), c);
}

// sum of f(r) * base^r over ranks r.
inline std::uint64_t can_id(const Table& f, unsigned base) {
  std::uint64_t id = 0, w = 1;
  for (const unsigned value : f) {
    id += value * w;
    w *= base;
  }
  return id;
}

// Indices some pair of points differing only there maps to different values.
inline std::vector<unsigned> depends_on(const Table& f, unsigned dim, unsigned base) {
  const auto pts = points(dim, base);
  std::vector<unsigned> out;
  for (unsigned k = 0; k < dim; ++k) {
    bool moved = false;
    for (std::size_t i = 0; i < pts.size() && !moved; ++i)
      for (std::size_t j = 0; j < pts.size() && !moved; ++j) {
        bool only_k = pts[i][k] != pts[j][k];
        for (unsigned l = 0; l < dim; ++l)
          if (l != k && pts[i][l] != pts[j][l]) only_k = false;
        if (only_k && f[i] != f[j]) moved = true;
      }
    if (moved) out.push_back(k);
  }
  return out;
}

}  // namespace oracle
