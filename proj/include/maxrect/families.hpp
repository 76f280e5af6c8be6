#pragma once

#include "maxrect/core.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace maxrect {

/// The finite rectangle families realizing "sup over all rectangles":
///   All         every valid integer box
///   DyadicSides every box whose side lengths are powers of two, any position
///   Dyadic      power-of-two sides aligned to the dyadic grid (lo % side == 0)
/// As sets of rectangles, Dyadic is contained in DyadicSides is contained in All.
enum class RectFamily { All, DyadicSides, Dyadic };

inline std::string to_string(RectFamily f) {
  switch (f) {
    case RectFamily::All: return "all";
    case RectFamily::DyadicSides: return "dyadic-sides";
    case RectFamily::Dyadic: return "dyadic";
  }
  return "?";
}

inline std::optional<RectFamily> parse_family(std::string_view s) {
  if (s == "all") return RectFamily::All;
  if (s == "dyadic-sides") return RectFamily::DyadicSides;
  if (s == "dyadic") return RectFamily::Dyadic;
  return std::nullopt;
}

using AxisIntervals = std::vector<std::pair<int, int>>;

/// Per-axis [a, b) intervals of the family, optionally restricted to those
/// containing a given coordinate. The N-dimensional family is the product
/// of its per-axis interval lists.
inline AxisIntervals axis_intervals(RectFamily family, int extent,
                                    std::optional<int> containing = std::nullopt) {
  AxisIntervals out;
  auto keep = [&](int a, int b) {
    if (!containing || (a <= *containing && *containing < b)) out.emplace_back(a, b);
  };
  switch (family) {
    case RectFamily::All:
      for (int a = 0; a < extent; ++a)
        for (int b = a + 1; b <= extent; ++b) keep(a, b);
      break;
    case RectFamily::DyadicSides:
      for (int len = 1; len <= extent; len *= 2)
        for (int a = 0; a + len <= extent; ++a) keep(a, a + len);
      break;
    case RectFamily::Dyadic:
      for (int len = 1; len <= extent; len *= 2)
        for (int a = 0; a + len <= extent; a += len) keep(a, a + len);
      break;
  }
  return out;
}

/// Visits every family rectangle matching the per-axis constraints
/// (fixed[i] set = only rectangles containing that coordinate on axis i).
/// The visited Rect reference is reused between calls.
template <class F>
void for_each_rect(const Lattice& lat, RectFamily family,
                   const std::vector<std::optional<int>>& fixed, F&& fn) {
  const int n = lat.dims();
  std::vector<AxisIntervals> lists(n);
  for (int i = 0; i < n; ++i) {
    lists[i] = axis_intervals(family, lat.extent(i), fixed[i]);
    if (lists[i].empty()) return;
  }
  Rect r{ArrayXi(n), ArrayXi(n)};
  std::vector<std::size_t> pos(n, 0);
  for (int i = 0; i < n; ++i) {
    r.lo[i] = lists[i][0].first;
    r.hi[i] = lists[i][0].second;
  }
  for (;;) {
    fn(static_cast<const Rect&>(r));
    int ax = n - 1;
    for (; ax >= 0; --ax) {
      if (++pos[ax] < lists[ax].size()) {
        r.lo[ax] = lists[ax][pos[ax]].first;
        r.hi[ax] = lists[ax][pos[ax]].second;
        break;
      }
      pos[ax] = 0;
      r.lo[ax] = lists[ax][0].first;
      r.hi[ax] = lists[ax][0].second;
    }
    if (ax < 0) return;
  }
}

template <class F>
void for_each_rect(const Lattice& lat, RectFamily family, F&& fn) {
  std::vector<std::optional<int>> fixed(lat.dims());
  for_each_rect(lat, family, fixed, std::forward<F>(fn));
}

template <class F>
void for_each_rect_containing(const Lattice& lat, RectFamily family, const ArrayXi& x, F&& fn) {
  std::vector<std::optional<int>> fixed(lat.dims());
  for (int i = 0; i < lat.dims(); ++i) fixed[i] = x[i];
  for_each_rect(lat, family, fixed, std::forward<F>(fn));
}

inline Index count_rects(const Lattice& lat, RectFamily family,
                         std::optional<ArrayXi> containing = std::nullopt) {
  Index c = 1;
  for (int i = 0; i < lat.dims(); ++i) {
    std::optional<int> coord;
    if (containing) coord = (*containing)[i];
    c *= static_cast<Index>(axis_intervals(family, lat.extent(i), coord).size());
  }
  return c;
}

/// Materialized family, duplicate-free, in canonical lo-major order.
inline std::vector<Rect> enumerate_rects(const Lattice& lat, RectFamily family,
                                         std::optional<ArrayXi> containing = std::nullopt) {
  std::vector<Rect> out;
  out.reserve(static_cast<std::size_t>(count_rects(lat, family, containing)));
  std::vector<std::optional<int>> fixed(lat.dims());
  if (containing) {
    if (!lat.contains(*containing))
      throw std::invalid_argument("enumerate_rects: containing point outside lattice");
    for (int i = 0; i < lat.dims(); ++i) fixed[i] = (*containing)[i];
  }
  for_each_rect(lat, family, fixed, [&](const Rect& r) { out.push_back(r); });
  return out;
}

/// All is affordable only on small low-dimensional grids.
inline RectFamily default_family(const Lattice& lat) {
  if (lat.dims() <= 2 && lat.extents().maxCoeff() <= 32) return RectFamily::All;
  return RectFamily::DyadicSides;
}

}  // namespace maxrect
