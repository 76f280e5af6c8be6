#pragma once

#include "maxrect/core.hpp"

namespace maxrect {

/// N-dimensional prefix sums on a padded (extent+1 per axis) grid:
/// prefix[z] = sum of f(y) over all y with y_i < z_i on every axis.
/// A rectangle sum is then a 2^N-term inclusion-exclusion query.
template <class Scalar = double>
struct SummedTable {
  Lattice lattice;
  ArrayX<Scalar> prefix;
  ArrayXidx pstrides;

  Index pindex(const ArrayXi& z) const {
    Index f = 0;
    for (int i = 0; i < static_cast<int>(z.size()); ++i) f += pstrides[i] * z[i];
    return f;
  }
};

template <class Scalar>
SummedTable<Scalar> build_summed_table(const GridFunction<Scalar>& f) {
  const Lattice& lat = f.lattice;
  const int n = lat.dims();
  const ArrayXi padded = lat.extents() + 1;

  ArrayXidx pstrides(n);
  pstrides[n - 1] = 1;
  for (int i = n - 2; i >= 0; --i) pstrides[i] = pstrides[i + 1] * padded[i + 1];
  const Index psize = pstrides[0] * padded[0];

  ArrayX<Scalar> prefix = ArrayX<Scalar>::Zero(psize);

  // Scatter f into the interior (offset 1 on every axis), then run one
  // in-place prefix sweep per axis.
  {
    ArrayXi p = ArrayXi::Zero(n);
    for (Index flat = 0; flat < lat.num_points(); ++flat) {
      Index pi = 0;
      for (int i = 0; i < n; ++i) pi += pstrides[i] * (p[i] + 1);
      prefix[pi] = f.values[flat];
      for (int ax = n - 1; ax >= 0; --ax) {
        if (++p[ax] < lat.extent(ax)) break;
        p[ax] = 0;
      }
    }
  }
  for (int ax = 0; ax < n; ++ax) {
    ArrayXi z = ArrayXi::Zero(n);
    for (Index flat = 0; flat < psize; ++flat) {
      if (z[ax] >= 1) prefix[flat] += prefix[flat - pstrides[ax]];
      for (int i = n - 1; i >= 0; --i) {
        if (++z[i] < padded[i]) break;
        z[i] = 0;
      }
    }
  }
  return SummedTable<Scalar>{lat, std::move(prefix), std::move(pstrides)};
}

/// Rectangle sum via inclusion-exclusion over the 2^N corners of r.
template <class Scalar>
Scalar rect_sum(const SummedTable<Scalar>& t, const Rect& r) {
  const int n = static_cast<int>(r.lo.size());
  Scalar s = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Index pi = 0;
    int bits = 0;
    for (int i = 0; i < n; ++i) {
      const bool take_lo = (mask >> i) & 1u;
      bits += take_lo;
      pi += t.pstrides[i] * (take_lo ? r.lo[i] : r.hi[i]);
    }
    s += (bits % 2 == 0) ? t.prefix[pi] : -t.prefix[pi];
  }
  return s;
}

/// Direct loop over the cells of r; the independent reference for rect_sum.
template <class Scalar>
Scalar rect_sum_bruteforce(const GridFunction<Scalar>& f, const Rect& r) {
  Scalar s = 0;
  for_each_cell(f.lattice, r, [&](Index i) { s += f.values[i]; });
  return s;
}

}  // namespace maxrect
