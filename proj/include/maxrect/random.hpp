#pragma once

#include "maxrect/core.hpp"
#include "maxrect/rng.hpp"
#include "maxrect/shear.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace maxrect {

/// Uniform [0,1) samples, one per cell.
inline GridFunction<double> random_grid(const Lattice& lat, Rng& rng) {
  Eigen::ArrayXd v(lat.num_points());
  for (Index i = 0; i < v.size(); ++i) v[i] = rng.uniform();
  return GridFunction<double>(lat, std::move(v));
}

/// 0/1 samples with the given density; at least one cell is set.
inline GridFunction<double> random_sparse_indicator(const Lattice& lat, Rng& rng,
                                                    double density) {
  Eigen::ArrayXd v(lat.num_points());
  for (Index i = 0; i < v.size(); ++i) v[i] = rng.uniform() < density ? 1.0 : 0.0;
  if ((v == 0.0).all()) v[rng.uniform_int(lat.num_points())] = 1.0;
  return GridFunction<double>(lat, std::move(v));
}

/// Cube of the given side, centered (rounded toward the origin).
inline Rect centered_cube(const Lattice& lat, int side) {
  if (side < 1 || side > lat.extents().minCoeff())
    throw std::invalid_argument("centered_cube: side does not fit the lattice");
  ArrayXi lo(lat.dims()), hi(lat.dims());
  for (int i = 0; i < lat.dims(); ++i) {
    lo[i] = (lat.extent(i) - side) / 2;
    hi[i] = lo[i] + side;
  }
  return make_rect(lat, lo, hi);
}

inline GridFunction<double> cube_indicator(const Lattice& lat, int side) {
  return GridFunction<double>::indicator(lat, centered_cube(lat, side));
}

/// One random valid rectangle.
inline Rect random_rect(const Lattice& lat, Rng& rng) {
  const int n = lat.dims();
  ArrayXi lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    lo[i] = static_cast<int>(rng.uniform_int(lat.extent(i)));
    hi[i] = lo[i] + 1 + static_cast<int>(rng.uniform_int(lat.extent(i) - lo[i]));
  }
  return Rect{std::move(lo), std::move(hi)};
}

/// Random family with side lengths up to half the extent. The underlying
/// draws are uniform reals mapped through the extents, so regenerating with
/// the same seed on a uniformly scaled lattice yields a near-dilation of the
/// family (each side off by at most one cell from exact scaling).
inline std::vector<Rect> random_rect_family(const Lattice& lat, int count, Rng& rng) {
  std::vector<Rect> out;
  out.reserve(static_cast<std::size_t>(count));
  const int n = lat.dims();
  for (int k = 0; k < count; ++k) {
    ArrayXi lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
      const int e = lat.extent(i);
      const double u = rng.uniform();
      const double v = rng.uniform();
      int len = static_cast<int>(std::floor(u * (e / 2.0)));
      len = std::clamp(len, 1, e);
      int a = static_cast<int>(std::floor(v * (e - len + 1)));
      a = std::clamp(a, 0, e - len);
      lo[i] = a;
      hi[i] = a + len;
    }
    out.push_back(Rect{std::move(lo), std::move(hi)});
  }
  return out;
}

/// Random triangular bilinear shear with small integer coefficients (so all
/// shifts are exact); at least one coefficient is nonzero.
inline ShearMap random_bilinear_shear(int dims, Rng& rng, int coeff_max = 3) {
  std::vector<BilinearTriple> triples;
  bool any_nonzero = false;
  for (int i = 0; i + 1 < dims; ++i)
    for (int j = i + 1; j < dims; ++j)
      for (int k = i + 1; k < dims; ++k) {
        const int c =
            static_cast<int>(rng.uniform_int(2 * coeff_max + 1)) - coeff_max;
        if (c != 0) {
          triples.push_back({i, j, k, static_cast<double>(c)});
          any_nonzero = true;
        }
      }
  if (!any_nonzero && dims >= 2) triples.push_back({0, dims - 1, dims - 1, 1.0});
  return ShearMap::bilinear(dims, triples, "random-bilinear");
}

}  // namespace maxrect
