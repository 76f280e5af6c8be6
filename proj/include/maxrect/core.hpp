#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>

namespace maxrect {

using Index = std::int64_t;

template <class Scalar>
using ArrayX = Eigen::ArrayX<Scalar>;

using Eigen::ArrayXi;
using ArrayXidx = Eigen::Array<Index, Eigen::Dynamic, 1>;

/// Finite integer lattice: N axes, extents[i] points along axis i.
/// A lattice point y stands for the unit cell [y, y+1)^N, so every
/// integral over the domain is a plain sum of cell values.
class Lattice {
 public:
  static constexpr double cell_volume = 1.0;

  explicit Lattice(ArrayXi extents) : extents_(std::move(extents)) {
    if (extents_.size() < 1) throw std::invalid_argument("Lattice: need at least one axis");
    if ((extents_ < 1).any()) throw std::invalid_argument("Lattice: every extent must be >= 1");
    const int n = static_cast<int>(extents_.size());
    strides_.resize(n);
    strides_[n - 1] = 1;
    for (int i = n - 2; i >= 0; --i) strides_[i] = strides_[i + 1] * extents_[i + 1];
    num_points_ = strides_[0] * extents_[0];
  }

  Lattice(std::initializer_list<int> extents)
      : Lattice(Eigen::Map<const ArrayXi>(std::data(extents),
                                          static_cast<Eigen::Index>(extents.size()))
                    .eval()) {}

  int dims() const { return static_cast<int>(extents_.size()); }
  const ArrayXi& extents() const { return extents_; }
  int extent(int axis) const { return extents_[axis]; }
  Index num_points() const { return num_points_; }
  Index stride(int axis) const { return strides_[axis]; }

  /// Row-major flat index of a lattice point.
  Index flat(const ArrayXi& p) const {
    Index f = 0;
    for (int i = 0; i < dims(); ++i) f += strides_[i] * p[i];
    return f;
  }

  ArrayXi point(Index flat) const {
    ArrayXi p(dims());
    for (int i = 0; i < dims(); ++i) {
      p[i] = static_cast<int>(flat / strides_[i]);
      flat -= p[i] * strides_[i];
    }
    return p;
  }

  bool contains(const ArrayXi& p) const {
    return p.size() == extents_.size() && (p >= 0).all() && (p < extents_).all();
  }

  bool operator==(const Lattice& o) const {
    return extents_.size() == o.extents_.size() && (extents_ == o.extents_).all();
  }

 private:
  ArrayXi extents_;
  ArrayXidx strides_;
  Index num_points_ = 0;
};

/// Axis-parallel half-open integer box prod_i [lo_i, hi_i).
struct Rect {
  ArrayXi lo;
  ArrayXi hi;
};

inline bool operator==(const Rect& a, const Rect& b) {
  return a.lo.size() == b.lo.size() && (a.lo == b.lo).all() && (a.hi == b.hi).all();
}

inline bool is_valid(const Lattice& lat, const Rect& r) {
  return r.lo.size() == lat.extents().size() && r.hi.size() == lat.extents().size() &&
         (r.lo >= 0).all() && (r.lo < r.hi).all() && (r.hi <= lat.extents()).all();
}

/// Validating constructor; rectangles never wrap and are never empty.
inline Rect make_rect(const Lattice& lat, ArrayXi lo, ArrayXi hi) {
  Rect r{std::move(lo), std::move(hi)};
  if (!is_valid(lat, r)) throw std::invalid_argument("make_rect: invalid rectangle for lattice");
  return r;
}

inline Rect make_rect(const Lattice& lat, std::initializer_list<int> lo,
                      std::initializer_list<int> hi) {
  return make_rect(lat,
                   Eigen::Map<const ArrayXi>(std::data(lo), static_cast<Eigen::Index>(lo.size())),
                   Eigen::Map<const ArrayXi>(std::data(hi), static_cast<Eigen::Index>(hi.size())));
}

inline Index volume_cells(const Rect& r) {
  return (r.hi - r.lo).cast<Index>().prod();
}

/// Volume in cell-volume units.
inline double volume(const Rect& r) {
  return static_cast<double>(volume_cells(r)) * Lattice::cell_volume;
}

inline bool contains(const Rect& r, const ArrayXi& p) {
  return (p >= r.lo).all() && (p < r.hi).all();
}

/// Visits the flat index of every cell of r in row-major order.
template <class F>
void for_each_cell(const Lattice& lat, const Rect& r, F&& fn) {
  const int n = lat.dims();
  ArrayXi p = r.lo;
  Index flat = lat.flat(p);
  for (;;) {
    fn(flat);
    int ax = n - 1;
    for (; ax >= 0; --ax) {
      ++p[ax];
      flat += lat.stride(ax);
      if (p[ax] < r.hi[ax]) break;
      flat -= static_cast<Index>(p[ax] - r.lo[ax]) * lat.stride(ax);
      p[ax] = r.lo[ax];
    }
    if (ax < 0) return;
  }
}

/// Nonnegative samples on a lattice, one value per point, row-major.
template <class Scalar = double>
struct GridFunction {
  Lattice lattice;
  ArrayX<Scalar> values;

  GridFunction(Lattice lat, ArrayX<Scalar> vals)
      : lattice(std::move(lat)), values(std::move(vals)) {
    if (values.size() != lattice.num_points())
      throw std::invalid_argument("GridFunction: value count does not match lattice");
    if ((values < Scalar(0)).any())
      throw std::invalid_argument("GridFunction: values must be nonnegative");
  }

  static GridFunction constant(const Lattice& lat, Scalar c) {
    return GridFunction(lat, ArrayX<Scalar>::Constant(lat.num_points(), c));
  }

  /// Indicator of a rectangle.
  static GridFunction indicator(const Lattice& lat, const Rect& r) {
    ArrayX<Scalar> v = ArrayX<Scalar>::Zero(lat.num_points());
    for_each_cell(lat, r, [&](Index i) { v[i] = Scalar(1); });
    return GridFunction(lat, std::move(v));
  }

  Scalar operator[](Index flat) const { return values[flat]; }
  Scalar operator()(const ArrayXi& p) const { return values[lattice.flat(p)]; }
};

/// (sum_y f(y)^p * cell_volume)^(1/p), p finite and > 0.
template <class Scalar>
double lp_norm(const GridFunction<Scalar>& f, double p) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw std::invalid_argument("lp_norm: p must be finite and > 0");
  const double s =
      (f.values.template cast<double>().pow(p)).sum() * Lattice::cell_volume;
  return std::pow(s, 1.0 / p);
}

/// |a - b| <= tol * (1 + |ref|); the comparison used by all oracle checks.
inline bool approx_rel(double a, double b, double tol = 1e-12) {
  return std::abs(a - b) <= tol * (1.0 + std::abs(b));
}

}  // namespace maxrect
