#pragma once

#include "maxrect/core.hpp"
#include "maxrect/families.hpp"
#include "maxrect/parallel.hpp"
#include "maxrect/shear.hpp"
#include "maxrect/summed_table.hpp"

#include <optional>
#include <string>
#include <vector>

namespace maxrect {

/// Exponent triple: alpha = 1/p - 1/q with 1 < p <= q < inf, 0 <= alpha < 1.
struct FracExponents {
  double p;
  double q;
  double alpha;

  static FracExponents make(double p, double q, double alpha) {
    if (!(std::isfinite(p) && std::isfinite(q)) || !(1.0 < p) || !(p <= q))
      throw std::invalid_argument("FracExponents: need 1 < p <= q < inf");
    if (std::abs(alpha - (1.0 / p - 1.0 / q)) > 1e-12)
      throw std::invalid_argument("FracExponents: alpha must equal 1/p - 1/q");
    if (!(0.0 <= alpha && alpha < 1.0))
      throw std::invalid_argument("FracExponents: alpha must lie in [0, 1)");
    return FracExponents{p, q, alpha};
  }

  static FracExponents from_pq(double p, double q) { return make(p, q, 1.0 / p - 1.0 / q); }

  static FracExponents from_p_alpha(double p, double alpha) {
    const double inv_q = 1.0 / p - alpha;
    if (!(inv_q > 0.0))
      throw std::invalid_argument("FracExponents: alpha too large for this p (q would be infinite)");
    return make(p, 1.0 / inv_q, alpha);
  }

  static FracExponents from_q_alpha(double q, double alpha) {
    const double inv_p = 1.0 / q + alpha;
    if (!(inv_p < 1.0))
      throw std::invalid_argument("FracExponents: alpha too large for this q (p would hit 1)");
    return make(1.0 / inv_p, q, alpha);
  }

  /// alpha = 0, q = p: the plain strong operator's exponents.
  static FracExponents strong(double p) { return make(p, p, 0.0); }
};

struct FieldMeta {
  double alpha = 0.0;
  std::string shear = "zero";
  RectFamily family = RectFamily::All;
};

/// x -> max over family rectangles R containing x of vol(R)^(alpha-1) times
/// the (sheared) sum of f over R.
template <class Scalar = double>
struct MaximalField {
  Lattice lattice;
  ArrayX<Scalar> values;
  FieldMeta meta;

  GridFunction<Scalar> as_grid() const { return GridFunction<Scalar>(lattice, values); }
};

struct FieldOptions {
  Boundary boundary = Boundary::Torus;
  bool witnesses = false;
  int threads = 0;  // 0 = auto (capped by MAXRECT_THREADS)
};

/// Field plus, when requested, the rectangle attaining the max at each point.
template <class Scalar = double>
struct FieldResult {
  MaximalField<Scalar> field;
  std::vector<Rect> argmax;  // empty unless FieldOptions::witnesses
};

/// Core evaluator. Points are grouped by their tail (x_2..x_N): the shifts
/// never depend on x_1, so one sheared prefix table per tail serves every
/// x_1 on that slice. Rectangles are then walked once per tail, pushing
/// their value into a running max at all covered x_1.
template <class Scalar>
FieldResult<Scalar> frac_max_field_result(const GridFunction<Scalar>& f, const ShearMap& rho,
                                          double alpha, RectFamily family,
                                          FieldOptions opts = {}) {
  const Lattice& lat = f.lattice;
  const int n = lat.dims();
  if (rho.dims() != n) throw std::invalid_argument("frac_max_field: shear dimension mismatch");
  if (!(0.0 <= alpha && alpha < 1.0))
    throw std::invalid_argument("frac_max_field: alpha must lie in [0, 1)");

  FieldResult<Scalar> out{MaximalField<Scalar>{lat, ArrayX<Scalar>::Zero(lat.num_points()),
                                               FieldMeta{alpha, rho.label(), family}},
                          {}};
  if (opts.witnesses) out.argmax.resize(static_cast<std::size_t>(lat.num_points()));

  Index tails = 1;
  for (int i = 1; i < n; ++i) tails *= lat.extent(i);

  std::optional<SummedTable<Scalar>> shared;
  if (rho.is_zero()) shared.emplace(build_summed_table(f));

  parallel_chunks(tails, opts.threads, [&](Index tail_begin, Index tail_end) {
    ArrayXi x = ArrayXi::Zero(n);
    ArrayXi y(n);
    std::vector<std::optional<int>> fixed(n);
    for (Index tail = tail_begin; tail < tail_end; ++tail) {
      Index rem = tail;
      for (int i = n - 1; i >= 1; --i) {
        x[i] = static_cast<int>(rem % lat.extent(i));
        rem /= lat.extent(i);
      }
      Index tail_offset = 0;
      for (int i = 1; i < n; ++i) tail_offset += lat.stride(i) * x[i];
      for (int i = 1; i < n; ++i) fixed[i] = x[i];

      std::optional<SummedTable<Scalar>> local;
      if (!shared) {
        ArrayX<Scalar> g(lat.num_points());
        y.setZero();
        for (Index flat = 0; flat < lat.num_points(); ++flat) {
          g[flat] = sheared_sample(f, rho, x, y, opts.boundary);
          for (int ax = n - 1; ax >= 0; --ax) {
            if (++y[ax] < lat.extent(ax)) break;
            y[ax] = 0;
          }
        }
        local.emplace(build_summed_table(GridFunction<Scalar>(lat, std::move(g))));
      }
      const SummedTable<Scalar>& table = shared ? *shared : *local;

      const Index stride0 = lat.stride(0);
      for_each_rect(lat, family, fixed, [&](const Rect& r) {
        const Scalar s = rect_sum(table, r);
        const Scalar v = static_cast<Scalar>(std::pow(volume(r), alpha - 1.0) * s);
        Index idx = tail_offset + stride0 * r.lo[0];
        for (int x0 = r.lo[0]; x0 < r.hi[0]; ++x0, idx += stride0) {
          if (v > out.field.values[idx]) {
            out.field.values[idx] = v;
            if (opts.witnesses) out.argmax[static_cast<std::size_t>(idx)] = r;
          }
        }
      });
    }
  });
  return out;
}

template <class Scalar>
MaximalField<Scalar> frac_max_field(const GridFunction<Scalar>& f, const ShearMap& rho,
                                    const FracExponents& exps, RectFamily family,
                                    FieldOptions opts = {}) {
  return frac_max_field_result(f, rho, exps.alpha, family, opts).field;
}

template <class Scalar>
MaximalField<Scalar> strong_max_field(const GridFunction<Scalar>& f, RectFamily family,
                                      FieldOptions opts = {}) {
  return frac_max_field_result(f, zero_shear(f.lattice.dims()), 0.0, family, opts).field;
}

/// Per-point reference evaluator: for every point, every family rectangle
/// containing it is re-summed directly through sheared_sample. No prefix
/// tables, no tail grouping; this is the oracle the fast path is checked
/// against.
template <class Scalar>
MaximalField<Scalar> naive_frac_max_field(const GridFunction<Scalar>& f, const ShearMap& rho,
                                          double alpha, RectFamily family,
                                          Boundary boundary = Boundary::Torus) {
  const Lattice& lat = f.lattice;
  const int n = lat.dims();
  if (rho.dims() != n) throw std::invalid_argument("naive_frac_max_field: dimension mismatch");
  ArrayX<Scalar> vals(lat.num_points());
  ArrayXi x = ArrayXi::Zero(n);
  for (Index flat = 0; flat < lat.num_points(); ++flat) {
    Scalar best = 0;
    for_each_rect_containing(lat, family, x, [&](const Rect& r) {
      Scalar s = 0;
      ArrayXi y = r.lo;
      for (;;) {
        s += sheared_sample(f, rho, x, y, boundary);
        int ax = n - 1;
        for (; ax >= 0; --ax) {
          if (++y[ax] < r.hi[ax]) break;
          y[ax] = r.lo[ax];
        }
        if (ax < 0) break;
      }
      const Scalar v = static_cast<Scalar>(std::pow(volume(r), alpha - 1.0) * s);
      if (v > best) best = v;
    });
    vals[flat] = best;
    for (int ax = n - 1; ax >= 0; --ax) {
      if (++x[ax] < lat.extent(ax)) break;
      x[ax] = 0;
    }
  }
  return MaximalField<Scalar>{lat, std::move(vals), FieldMeta{alpha, rho.label(), family}};
}

/// Superlevel set {x : field(x) > lambda}, strict inequality.
struct LevelSet {
  double lambda = 0.0;
  std::vector<Index> points;
  double volume = 0.0;
};

template <class Scalar>
LevelSet superlevel(const MaximalField<Scalar>& field, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("superlevel: lambda must be > 0");
  LevelSet ls;
  ls.lambda = lambda;
  for (Index i = 0; i < field.values.size(); ++i)
    if (field.values[i] > lambda) ls.points.push_back(i);
  ls.volume = static_cast<double>(ls.points.size()) * Lattice::cell_volume;
  return ls;
}

struct PointWitness {
  Index point;
  Rect rect;
};

/// One rectangle per superlevel point whose value exceeds lambda. Throws if
/// some superlevel point has no such rectangle recorded — impossible when
/// level set and witnesses come from the same field computation, so it
/// signals a family mismatch between the two.
template <class Scalar>
std::vector<PointWitness> witness_rectangles(const FieldResult<Scalar>& fr, const LevelSet& U) {
  if (fr.argmax.empty())
    throw std::invalid_argument("witness_rectangles: field was computed without witnesses");
  std::vector<PointWitness> out;
  out.reserve(U.points.size());
  for (Index p : U.points) {
    if (!(fr.field.values[p] > U.lambda))
      throw std::logic_error(
          "witness_rectangles: no rectangle exceeds lambda at a superlevel point "
          "(level set and witnesses come from different families?)");
    out.push_back(PointWitness{p, fr.argmax[static_cast<std::size_t>(p)]});
  }
  return out;
}

template <class Scalar>
std::vector<PointWitness> witness_rectangles(const GridFunction<Scalar>& f, const ShearMap& rho,
                                             const FracExponents& exps, RectFamily family,
                                             double lambda, FieldOptions opts = {}) {
  opts.witnesses = true;
  const FieldResult<Scalar> fr = frac_max_field_result(f, rho, exps.alpha, family, opts);
  return witness_rectangles(fr, superlevel(fr.field, lambda));
}

}  // namespace maxrect
