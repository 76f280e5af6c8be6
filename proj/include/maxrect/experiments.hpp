#pragma once

#include "maxrect/covering.hpp"
#include "maxrect/maximal.hpp"
#include "maxrect/random.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace maxrect {

/// An exact internal consistency check did not hold; always a bug, never
/// recoverable input trouble.
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Geometric grid of count positive thresholds from lo to hi inclusive.
inline std::vector<double> geometric_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi >= lo) || count < 1)
    throw std::invalid_argument("geometric_grid: need 0 < lo <= hi and count >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    out.push_back(lo);
    return out;
  }
  const double ratio = hi / lo;
  for (int i = 0; i < count; ++i)
    out.push_back(lo * std::pow(ratio, static_cast<double>(i) / (count - 1)));
  return out;
}

enum class WitnessOrder { Given, VolumeDesc };

inline std::string to_string(WitnessOrder o) {
  return o == WitnessOrder::Given ? "given" : "volume-desc";
}

/// One threshold of the sweep. score = lambda * vol_U^(1/q) / ||f||_p; the
/// remaining columns replay the covering-side quantities behind the bound:
/// union volumes of the selected witnesses, the sum of each selected
/// rectangle's own sheared integral, and the coverage norm at the dual
/// exponent p/(p-1).
struct WeaktypeRow {
  double lambda = 0.0;
  double vol_U = 0.0;
  double score = 0.0;
  bool empty = true;
  Index n_witness = 0;
  Index n_selected = 0;
  double vol_union_all = 0.0;
  double vol_union_selected = 0.0;
  double sum_selected_integrals = 0.0;
  double overlap_norm_dual = 0.0;
};

struct WeaktypeResult {
  std::vector<WeaktypeRow> rows;
  double field_max = 0.0;
  double f_norm_p = 0.0;
};

template <class Scalar>
double sheared_rect_integral(const GridFunction<Scalar>& f, const ShearMap& rho, const ArrayXi& x,
                             const Rect& r, Boundary boundary) {
  double s = 0.0;
  const int n = f.lattice.dims();
  ArrayXi y = r.lo;
  for (;;) {
    s += static_cast<double>(sheared_sample(f, rho, x, y, boundary));
    int ax = n - 1;
    for (; ax >= 0; --ax) {
      if (++y[ax] < r.hi[ax]) break;
      y[ax] = r.lo[ax];
    }
    if (ax < 0) break;
  }
  return s;
}

/// Sweep over a precomputed field (must carry witnesses): per threshold the
/// level set, its witness cover (inclusion checked cell by cell), the greedy
/// selection with all three selection checks, and the diagnostic columns.
template <class Scalar>
WeaktypeResult weaktype_sweep(const FieldResult<Scalar>& fr, const GridFunction<Scalar>& f,
                              const ShearMap& rho, const FracExponents& exps,
                              const std::vector<double>& lambdas, WitnessOrder order,
                              Boundary boundary = Boundary::Torus) {
  const Lattice& lat = f.lattice;

  WeaktypeResult res;
  res.field_max = fr.field.values.size() ? fr.field.values.maxCoeff() : 0.0;
  res.f_norm_p = lp_norm(f, exps.p);

  for (double lambda : lambdas) {
    WeaktypeRow row;
    row.lambda = lambda;
    const LevelSet U = superlevel(fr.field, lambda);
    row.vol_U = U.volume;
    row.score = lambda * std::pow(U.volume, 1.0 / exps.q) / res.f_norm_p;
    row.empty = U.points.empty();
    if (!row.empty) {
      std::vector<PointWitness> wits = witness_rectangles(fr, U);
      row.n_witness = static_cast<Index>(wits.size());

      // Cover inclusion: every superlevel cell must lie in some witness.
      Eigen::ArrayX<bool> covered = Eigen::ArrayX<bool>::Constant(lat.num_points(), false);
      for (const PointWitness& w : wits)
        for_each_cell(lat, w.rect, [&](Index c) { covered[c] = true; });
      for (Index p : U.points)
        if (!covered[p])
          throw VerificationError("weaktype_sweep: superlevel point not covered by witnesses");

      if (order == WitnessOrder::VolumeDesc)
        std::stable_sort(wits.begin(), wits.end(), [](const PointWitness& a, const PointWitness& b) {
          return volume_cells(a.rect) > volume_cells(b.rect);
        });

      std::vector<Rect> rects;
      rects.reserve(wits.size());
      for (const PointWitness& w : wits) rects.push_back(w.rect);
      const CoveringResult sel = covering_select(rects, lat);
      for (const CheckReport& rep :
           {verify_halfoverlap(sel), verify_rejected(sel), verify_halfmax(sel)})
        if (!rep.pass) throw VerificationError("weaktype_sweep: selection check failed: " + rep.detail);

      const UnionVolumes uv = union_volumes(sel);
      row.n_selected = static_cast<Index>(sel.selected.size());
      row.vol_union_all = uv.vol_all;
      row.vol_union_selected = uv.vol_selected;
      for (int k : sel.selected) {
        const PointWitness& w = wits[static_cast<std::size_t>(k)];
        ArrayXi x = lat.point(w.point);
        row.sum_selected_integrals += sheared_rect_integral(f, rho, x, w.rect, boundary);
      }
      row.overlap_norm_dual = overlap_lp(sel, exps.p / (exps.p - 1.0)).norm;
    }
    res.rows.push_back(row);
  }
  return res;
}

/// Convenience form computing the field itself.
template <class Scalar>
WeaktypeResult weaktype_sweep(const GridFunction<Scalar>& f, const ShearMap& rho,
                              const FracExponents& exps, RectFamily family,
                              const std::vector<double>& lambdas, WitnessOrder order,
                              FieldOptions fopts = {}) {
  fopts.witnesses = true;
  const FieldResult<Scalar> fr = frac_max_field_result(f, rho, exps.alpha, family, fopts);
  return weaktype_sweep(fr, f, rho, exps, lambdas, order, fopts.boundary);
}

struct ScalingRow {
  int side = 0;
  double field_norm_q = 0.0;
  double f_norm_p = 0.0;
  double ratio = 0.0;
};

/// ||M^alpha chi_Q||_q / ||chi_Q||_p for centered cubes Q of the listed
/// sides; with alpha = 1/p - 1/q the ratio should be roughly side-free.
inline std::vector<ScalingRow> scaling_run(const Lattice& lat, const ShearMap& rho,
                                           const FracExponents& exps, RectFamily family,
                                           const std::vector<int>& sides,
                                           FieldOptions fopts = {}) {
  std::vector<ScalingRow> rows;
  for (int side : sides) {
    const GridFunction<double> f = cube_indicator(lat, side);
    const MaximalField<double> field = frac_max_field(f, rho, exps, family, fopts);
    ScalingRow row;
    row.side = side;
    row.field_norm_q = lp_norm(field.as_grid(), exps.q);
    row.f_norm_p = lp_norm(f, exps.p);
    row.ratio = row.field_norm_q / row.f_norm_p;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace maxrect
