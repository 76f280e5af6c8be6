#pragma once

#include "maxrect/covering.hpp"
#include "maxrect/experiments.hpp"
#include "maxrect/io.hpp"
#include "maxrect/maximal.hpp"
#include "maxrect/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace maxrect {

/// Injectable implementation faults for mutation testing: the suite must go
/// red when either one is active.
enum class Fault { None, TieStrict, ShearNoWrap };

inline std::optional<Fault> parse_fault(std::string_view s) {
  if (s == "none") return Fault::None;
  if (s == "tie-strict") return Fault::TieStrict;
  if (s == "shear-no-wrap") return Fault::ShearNoWrap;
  return std::nullopt;
}

struct VerifyOptions {
  std::uint64_t seed = 20260810;
  int size2 = 8;  // per-axis extent of the 2D instances
  int size3 = 5;  // per-axis extent of the 3D instances
  int trials = 30;
  Fault fault = Fault::None;
};

struct VerifySummary {
  int passed = 0;
  int failed = 0;
  bool ok() const { return failed == 0; }
};

namespace detail {

inline CheckReport fail_report(const std::string& s) { return CheckReport{false, s}; }

inline bool rects_subset(const std::vector<Rect>& small, const std::vector<Rect>& big) {
  for (const Rect& r : small)
    if (std::none_of(big.begin(), big.end(), [&](const Rect& s) { return s == r; })) return false;
  return true;
}

}  // namespace detail

/// Runs the whole invariant suite at the configured sizes, one line per
/// check. Returns the pass/fail tally.
inline VerifySummary run_verify(const VerifyOptions& opts, std::ostream& os) {
  VerifySummary summary;
  auto check = [&](const std::string& name, const std::function<CheckReport()>& fn) {
    CheckReport rep;
    try {
      rep = fn();
    } catch (const std::exception& e) {
      rep = {false, std::string("exception: ") + e.what()};
    }
    if (rep.pass) {
      ++summary.passed;
      os << "[PASS] " << name << "\n";
    } else {
      ++summary.failed;
      os << "[FAIL] " << name << ": " << rep.detail << "\n";
    }
  };

  const Boundary shear_boundary =
      opts.fault == Fault::ShearNoWrap ? Boundary::Zero : Boundary::Torus;
  const TieRule tie_rule =
      opts.fault == Fault::TieStrict ? TieRule::StrictLess : TieRule::AcceptTies;

  // ---- lattice core ----

  check("core.rect-sum.oracle", [&] {
    Rng rng(opts.seed + 1);
    for (const Lattice& lat : {Lattice{37}, Lattice{13, 9}, Lattice{5, 5, 5}}) {
      const GridFunction<double> f = random_grid(lat, rng);
      const SummedTable<double> t = build_summed_table(f);
      if (!approx_rel(t.prefix[t.prefix.size() - 1], f.values.sum()))
        return detail::fail_report("full-domain prefix differs from plain sum");
      for (int i = 0; i < 100; ++i) {
        const Rect r = random_rect(lat, rng);
        const double a = rect_sum(t, r);
        const double b = rect_sum_bruteforce(f, r);
        if (!approx_rel(a, b)) {
          std::ostringstream s;
          s << "rect_sum " << a << " vs bruteforce " << b;
          return detail::fail_report(s.str());
        }
      }
    }
    return CheckReport{};
  });

  check("core.rect-sum.additivity", [&] {
    Rng rng(opts.seed + 2);
    for (const Lattice& lat : {Lattice{13, 9}, Lattice{5, 5, 5}}) {
      const GridFunction<double> f = random_grid(lat, rng);
      const SummedTable<double> t = build_summed_table(f);
      for (int i = 0; i < 100; ++i) {
        Rect r = random_rect(lat, rng);
        std::vector<int> wide;
        for (int ax = 0; ax < lat.dims(); ++ax)
          if (r.hi[ax] - r.lo[ax] >= 2) wide.push_back(ax);
        if (wide.empty()) continue;
        const int ax = wide[static_cast<std::size_t>(rng.uniform_int(wide.size()))];
        const int cut =
            r.lo[ax] + 1 + static_cast<int>(rng.uniform_int(r.hi[ax] - r.lo[ax] - 1));
        Rect left = r, right = r;
        left.hi[ax] = cut;
        right.lo[ax] = cut;
        if (!approx_rel(rect_sum(t, left) + rect_sum(t, right), rect_sum(t, r)))
          return detail::fail_report("split parts do not add up");
      }
    }
    return CheckReport{};
  });

  check("core.enumeration.counts", [&] {
    for (int n = 1; n <= 10; ++n) {
      const Index expect = Index(n) * (n + 1) / 2;
      if (count_rects(Lattice{n}, RectFamily::All) != expect)
        return detail::fail_report("1D all-count != n(n+1)/2 at n=" + std::to_string(n));
    }
    if (count_rects(Lattice{4, 7}, RectFamily::All) != 10 * 28)
      return detail::fail_report("2D count is not the product of axis counts");
    if (count_rects(Lattice{4}, RectFamily::DyadicSides) != 8)
      return detail::fail_report("dyadic-sides extent-4 count != 8");
    if (count_rects(Lattice{4}, RectFamily::Dyadic) != 7)
      return detail::fail_report("dyadic extent-4 count != 7");
    const Lattice l22{2, 2};
    ArrayXi origin = ArrayXi::Zero(2);
    if (enumerate_rects(l22, RectFamily::All, origin).size() != 4)
      return detail::fail_report("2x2 rectangles containing the origin != 4");
    return CheckReport{};
  });

  check("core.family.inclusion", [&] {
    for (const Lattice& lat : {Lattice{6}, Lattice{8}, Lattice{4, 6}}) {
      const auto all = enumerate_rects(lat, RectFamily::All);
      const auto ds = enumerate_rects(lat, RectFamily::DyadicSides);
      const auto dy = enumerate_rects(lat, RectFamily::Dyadic);
      if (!detail::rects_subset(dy, ds) || !detail::rects_subset(ds, all))
        return detail::fail_report("family inclusion chain broken");
    }
    return CheckReport{};
  });

  // ---- shear ----

  check("shear.triangular.builtins", [&] {
    Rng rng(opts.seed + 3);
    const Lattice l3{4, 4, 4};
    for (const ShearMap& m :
         {zero_shear(3), heisenberg_shear(1.5), translation_shear(3, {2, 1})}) {
      const TriangularReport rep = verify_triangular(m, l3, 200, rng);
      if (!rep.pass) return detail::fail_report(m.label() + ": " + rep.detail);
    }
    const Lattice l4{3, 3, 3, 3};
    for (int i = 0; i < 5; ++i) {
      const ShearMap m = random_bilinear_shear(4, rng);
      const TriangularReport rep = verify_triangular(m, l4, 100, rng);
      if (!rep.pass) return detail::fail_report(rep.detail);
    }
    return CheckReport{};
  });

  check("shear.triangular.detects-violation", [&] {
    Rng rng(opts.seed + 4);
    const ShearMap bad = ShearMap::custom(
        3,
        {[](const int* y, const int*) { return static_cast<double>(y[0]); },
         [](const int*, const int*) { return 0.0; }},
        "adversarial");
    const TriangularReport rep = verify_triangular(bad, Lattice{4, 4, 4}, 200, rng);
    if (rep.pass) return detail::fail_report("probe failed to expose a y_1-dependent component");
    if (rep.component != 0) return detail::fail_report("violation blamed on the wrong component");
    return CheckReport{};
  });

  check("shear.permutation", [&] {
    Rng rng(opts.seed + 5);
    for (const Lattice& lat : {Lattice{8, 8, 8}, Lattice{4, 4, 4, 4}}) {
      const int n = lat.dims();
      for (int s = 0; s < 3; ++s) {
        const ShearMap rho = random_bilinear_shear(n, rng);
        ArrayXi x(n);
        for (int i = 0; i < n; ++i) x[i] = static_cast<int>(rng.uniform_int(lat.extent(i)));
        Eigen::ArrayX<bool> hit = Eigen::ArrayX<bool>::Constant(lat.num_points(), false);
        ArrayXi y = ArrayXi::Zero(n);
        for (Index flat = 0; flat < lat.num_points(); ++flat) {
          Index target = 0;
          for (int i = 0; i < n - 1; ++i)
            target += lat.stride(i) * wrap_mod(y[i] + rho.shift(i, y.data(), x.data()),
                                               lat.extent(i));
          target += y[n - 1];
          hit[target] = true;
          for (int ax = n - 1; ax >= 0; --ax) {
            if (++y[ax] < lat.extent(ax)) break;
            y[ax] = 0;
          }
        }
        if (!hit.all()) return detail::fail_report("shifted map is not onto the lattice");
        const GridFunction<double> f = random_grid(lat, rng);
        GridFunction<double> g = shear_pullback(f, rho, x.tail(n - 1).eval());
        Eigen::ArrayXd fv = f.values, gv = g.values;
        std::sort(fv.data(), fv.data() + fv.size());
        std::sort(gv.data(), gv.data() + gv.size());
        if (!(fv == gv).all()) return detail::fail_report("pullback changed the value multiset");
      }
    }
    return CheckReport{};
  });

  check("shear.lp-invariance", [&] {
    Rng rng(opts.seed + 6);
    // Deterministic probe first: constant mass under a twist that must wrap.
    {
      const Lattice lat{4, 4, 4};
      const GridFunction<double> f = GridFunction<double>::constant(lat, 1.0);
      ArrayXi tail(2);
      tail << 1, 1;
      const GridFunction<double> g = shear_pullback(f, heisenberg_shear(1.0), tail, shear_boundary);
      if (!approx_rel(lp_norm(g, 1.0), lp_norm(f, 1.0)))
        return detail::fail_report("constant-mass probe lost mass through the boundary");
    }
    const Lattice lat{opts.size3, opts.size3, opts.size3};
    for (int t = 0; t < opts.trials; ++t) {
      const GridFunction<double> f = random_grid(lat, rng);
      const ShearMap rho = random_bilinear_shear(3, rng);
      ArrayXi tail(2);
      tail << static_cast<int>(rng.uniform_int(lat.extent(1))),
          static_cast<int>(rng.uniform_int(lat.extent(2)));
      const GridFunction<double> g = shear_pullback(f, rho, tail, shear_boundary);
      for (double p : {1.0, 1.5, 2.0, 3.0}) {
        const double np = lp_norm(f, p), ng = lp_norm(g, p);
        if (!approx_rel(ng, np)) {
          std::ostringstream s;
          s << "p=" << p << ": pullback norm " << ng << " vs " << np;
          return detail::fail_report(s.str());
        }
      }
    }
    return CheckReport{};
  });

  check("shear.idempotent-tail", [&] {
    Rng rng(opts.seed + 7);
    const Lattice lat{4, 4, 4};
    const GridFunction<double> f = random_grid(lat, rng);
    const ShearMap rho = random_bilinear_shear(3, rng);
    ArrayXi xa(3), xb(3), y = ArrayXi::Zero(3);
    xa << 0, 2, 3;
    xb << 3, 2, 3;  // same tail, different x_1
    for (Index flat = 0; flat < lat.num_points(); ++flat) {
      if (sheared_sample(f, rho, xa, y) != sheared_sample(f, rho, xb, y))
        return detail::fail_report("sample depends on x_1");
      for (int ax = 2; ax >= 0; --ax) {
        if (++y[ax] < lat.extent(ax)) break;
        y[ax] = 0;
      }
    }
    return CheckReport{};
  });

  // ---- maximal ----

  const ShearMap twist1 = ShearMap::bilinear(2, {{0, 1, 1, 1.0}}, "twist:1");

  check("maximal.monotonicity", [&] {
    Rng rng(opts.seed + 8);
    const Lattice lat{opts.size2, opts.size2};
    const GridFunction<double> f = random_grid(lat, rng);
    GridFunction<double> g(lat, f.values + random_grid(lat, rng).values);
    const auto mf = strong_max_field(f, RectFamily::All);
    const auto mg = strong_max_field(g, RectFamily::All);
    for (Index i = 0; i < mf.values.size(); ++i) {
      if (mf.values[i] > mg.values[i] + 1e-12 * (1.0 + mg.values[i]))
        return detail::fail_report("larger function produced a smaller field");
      if (mf.values[i] + 1e-12 * (1.0 + mf.values[i]) < f.values[i])
        return detail::fail_report("field dropped below the function");
    }
    return CheckReport{};
  });

  check("maximal.homogeneity", [&] {
    Rng rng(opts.seed + 9);
    const Lattice lat{opts.size2, opts.size2};
    const GridFunction<double> f = random_grid(lat, rng);
    const double c = 2.5;
    GridFunction<double> cf(lat, (c * f.values).eval());
    const double alpha = 0.5;
    const auto a = frac_max_field_result(f, twist1, alpha, RectFamily::All).field;
    const auto b = frac_max_field_result(cf, twist1, alpha, RectFamily::All).field;
    for (Index i = 0; i < a.values.size(); ++i)
      if (!approx_rel(b.values[i], c * a.values[i]))
        return detail::fail_report("field is not positively homogeneous");
    return CheckReport{};
  });

  check("maximal.family-sandwich", [&] {
    Rng rng(opts.seed + 10);
    struct Case {
      Lattice lat;
      ShearMap rho;
    };
    const std::vector<Case> cases = {{Lattice{opts.size2, opts.size2}, twist1},
                                     {Lattice{4, 4, 4}, heisenberg_shear(1.0)}};
    for (const Case& cs : cases) {
      const GridFunction<double> f = random_grid(cs.lat, rng);
      for (double alpha : {0.0, 0.5}) {
        const auto ds = frac_max_field_result(f, cs.rho, alpha, RectFamily::DyadicSides).field;
        const auto all = frac_max_field_result(f, cs.rho, alpha, RectFamily::All).field;
        const double bound = std::pow(2.0, cs.lat.dims() * (1.0 - alpha));
        for (Index i = 0; i < ds.values.size(); ++i) {
          if (ds.values[i] > all.values[i])
            return detail::fail_report("dyadic-sides field exceeded the all-rectangle field");
          if (all.values[i] > bound * ds.values[i])
            return detail::fail_report("all-rectangle field broke the 2^{N(1-alpha)} sandwich");
        }
      }
    }
    return CheckReport{};
  });

  check("maximal.oracle.small", [&] {
    Rng rng(opts.seed + 11);
    struct Case {
      Lattice lat;
      ShearMap rho;
    };
    const std::vector<Case> cases = {{Lattice{opts.size2, opts.size2}, twist1},
                                     {Lattice{4, 4, 4}, heisenberg_shear(1.0)}};
    for (const Case& cs : cases) {
      const GridFunction<double> f = random_grid(cs.lat, rng);
      for (double alpha : {0.0, 0.5}) {
        const auto fast = frac_max_field_result(f, cs.rho, alpha, RectFamily::All).field;
        const auto ref = naive_frac_max_field(f, cs.rho, alpha, RectFamily::All);
        for (Index i = 0; i < fast.values.size(); ++i)
          if (!approx_rel(fast.values[i], ref.values[i]))
            return detail::fail_report("summed-table field differs from the per-point oracle");
      }
    }
    return CheckReport{};
  });

  check("maximal.superlevel", [&] {
    Rng rng(opts.seed + 12);
    const Lattice lat{opts.size2, opts.size2};
    const GridFunction<double> f = random_grid(lat, rng);
    const auto field = strong_max_field(f, RectFamily::All);
    const double mx = field.values.maxCoeff(), mn = field.values.minCoeff();
    const LevelSet u1 = superlevel(field, 0.3 * mx), u2 = superlevel(field, 0.6 * mx);
    for (Index p : u2.points)
      if (!std::binary_search(u1.points.begin(), u1.points.end(), p))
        return detail::fail_report("superlevel sets are not nested");
    if (!superlevel(field, mx).points.empty())
      return detail::fail_report("level set at the maximum should be empty (strict inequality)");
    if (static_cast<Index>(superlevel(field, 0.5 * mn).points.size()) != lat.num_points())
      return detail::fail_report("level set below the minimum should be everything");
    return CheckReport{};
  });

  check("maximal.witness", [&] {
    Rng rng(opts.seed + 13);
    const Lattice lat{opts.size2, opts.size2};
    const GridFunction<double> f = random_grid(lat, rng);
    FieldOptions fopts;
    fopts.witnesses = true;
    const auto fr = frac_max_field_result(f, twist1, 0.5, RectFamily::All, fopts);
    const double lambda = 0.5 * fr.field.values.maxCoeff();
    const LevelSet U = superlevel(fr.field, lambda);
    const auto wits = witness_rectangles(fr, U);
    if (wits.size() != U.points.size()) return detail::fail_report("one witness per point expected");
    for (const PointWitness& w : wits) {
      const ArrayXi x = lat.point(w.point);
      if (!contains(w.rect, x)) return detail::fail_report("witness does not contain its point");
      const double avg = std::pow(volume(w.rect), 0.5 - 1.0) *
                         sheared_rect_integral(f, twist1, x, w.rect, Boundary::Torus);
      if (!(avg > lambda * (1.0 - 1e-9)))
        return detail::fail_report("witness average does not exceed lambda");
    }
    return CheckReport{};
  });

  // ---- covering ----

  const Lattice hand_lat{4, 4};
  const std::vector<Rect> hand_rects = {make_rect(hand_lat, {0, 0}, {2, 2}),
                                        make_rect(hand_lat, {0, 0}, {2, 2}),
                                        make_rect(hand_lat, {1, 0}, {3, 2})};

  check("covering.hand-example", [&] {
    const CoveringResult res = covering_select(hand_rects, hand_lat, tie_rule);
    if (res.selected != std::vector<int>{0, 2})
      return detail::fail_report("selected indices differ from {0, 2}");
    for (const CheckReport& rep :
         {verify_halfoverlap(res), verify_rejected(res), verify_halfmax(res)})
      if (!rep.pass) return rep;
    const UnionVolumes uv = union_volumes(res);
    if (uv.vol_all != 6.0 || uv.vol_selected != 6.0 || uv.ratio != 1.0)
      return detail::fail_report("union volumes differ from the hand count");
    const OverlapNorm on = overlap_lp(res, 2.0);
    if (!approx_rel(on.norm, std::sqrt(12.0)) || !approx_rel(on.ratio, std::sqrt(2.0)))
      return detail::fail_report("overlap norm differs from sqrt(12)");
    return CheckReport{};
  });

  check("covering.degenerate", [&] {
    const std::vector<Rect> dup(4, hand_rects[0]);
    const CoveringResult rd = covering_select(dup, hand_lat, tie_rule);
    if (rd.selected != std::vector<int>{0})
      return detail::fail_report("duplicates: only the first copy should be selected");
    const std::vector<Rect> disj = {make_rect(hand_lat, {0, 0}, {1, 1}),
                                    make_rect(hand_lat, {2, 0}, {3, 2}),
                                    make_rect(hand_lat, {0, 2}, {2, 4})};
    const CoveringResult rj = covering_select(disj, hand_lat, tie_rule);
    if (rj.selected != std::vector<int>{0, 1, 2})
      return detail::fail_report("disjoint rectangles must all be selected");

    CoveringResult forged = rd;
    forged.selected = {0, 1};
    forged.coverage.setZero();
    for (int k : forged.selected)
      for_each_cell(hand_lat, dup[static_cast<std::size_t>(k)],
                    [&](Index c) { ++forged.coverage[c]; });
    if (verify_halfoverlap(forged).pass)
      return detail::fail_report("forged duplicate selection slipped past verify_halfoverlap");

    CoveringResult forged2 = rj;
    forged2.selected = {0};
    forged2.coverage.setZero();
    for_each_cell(hand_lat, disj[0], [&](Index c) { ++forged2.coverage[c]; });
    if (verify_rejected(forged2).pass)
      return detail::fail_report("forged omission slipped past verify_rejected");
    return CheckReport{};
  });

  check("covering.random-families", [&] {
    Rng rng(opts.seed + 14);
    for (const Lattice& lat : {Lattice{24, 24}, Lattice{8, 8, 8}}) {
      for (int fam = 0; fam < (lat.dims() == 2 ? 10 : 5); ++fam) {
        const auto rects = random_rect_family(lat, 80, rng);
        const CoveringResult res = covering_select(rects, lat, tie_rule);
        for (const CheckReport& rep :
             {verify_halfoverlap(res), verify_rejected(res), verify_halfmax(res)})
          if (!rep.pass) return rep;
        const UnionVolumes uv = union_volumes(res);
        if (!(uv.ratio >= 1.0) || !std::isfinite(uv.ratio))
          return detail::fail_report("union ratio must be finite and >= 1");
        for (double p : {1.5, 2.0, 3.0})
          if (!(overlap_lp(res, p).ratio >= 1.0))
            return detail::fail_report("overlap ratio must be >= 1");
      }
    }
    return CheckReport{};
  });

  check("covering.est2-dilation", [&] {
    Rng rng1(opts.seed + 15);
    const Lattice base{24, 24};
    const auto rects = random_rect_family(base, 60, rng1);
    const double r1 = overlap_lp(covering_select(rects, base, tie_rule), 2.0).ratio;
    std::vector<Rect> doubled;
    for (const Rect& r : rects) doubled.push_back(Rect{(2 * r.lo).eval(), (2 * r.hi).eval()});
    const Lattice big{48, 48};
    const double r2 = overlap_lp(covering_select(doubled, big, tie_rule), 2.0).ratio;
    if (std::abs(r2 / r1 - 1.0) > 0.05)
      return detail::fail_report("overlap ratio moved by more than 5% under exact dilation");
    return CheckReport{};
  });

  check("covering.dual-pairing", [&] {
    Rng rng(opts.seed + 16);
    const CoveringResult hand = covering_select(hand_rects, hand_lat, tie_rule);
    const auto family = random_rect_family(Lattice{16, 16}, 60, rng);
    const CoveringResult rnd = covering_select(family, Lattice{16, 16}, tie_rule);
    for (const CoveringResult* res : {&hand, &rnd})
      for (double p : {1.5, 2.0}) {
        const PairingReport rep = dual_pairing_check(*res, 200, p, rng);
        if (!rep.pass) return detail::fail_report(rep.detail);
        if (rep.max_pairing > rep.norm + 1e-9)
          return detail::fail_report("pairing exceeded the coverage norm");
      }
    return CheckReport{};
  });

  check("covering.measured-bound", [&] {
    Rng rng(opts.seed + 17);
    const Lattice lat{20, 20};
    const auto rects = random_rect_family(lat, 100, rng);
    const CoveringResult res = covering_select(rects, lat, tie_rule);
    GridFunction<double> chi(lat, (res.coverage > 0).cast<double>().eval());
    const auto field = strong_max_field(chi, RectFamily::All);
    double integral = 0.0;
    Eigen::ArrayX<bool> in_union = Eigen::ArrayX<bool>::Constant(lat.num_points(), false);
    for (const Rect& r : rects) for_each_cell(lat, r, [&](Index c) { in_union[c] = true; });
    for (Index i = 0; i < lat.num_points(); ++i)
      if (in_union[i]) integral += field.values[i] * field.values[i];
    const double vol_all = static_cast<double>(res.vol_union_all);
    if (!(4.0 * integral >= vol_all * (1.0 - 1e-9)))
      return detail::fail_report("4 * integral of the squared field fell below the input union");
    return CheckReport{};
  });

  // ---- pipeline ----

  check("pipeline.weaktype", [&] {
    const Lattice lat{6, 6, 6};
    const GridFunction<double> f = cube_indicator(lat, 2);
    const FracExponents exps = FracExponents::strong(2.0);
    const ShearMap rho = heisenberg_shear(1.0);
    const auto field = frac_max_field(f, rho, exps, RectFamily::All);
    const double mx = field.values.maxCoeff();
    const auto lambdas = geometric_grid(0.05 * mx, mx, 8);
    const WeaktypeResult a =
        weaktype_sweep(f, rho, exps, RectFamily::All, lambdas, WitnessOrder::VolumeDesc);
    const WeaktypeResult b =
        weaktype_sweep(f, rho, exps, RectFamily::All, lambdas, WitnessOrder::VolumeDesc);
    bool any_nonempty = false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      any_nonempty = any_nonempty || !a.rows[i].empty;
      if (i > 0 && a.rows[i].vol_U > a.rows[i - 1].vol_U)
        return detail::fail_report("vol(U_lambda) increased along the sweep");
      if (!(a.rows[i].score >= 0.0) || !std::isfinite(a.rows[i].score))
        return detail::fail_report("score must be finite and nonnegative");
      if (a.rows[i].empty && a.rows[i].score != 0.0)
        return detail::fail_report("empty rows must carry score 0");
      if (a.rows[i].vol_U != b.rows[i].vol_U || a.rows[i].score != b.rows[i].score ||
          a.rows[i].sum_selected_integrals != b.rows[i].sum_selected_integrals)
        return detail::fail_report("repeated sweep is not bitwise reproducible");
    }
    if (!any_nonempty) return detail::fail_report("sweep never produced a nonempty level set");
    return CheckReport{};
  });

  os << (summary.ok() ? "verify: all " : "verify: FAILED ") << summary.passed << " passed, "
     << summary.failed << " failed\n";
  return summary;
}

}  // namespace maxrect
