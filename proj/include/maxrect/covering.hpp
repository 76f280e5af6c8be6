#pragma once

#include "maxrect/core.hpp"
#include "maxrect/families.hpp"
#include "maxrect/rng.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace maxrect {

/// Acceptance at an overlap of exactly half the volume. AcceptTies is the
/// correct rule; StrictLess exists only as an injectable fault for mutation
/// testing.
enum class TieRule { AcceptTies, StrictLess };

/// Outcome of the greedy selection scan: the ordered input, the increasing
/// list of accepted indices, the per-cell count of accepted rectangles
/// covering it, and exact union volumes for the whole input and for the
/// accepted subsequence.
struct CoveringResult {
  Lattice lattice;
  std::vector<Rect> input;
  std::vector<int> selected;
  Eigen::ArrayX<int> coverage;
  Index vol_union_all = 0;
  Index vol_union_selected = 0;
  std::vector<Index> overlap_at_turn;  // overlap each rectangle saw at its scan position
};

/// Scans the list in order and accepts a rectangle exactly when at most half
/// of it is already covered by the accepted ones: 2 * overlap <= volume, in
/// exact integer cell counts. The first rectangle is always accepted.
inline CoveringResult covering_select(const std::vector<Rect>& rects, const Lattice& lat,
                                      TieRule tie = TieRule::AcceptTies) {
  if (rects.empty()) throw std::invalid_argument("covering_select: empty rectangle list");
  for (const Rect& r : rects)
    if (!is_valid(lat, r)) throw std::invalid_argument("covering_select: rectangle outside lattice");

  CoveringResult res{lat, rects, {}, Eigen::ArrayX<int>::Zero(lat.num_points()), 0, 0, {}};
  res.overlap_at_turn.reserve(rects.size());
  for (int i = 0; i < static_cast<int>(rects.size()); ++i) {
    const Rect& r = rects[i];
    const Index vol = volume_cells(r);
    Index overlap = 0;
    for_each_cell(lat, r, [&](Index c) { overlap += res.coverage[c] > 0; });
    res.overlap_at_turn.push_back(overlap);
    const bool accept = (tie == TieRule::AcceptTies) ? (2 * overlap <= vol) : (2 * overlap < vol);
    if (accept) {
      res.selected.push_back(i);
      for_each_cell(lat, r, [&](Index c) { ++res.coverage[c]; });
    }
  }
  res.vol_union_selected = (res.coverage > 0).count();

  Eigen::ArrayX<bool> any = Eigen::ArrayX<bool>::Constant(lat.num_points(), false);
  for (const Rect& r : rects) for_each_cell(lat, r, [&](Index c) { any[c] = true; });
  res.vol_union_all = any.count();
  return res;
}

struct CheckReport {
  bool pass = true;
  std::string detail;
};

/// Replays the accepted subsequence and checks, in exact integers, that each
/// accepted rectangle overlaps its predecessors in at most half its volume
/// and keeps at least half its volume as fresh cells.
inline CheckReport verify_halfoverlap(const CoveringResult& res) {
  if (res.selected.empty() || res.selected.front() != 0)
    return {false, "first rectangle of the list must be selected"};
  Eigen::ArrayX<int> cov = Eigen::ArrayX<int>::Zero(res.lattice.num_points());
  for (std::size_t k = 0; k < res.selected.size(); ++k) {
    const Rect& r = res.input[static_cast<std::size_t>(res.selected[k])];
    const Index vol = volume_cells(r);
    Index overlap = 0;
    for_each_cell(res.lattice, r, [&](Index c) { overlap += cov[c] > 0; });
    if (2 * overlap > vol) {
      std::ostringstream os;
      os << "selected #" << k << " (input index " << res.selected[k] << "): overlap " << overlap
         << " exceeds half of volume " << vol;
      return {false, os.str()};
    }
    if (2 * (vol - overlap) < vol) {
      std::ostringstream os;
      os << "selected #" << k << ": fresh part " << (vol - overlap) << " below half of volume "
         << vol;
      return {false, os.str()};
    }
    for_each_cell(res.lattice, r, [&](Index c) { ++cov[c]; });
  }
  return {};
}

/// Every unselected rectangle must overlap the union of the rectangles
/// accepted before its list position in strictly more than half its volume.
inline CheckReport verify_rejected(const CoveringResult& res) {
  Eigen::ArrayX<int> cov = Eigen::ArrayX<int>::Zero(res.lattice.num_points());
  std::size_t next_sel = 0;
  for (int i = 0; i < static_cast<int>(res.input.size()); ++i) {
    if (next_sel < res.selected.size() && res.selected[next_sel] == i) {
      for_each_cell(res.lattice, res.input[static_cast<std::size_t>(i)],
                    [&](Index c) { ++cov[c]; });
      ++next_sel;
      continue;
    }
    const Rect& r = res.input[static_cast<std::size_t>(i)];
    const Index vol = volume_cells(r);
    Index overlap = 0;
    for_each_cell(res.lattice, r, [&](Index c) { overlap += cov[c] > 0; });
    if (2 * overlap <= vol) {
      std::ostringstream os;
      os << "rejected rectangle at index " << i << " overlaps prior selection in " << overlap
         << " of " << vol << " cells (should exceed half)";
      return {false, os.str()};
    }
  }
  return {};
}

/// Every point covered by some input rectangle sees an average of the
/// selected-union indicator above 1/2: the witness is the first input
/// rectangle containing the point, whose overlap with the selected union
/// strictly exceeds half its volume (trivially so when it was selected).
/// Witnesses are input rectangles, i.e. members of the All family.
inline CheckReport verify_halfmax(const CoveringResult& res,
                                  RectFamily family = RectFamily::All) {
  (void)family;
  const Index npts = res.lattice.num_points();
  Eigen::ArrayX<int> witness = Eigen::ArrayX<int>::Constant(npts, -1);
  for (int i = 0; i < static_cast<int>(res.input.size()); ++i)
    for_each_cell(res.lattice, res.input[static_cast<std::size_t>(i)], [&](Index c) {
      if (witness[c] < 0) witness[c] = i;
    });

  std::vector<Index> overlap_cache(res.input.size(), -1);
  for (Index c = 0; c < npts; ++c) {
    const int w = witness[c];
    if (w < 0) continue;
    Index& overlap = overlap_cache[static_cast<std::size_t>(w)];
    if (overlap < 0) {
      overlap = 0;
      for_each_cell(res.lattice, res.input[static_cast<std::size_t>(w)],
                    [&](Index cc) { overlap += res.coverage[cc] > 0; });
    }
    const Index vol = volume_cells(res.input[static_cast<std::size_t>(w)]);
    if (2 * overlap <= vol) {
      std::ostringstream os;
      os << "covered cell " << c << ": witness rectangle " << w << " averages " << overlap << "/"
         << vol << " <= 1/2 against the selected union";
      return {false, os.str()};
    }
  }
  return {};
}

struct UnionVolumes {
  double vol_all = 0.0;
  double vol_selected = 0.0;
  double ratio = 0.0;  // vol_all / vol_selected, always >= 1
};

inline UnionVolumes union_volumes(const CoveringResult& res) {
  UnionVolumes u;
  u.vol_all = static_cast<double>(res.vol_union_all) * Lattice::cell_volume;
  u.vol_selected = static_cast<double>(res.vol_union_selected) * Lattice::cell_volume;
  u.ratio = u.vol_all / u.vol_selected;
  return u;
}

struct OverlapNorm {
  double norm = 0.0;   // || sum of selected indicators ||_p
  double ratio = 0.0;  // norm / vol_selected^(1/p)
};

/// L^p norm of the coverage count function, p > 1, and its ratio against
/// vol(selected union)^(1/p).
inline OverlapNorm overlap_lp(const CoveringResult& res, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("overlap_lp: p must be > 1");
  const double s = res.coverage.cast<double>().pow(p).sum() * Lattice::cell_volume;
  OverlapNorm o;
  o.norm = std::pow(s, 1.0 / p);
  o.ratio = o.norm / std::pow(static_cast<double>(res.vol_union_selected), 1.0 / p);
  return o;
}

struct PairingReport {
  bool pass = true;
  double norm = 0.0;          // overlap_lp(res, p).norm
  double max_pairing = 0.0;   // largest observed integral of phi * coverage
  std::string detail;
};

/// Pairs the coverage function against random nonnegative test functions
/// normalized in the dual exponent p/(p-1). Each pairing must stay below
/// the coverage L^p norm; the largest one observed is an empirical lower
/// bound on that norm. The two canonical test functions (normalized union
/// indicator and a unit mass on the most-covered cell) are always probed.
inline PairingReport dual_pairing_check(const CoveringResult& res, int trials, double p,
                                        Rng& rng) {
  if (trials < 1) throw std::invalid_argument("dual_pairing_check: trials must be >= 1");
  if (!(p > 1.0)) throw std::invalid_argument("dual_pairing_check: p must be > 1");
  const double dual = p / (p - 1.0);
  const Index npts = res.lattice.num_points();
  PairingReport rep;
  rep.norm = overlap_lp(res, p).norm;

  auto probe = [&](const Eigen::ArrayXd& phi_raw) {
    const double nrm = std::pow(phi_raw.pow(dual).sum(), 1.0 / dual);
    if (!(nrm > 0.0)) return;
    const double pairing = (phi_raw * res.coverage.cast<double>()).sum() / nrm;
    if (pairing > rep.max_pairing) rep.max_pairing = pairing;
    if (pairing > rep.norm + 1e-9) {
      rep.pass = false;
      std::ostringstream os;
      os << "pairing " << pairing << " exceeds coverage norm " << rep.norm;
      rep.detail = os.str();
    }
  };

  probe((res.coverage > 0).cast<double>());
  {
    Eigen::ArrayXd spike = Eigen::ArrayXd::Zero(npts);
    Index argmax = 0;
    res.coverage.maxCoeff(&argmax);
    spike[argmax] = 1.0;
    probe(spike);
  }
  Eigen::ArrayXd phi(npts);
  for (int t = 0; t < trials; ++t) {
    for (Index i = 0; i < npts; ++i) phi[i] = rng.uniform();
    probe(phi);
  }
  return rep;
}

}  // namespace maxrect
