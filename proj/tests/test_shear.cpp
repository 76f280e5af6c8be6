#include "maxrect/maximal.hpp"
#include "maxrect/random.hpp"
#include "maxrect/shear.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

using namespace maxrect;

namespace {

ArrayXi pt3(int a, int b, int c) {
  ArrayXi p(3);
  p << a, b, c;
  return p;
}

}  // namespace

TEST_CASE("zero shear: shifts vanish and the pullback is the identity") {
  const ShearMap z = zero_shear(3);
  CHECK(z.is_zero());
  const ArrayXi y = pt3(1, 2, 3), x = pt3(3, 1, 0);
  CHECK(z.shift(0, y.data(), x.data()) == 0);
  CHECK(z.shift(1, y.data(), x.data()) == 0);

  Rng rng(7);
  const Lattice lat{4, 4, 4};
  const GridFunction<double> f = random_grid(lat, rng);
  ArrayXi tail(2);
  tail << 2, 3;
  const GridFunction<double> g = shear_pullback(f, z, tail);
  CHECK((g.values == f.values).all());

  // The fractional field with a zero shear is the plain field.
  const auto a = frac_max_field_result(f, z, 0.0, RectFamily::All).field;
  const auto b = strong_max_field(f, RectFamily::All);
  CHECK((a.values == b.values).all());
}

TEST_CASE("heisenberg twist values") {
  const ShearMap h = heisenberg_shear(1.0);
  CHECK(h.dims() == 3);
  CHECK_FALSE(h.is_zero());
  {
    const ArrayXi y = pt3(0, 3, 5), x = pt3(0, 2, 1);
    CHECK(h.shift(0, y.data(), x.data()) == 7);  // 2*5 - 1*3
    CHECK(h.shift(1, y.data(), x.data()) == 0);
  }
  {
    const ArrayXi y = pt3(0, 9, 4), x = pt3(0, 0, 0);
    CHECK(h.shift(0, y.data(), x.data()) == 0);
  }
  {
    const ArrayXi y = pt3(0, 5, 2), x = pt3(0, 5, 2);  // antisymmetry
    CHECK(h.shift(0, y.data(), x.data()) == 0);
  }
  CHECK_THROWS_AS(heisenberg_shear(0.0), std::invalid_argument);
  CHECK_THROWS_AS(heisenberg_shear(std::numeric_limits<double>::quiet_NaN()),
                  std::invalid_argument);
}

TEST_CASE("shift rounding is nearest with ties to even") {
  const ShearMap half = ShearMap::bilinear(2, {{0, 1, 1, 0.5}}, "half");
  ArrayXi y(2), x(2);
  auto shift = [&](int xv, int yv) {
    x << 0, xv;
    y << 0, yv;
    return half.shift(0, y.data(), x.data());
  };
  CHECK(shift(1, 1) == 0);  // 0.5 -> 0
  CHECK(shift(1, 2) == 1);  // 1.0
  CHECK(shift(1, 3) == 2);  // 1.5 -> 2
  CHECK(shift(1, 5) == 2);  // 2.5 -> 2
  CHECK(shift(3, 3) == 4);  // 4.5 -> 4
}

TEST_CASE("sheared sampling with wraparound") {
  // Constant shift 2 on the first axis of an extent-4 grid: y_1 = 3 reads f at y_1 = 1.
  const Lattice lat{4, 3};
  Eigen::ArrayXd v(12);
  for (int i = 0; i < 12; ++i) v[i] = i;
  const GridFunction<double> f(lat, v);
  const ShearMap t = translation_shear(2, {2});
  ArrayXi x(2), y(2);
  x << 0, 0;
  y << 3, 1;
  ArrayXi target(2);
  target << 1, 1;
  CHECK(sheared_sample(f, t, x, y) == f(target));
  // Zero boundary: the same read falls outside and yields 0.
  CHECK(sheared_sample(f, t, x, y, Boundary::Zero) == 0.0);

  // Identity on the unshifted last coordinate.
  const ShearMap z = zero_shear(2);
  CHECK(sheared_sample(f, z, x, y) == f(y));
}

TEST_CASE("heisenberg sample worked example") {
  const Lattice lat{4, 4, 4};
  Eigen::ArrayXd v(64);
  for (int i = 0; i < 64; ++i) v[i] = 100 + i;
  const GridFunction<double> f(lat, v);
  const ArrayXi x = pt3(0, 1, 1), y = pt3(2, 3, 2);
  // shift = x2*y3 - x3*y2 = 1*2 - 1*3 = -1, so the sample sits at ((2-1) mod 4, 3, 2).
  CHECK(sheared_sample(f, heisenberg_shear(1.0), x, y) == f(pt3(1, 3, 2)));
}

TEST_CASE("pullback is a rearrangement") {
  Rng rng(11);
  const Lattice lat{4, 4, 4};
  const GridFunction<double> f = random_grid(lat, rng);

  // Pure translation: cyclic shift, multiset preserved.
  const ShearMap t = translation_shear(3, {1, 3});
  ArrayXi tail(2);
  tail << 0, 2;
  GridFunction<double> g = shear_pullback(f, t, tail);
  ArrayXi y = pt3(0, 0, 0), yy = pt3(1, 3, 0);
  CHECK(g(y) == f(yy));
  Eigen::ArrayXd fs = f.values, gs = g.values;
  std::sort(fs.data(), fs.data() + fs.size());
  std::sort(gs.data(), gs.data() + gs.size());
  CHECK((fs == gs).all());

  // Heisenberg twist: still a rearrangement for any tail.
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      tail << a, b;
      GridFunction<double> h = shear_pullback(f, heisenberg_shear(1.0), tail);
      Eigen::ArrayXd hs = h.values;
      std::sort(hs.data(), hs.data() + hs.size());
      CHECK((fs == hs).all());
    }
}

TEST_CASE("pullback norms are exactly invariant on the torus") {
  Rng rng(12);
  const Lattice lat{5, 4, 3};
  for (int trial = 0; trial < 10; ++trial) {
    const GridFunction<double> f = random_grid(lat, rng);
    const ShearMap rho = random_bilinear_shear(3, rng);
    ArrayXi tail(2);
    tail << static_cast<int>(rng.uniform_int(4)), static_cast<int>(rng.uniform_int(3));
    const GridFunction<double> g = shear_pullback(f, rho, tail);
    for (double p : {1.0, 1.5, 2.0, 3.0}) CHECK(approx_rel(lp_norm(g, p), lp_norm(f, p)));

    // Dropping the wrap can only lose mass.
    const GridFunction<double> gz = shear_pullback(f, rho, tail, Boundary::Zero);
    CHECK(lp_norm(gz, 1.0) <= lp_norm(f, 1.0) + 1e-12);
  }
}

TEST_CASE("shifted map reaches every lattice point") {
  Rng rng(13);
  const Lattice lat{6, 5, 4};
  const int n = 3;
  for (int trial = 0; trial < 5; ++trial) {
    const ShearMap rho = random_bilinear_shear(n, rng);
    ArrayXi x(n);
    for (int i = 0; i < n; ++i) x[i] = static_cast<int>(rng.uniform_int(lat.extent(i)));
    Eigen::ArrayX<bool> hit = Eigen::ArrayX<bool>::Constant(lat.num_points(), false);
    ArrayXi y = ArrayXi::Zero(n);
    for (Index flat = 0; flat < lat.num_points(); ++flat) {
      Index target = 0;
      for (int i = 0; i < n - 1; ++i)
        target += lat.stride(i) * wrap_mod(y[i] + rho.shift(i, y.data(), x.data()), lat.extent(i));
      target += y[n - 1];
      hit[target] = true;
      for (int ax = n - 1; ax >= 0; --ax) {
        if (++y[ax] < lat.extent(ax)) break;
        y[ax] = 0;
      }
    }
    CHECK(hit.all());
  }
}

TEST_CASE("triangular structure verification") {
  Rng rng(14);
  const Lattice lat{4, 4, 4};
  CHECK(verify_triangular(zero_shear(3), lat, 100, rng).pass);
  CHECK(verify_triangular(heisenberg_shear(2.0), lat, 100, rng).pass);
  CHECK(verify_triangular(translation_shear(3, {1, 2}), lat, 100, rng).pass);

  const ShearMap bad = ShearMap::custom(
      3,
      {[](const int* y, const int*) { return static_cast<double>(y[0]); },
       [](const int*, const int*) { return 0.0; }},
      "adversarial");
  const TriangularReport rep = verify_triangular(bad, lat, 100, rng);
  CHECK_FALSE(rep.pass);
  CHECK(rep.component == 0);
  CHECK_FALSE(rep.detail.empty());

  CHECK_THROWS_AS(verify_triangular(zero_shear(3), lat, 0, rng), std::invalid_argument);
  CHECK_THROWS_AS(verify_triangular(zero_shear(2), lat, 10, rng), std::invalid_argument);
}

TEST_CASE("pullback depends only on the tail of x") {
  Rng rng(15);
  const Lattice lat{4, 4, 4};
  const GridFunction<double> f = random_grid(lat, rng);
  const ShearMap rho = random_bilinear_shear(3, rng);
  ArrayXi xa = pt3(0, 2, 1), xb = pt3(3, 2, 1), y = pt3(0, 0, 0);
  for (Index flat = 0; flat < lat.num_points(); ++flat) {
    CHECK(sheared_sample(f, rho, xa, y) == sheared_sample(f, rho, xb, y));
    for (int ax = 2; ax >= 0; --ax) {
      if (++y[ax] < lat.extent(ax)) break;
      y[ax] = 0;
    }
  }
}

TEST_CASE("bilinear construction rejects non-triangular terms") {
  CHECK_THROWS_AS(ShearMap::bilinear(3, {{0, 0, 2, 1.0}}, "bad"), std::invalid_argument);
  CHECK_THROWS_AS(ShearMap::bilinear(3, {{1, 2, 1, 1.0}}, "bad"), std::invalid_argument);
  CHECK_THROWS_AS(ShearMap::bilinear(3, {{2, 1, 1, 1.0}}, "bad"), std::invalid_argument);
  CHECK_THROWS_AS(translation_shear(3, {1}), std::invalid_argument);
}
