#pragma once

#include "maxrect/core.hpp"
#include "maxrect/rng.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace maxrect {

/// Boundary handling for shifted sampling. Torus wrapping keeps every shear
/// a permutation of the lattice, which is what makes the pullback preserve
/// L^p norms exactly; Zero reads 0 outside the domain and is offered for
/// comparison only.
enum class Boundary { Torus, Zero };

inline std::string to_string(Boundary b) { return b == Boundary::Torus ? "torus" : "zero"; }

/// One bilinear term c * x[xj] * y[yk] of a shift component.
struct BilinearTriple {
  int comp;  // 0-based component index i, shifting coordinate y[i]
  int xj;    // 0-based x index, must be > comp
  int yk;    // 0-based y index, must be > comp
  double c;
};

/// Triangular family of integer shift maps: component i shifts y_i and may
/// depend only on the later coordinates y_{i+1..N-1}, x_{i+1..N-1}. The last
/// coordinate is never shifted. Components are bilinear coefficient tables
/// rho_i = round(sum c * x_j * y_k), rounded to nearest with ties to even;
/// arbitrary evaluators can be attached through `custom` as an extension
/// point (the triangular structure is then checked, not enforced).
class ShearMap {
 public:
  using Evaluator = std::function<double(const int* y, const int* x)>;

  static ShearMap zero(int dims) {
    check_dims(dims);
    ShearMap m(dims, "zero");
    return m;
  }

  static ShearMap bilinear(int dims, const std::vector<BilinearTriple>& triples,
                           std::string label) {
    check_dims(dims);
    ShearMap m(dims, std::move(label));
    for (const auto& t : triples) {
      if (t.comp < 0 || t.comp >= dims - 1)
        throw std::invalid_argument("ShearMap: component index out of range");
      if (t.xj <= t.comp || t.xj >= dims || t.yk <= t.comp || t.yk >= dims)
        throw std::invalid_argument("ShearMap: term indices must be > component (triangular)");
      m.terms_[t.comp].push_back(t);
    }
    return m;
  }

  static ShearMap custom(int dims, std::vector<Evaluator> components, std::string label) {
    check_dims(dims);
    if (static_cast<int>(components.size()) != dims - 1)
      throw std::invalid_argument("ShearMap: need dims-1 components");
    ShearMap m(dims, std::move(label));
    m.custom_ = std::move(components);
    return m;
  }

  int dims() const { return dims_; }
  int components() const { return dims_ - 1; }
  const std::string& label() const { return label_; }
  bool is_zero() const {
    if (!custom_.empty()) return false;
    for (const auto& t : terms_)
      if (!t.empty()) return false;
    return true;
  }

  /// Integer shift applied to y[i]; y and x point to full dims()-length arrays.
  std::int64_t shift(int i, const int* y, const int* x) const {
    double v = 0.0;
    if (!custom_.empty()) {
      v = custom_[i](y, x);
    } else {
      for (const auto& t : terms_[i])
        v += t.c * static_cast<double>(x[t.xj]) * static_cast<double>(y[t.yk]);
    }
    return static_cast<std::int64_t>(std::nearbyint(v));
  }

 private:
  ShearMap(int dims, std::string label)
      : dims_(dims), label_(std::move(label)), terms_(dims - 1) {}

  static void check_dims(int dims) {
    if (dims < 1) throw std::invalid_argument("ShearMap: dims must be >= 1");
  }

  int dims_;
  std::string label_;
  std::vector<std::vector<BilinearTriple>> terms_;
  std::vector<Evaluator> custom_;
};

inline ShearMap zero_shear(int dims) { return ShearMap::zero(dims); }

/// The 3D twist rho_1 = mu * (x_2 y_3 - x_3 y_2) coming from the group
/// product on the Heisenberg group; the twisted axis is coordinate 1,
/// the pair (x_2, x_3) plays (u, v) and (y_2, y_3) plays (xi, eta).
inline ShearMap heisenberg_shear(double mu) {
  if (!(mu != 0.0) || !std::isfinite(mu))
    throw std::invalid_argument("heisenberg_shear: mu must be finite and nonzero (use zero_shear)");
  std::ostringstream label;
  label << "heisenberg:" << mu;
  return ShearMap::bilinear(3, {{0, 1, 2, mu}, {0, 2, 1, -mu}}, label.str());
}

/// Constant cyclic translation; handy as the simplest nonzero shear.
inline ShearMap translation_shear(int dims, std::vector<int> shifts) {
  if (static_cast<int>(shifts.size()) != dims - 1)
    throw std::invalid_argument("translation_shear: need dims-1 shifts");
  std::vector<ShearMap::Evaluator> comps;
  for (int i = 0; i < dims - 1; ++i) {
    const int c = shifts[i];
    comps.emplace_back([c](const int*, const int*) { return static_cast<double>(c); });
  }
  return ShearMap::custom(dims, std::move(comps), "translate");
}

inline int wrap_mod(std::int64_t c, int extent) {
  const std::int64_t m = c % extent;
  return static_cast<int>(m < 0 ? m + extent : m);
}

/// f evaluated at (y_1 + rho_1, ..., y_{N-1} + rho_{N-1}, y_N), shifted
/// coordinates reduced modulo the axis extent (or read as 0 outside the
/// domain under Boundary::Zero).
template <class Scalar>
Scalar sheared_sample(const GridFunction<Scalar>& f, const ShearMap& rho, const ArrayXi& x,
                      const ArrayXi& y, Boundary boundary = Boundary::Torus) {
  const Lattice& lat = f.lattice;
  const int n = lat.dims();
  Index flat = 0;
  for (int i = 0; i < n - 1; ++i) {
    const std::int64_t c = y[i] + rho.shift(i, y.data(), x.data());
    if (boundary == Boundary::Torus) {
      flat += lat.stride(i) * wrap_mod(c, lat.extent(i));
    } else {
      if (c < 0 || c >= lat.extent(i)) return Scalar(0);
      flat += lat.stride(i) * c;
    }
  }
  flat += y[n - 1];
  return f.values[flat];
}

/// Materializes g(y) = sheared_sample(f, rho, x, y) for the x determined by
/// the given tail (x_2..x_N); by the triangular structure g does not depend
/// on x_1, so the tail pins it completely.
template <class Scalar>
GridFunction<Scalar> shear_pullback(const GridFunction<Scalar>& f, const ShearMap& rho,
                                    const ArrayXi& x_tail, Boundary boundary = Boundary::Torus) {
  const Lattice& lat = f.lattice;
  const int n = lat.dims();
  if (static_cast<int>(x_tail.size()) != n - 1)
    throw std::invalid_argument("shear_pullback: tail must have dims-1 coordinates");
  ArrayXi x = ArrayXi::Zero(n);
  for (int i = 1; i < n; ++i) {
    x[i] = x_tail[i - 1];
    if (x[i] < 0 || x[i] >= lat.extent(i))
      throw std::invalid_argument("shear_pullback: tail coordinate outside extents");
  }
  ArrayX<Scalar> g(lat.num_points());
  ArrayXi y = ArrayXi::Zero(n);
  for (Index flat = 0; flat < lat.num_points(); ++flat) {
    g[flat] = sheared_sample(f, rho, x, y, boundary);
    for (int ax = n - 1; ax >= 0; --ax) {
      if (++y[ax] < lat.extent(ax)) break;
      y[ax] = 0;
    }
  }
  return GridFunction<Scalar>(lat, std::move(g));
}

struct TriangularReport {
  bool pass = true;
  int component = -1;
  std::string detail;
};

/// Probes whether component i really ignores the forbidden coordinates
/// y_1..y_i, x_1..x_i: random probe pairs differ only there, and the shift
/// must not change. Returns the violating probe on failure.
inline TriangularReport verify_triangular(const ShearMap& rho, const Lattice& lat, int trials,
                                          Rng& rng) {
  if (trials < 1) throw std::invalid_argument("verify_triangular: trials must be >= 1");
  if (rho.dims() != lat.dims())
    throw std::invalid_argument("verify_triangular: dimension mismatch");
  const int n = lat.dims();
  auto random_point = [&] {
    ArrayXi p(n);
    for (int i = 0; i < n; ++i) p[i] = static_cast<int>(rng.uniform_int(lat.extent(i)));
    return p;
  };
  for (int comp = 0; comp < n - 1; ++comp) {
    for (int t = 0; t < trials; ++t) {
      ArrayXi y = random_point(), x = random_point();
      ArrayXi y2 = y, x2 = x;
      for (int i = 0; i <= comp; ++i) {
        y2[i] = static_cast<int>(rng.uniform_int(lat.extent(i)));
        x2[i] = static_cast<int>(rng.uniform_int(lat.extent(i)));
      }
      if ((y2 == y).all() && (x2 == x).all()) {
        bool forced = false;
        for (int i = comp; i >= 0 && !forced; --i) {
          if (lat.extent(i) > 1) {
            y2[i] = (y[i] + 1) % lat.extent(i);
            forced = true;
          }
        }
        if (!forced) continue;  // all forbidden axes degenerate; nothing to probe
      }
      const std::int64_t a = rho.shift(comp, y.data(), x.data());
      const std::int64_t b = rho.shift(comp, y2.data(), x2.data());
      if (a != b) {
        std::ostringstream os;
        os << "component " << comp << " changed from " << a << " to " << b
           << " under a forbidden-coordinate change";
        return TriangularReport{false, comp, os.str()};
      }
    }
  }
  return TriangularReport{};
}

}  // namespace maxrect
