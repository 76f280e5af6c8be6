#pragma once

#include "maxrect/core.hpp"
#include "maxrect/shear.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace maxrect {

/// File-level problems (missing, unreadable, malformed).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shortest decimal that round-trips a double exactly.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// .grid format: line 1 = N, line 2 = N extents, then the values in
// row-major order, whitespace-separated.

inline GridFunction<double> read_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open grid file: " + path.string());
  int n = 0;
  if (!(in >> n) || n < 1) throw IoError("grid file: bad dimension count: " + path.string());
  ArrayXi extents(n);
  for (int i = 0; i < n; ++i)
    if (!(in >> extents[i]) || extents[i] < 1)
      throw IoError("grid file: bad extent: " + path.string());
  Lattice lat(extents);
  Eigen::ArrayXd values(lat.num_points());
  Index negatives = 0;
  for (Index i = 0; i < lat.num_points(); ++i) {
    double v = 0.0;
    if (!(in >> v)) throw IoError("grid file: missing values: " + path.string());
    if (v < 0.0) {
      ++negatives;
      v = -v;
    }
    values[i] = v;
  }
  if (negatives > 0)
    std::clog << "note: " << path.string() << ": " << negatives
              << " negative value(s) stored as absolute values\n";
  return GridFunction<double>(lat, std::move(values));
}

inline void write_grid(const std::filesystem::path& path, const Lattice& lat,
                       const Eigen::ArrayXd& values) {
  if (values.size() != lat.num_points())
    throw std::invalid_argument("write_grid: value count does not match lattice");
  std::ofstream out(path);
  if (!out) throw IoError("cannot write grid file: " + path.string());
  out << lat.dims() << "\n";
  for (int i = 0; i < lat.dims(); ++i) out << lat.extent(i) << (i + 1 < lat.dims() ? ' ' : '\n');
  const int row = lat.extent(lat.dims() - 1);
  for (Index i = 0; i < values.size(); ++i)
    out << format_double(values[i]) << ((i + 1) % row == 0 ? '\n' : ' ');
  if (!out) throw IoError("failed writing grid file: " + path.string());
}

// .rects format: one rectangle per line as "lo_1 hi_1 lo_2 hi_2 ... lo_N hi_N".

inline std::vector<Rect> read_rects(const std::filesystem::path& path, const Lattice& lat) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open rects file: " + path.string());
  std::vector<Rect> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    ArrayXi lo(lat.dims()), hi(lat.dims());
    int a = 0, b = 0;
    if (!(ls >> a)) continue;  // blank line
    lo[0] = a;
    if (!(ls >> b)) throw IoError("rects file: truncated line " + std::to_string(lineno));
    hi[0] = b;
    for (int i = 1; i < lat.dims(); ++i) {
      if (!(ls >> a >> b)) throw IoError("rects file: truncated line " + std::to_string(lineno));
      lo[i] = a;
      hi[i] = b;
    }
    Rect r{std::move(lo), std::move(hi)};
    if (!is_valid(lat, r))
      throw IoError("rects file: invalid rectangle at line " + std::to_string(lineno));
    out.push_back(std::move(r));
  }
  return out;
}

inline void write_rects(const std::filesystem::path& path, const std::vector<Rect>& rects) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write rects file: " + path.string());
  for (const Rect& r : rects) {
    for (int i = 0; i < static_cast<int>(r.lo.size()); ++i)
      out << r.lo[i] << ' ' << r.hi[i] << (i + 1 < static_cast<int>(r.lo.size()) ? " " : "");
    out << "\n";
  }
  if (!out) throw IoError("failed writing rects file: " + path.string());
}

// .shear format: line 1 = N, then one coefficient per line as "i j k c"
// (1-based, j,k > i), meaning component i picks up c * x_j * y_k.

inline ShearMap read_shear(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open shear file: " + path.string());
  int n = 0;
  if (!(in >> n) || n < 1) throw IoError("shear file: bad dimension count: " + path.string());
  std::vector<BilinearTriple> triples;
  int i = 0, j = 0, k = 0;
  double c = 0.0;
  while (in >> i >> j >> k >> c) {
    if (i < 1 || i > n - 1 || j <= i || j > n || k <= i || k > n)
      throw IoError("shear file: indices out of range (need 1 <= i < j,k <= N): " + path.string());
    triples.push_back({i - 1, j - 1, k - 1, c});
  }
  if (!in.eof()) throw IoError("shear file: malformed coefficient line: " + path.string());
  return ShearMap::bilinear(n, triples, "file:" + path.filename().string());
}

/// CLI shear spec: "zero" | "heisenberg:<mu>" | "file:<path>".
inline ShearMap parse_shear_spec(const std::string& spec, int dims) {
  if (spec == "zero") return zero_shear(dims);
  if (spec.rfind("heisenberg:", 0) == 0) {
    if (dims != 3)
      throw std::invalid_argument("shear spec: heisenberg shear needs a 3-dimensional grid");
    std::size_t used = 0;
    const double mu = std::stod(spec.substr(11), &used);
    if (used != spec.size() - 11) throw std::invalid_argument("shear spec: bad mu: " + spec);
    return heisenberg_shear(mu);
  }
  if (spec.rfind("file:", 0) == 0) {
    ShearMap m = read_shear(spec.substr(5));
    if (m.dims() != dims)
      throw std::invalid_argument("shear spec: shear file dimension does not match grid");
    return m;
  }
  throw std::invalid_argument("shear spec: expected zero | heisenberg:<mu> | file:<path>");
}

/// CSV with a header row, '.' decimal separator, 17 significant digits.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void header(const std::vector<std::string>& cols) {
    for (std::size_t i = 0; i < cols.size(); ++i) os_ << cols[i] << (i + 1 < cols.size() ? "," : "");
    os_ << "\n";
  }

  void begin_row() { first_ = true; }
  void end_row() { os_ << "\n"; }

  CsvWriter& col(double v) { return put(format_double(v)); }
  CsvWriter& col(Index v) { return put(std::to_string(v)); }
  CsvWriter& col(int v) { return put(std::to_string(v)); }
  CsvWriter& col(const std::string& v) { return put(v); }

 private:
  CsvWriter& put(const std::string& s) {
    if (!first_) os_ << ",";
    first_ = false;
    os_ << s;
    return *this;
  }

  std::ostream& os_;
  bool first_ = true;
};

}  // namespace maxrect
