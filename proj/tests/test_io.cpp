#include "maxrect/io.hpp"
#include "maxrect/random.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace maxrect;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "maxrect-io-tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("grid files round-trip bit-exactly") {
  Rng rng(41);
  const Lattice lat{3, 4, 5};
  GridFunction<double> f = random_grid(lat, rng);
  f.values[0] = 0.1;
  f.values[1] = 1.0 / 3.0;
  f.values[2] = 1e-300;
  f.values[3] = 12345678901234.5;

  const fs::path p1 = temp_dir() / "a.grid", p2 = temp_dir() / "b.grid";
  write_grid(p1, lat, f.values);
  const GridFunction<double> g = read_grid(p1);
  CHECK(g.lattice == lat);
  CHECK((g.values == f.values).all());  // bitwise identical after the text round trip
  write_grid(p2, g.lattice, g.values);
  CHECK(slurp(p1) == slurp(p2));
}

TEST_CASE("negative grid values are stored as absolute values") {
  const fs::path p = temp_dir() / "neg.grid";
  {
    std::ofstream out(p);
    out << "2\n2 2\n1.5 -2.5\n-0 4\n";
  }
  const GridFunction<double> f = read_grid(p);
  CHECK(f.values[0] == 1.5);
  CHECK(f.values[1] == 2.5);
  CHECK(f.values[2] == 0.0);
  CHECK(f.values[3] == 4.0);
}

TEST_CASE("malformed grid files raise io errors") {
  const fs::path missing = temp_dir() / "nope.grid";
  CHECK_THROWS_AS(read_grid(missing), IoError);

  const fs::path bad_n = temp_dir() / "badn.grid";
  {
    std::ofstream out(bad_n);
    out << "0\n";
  }
  CHECK_THROWS_AS(read_grid(bad_n), IoError);

  const fs::path short_vals = temp_dir() / "short.grid";
  {
    std::ofstream out(short_vals);
    out << "2\n2 2\n1 2 3\n";
  }
  CHECK_THROWS_AS(read_grid(short_vals), IoError);
}

TEST_CASE("rects files round-trip") {
  const Lattice lat{8, 8, 8};
  Rng rng(42);
  std::vector<Rect> rects;
  for (int i = 0; i < 20; ++i) rects.push_back(random_rect(lat, rng));
  const fs::path p = temp_dir() / "r.rects";
  write_rects(p, rects);
  const auto back = read_rects(p, lat);
  REQUIRE(back.size() == rects.size());
  for (std::size_t i = 0; i < rects.size(); ++i) CHECK(back[i] == rects[i]);

  const fs::path bad = temp_dir() / "bad.rects";
  {
    std::ofstream out(bad);
    out << "0 2 0\n";  // truncated line
  }
  CHECK_THROWS_AS(read_rects(bad, lat), IoError);

  const fs::path outside = temp_dir() / "outside.rects";
  {
    std::ofstream out(outside);
    out << "0 2 0 9 0 2\n";  // hi beyond the extent
  }
  CHECK_THROWS_AS(read_rects(outside, lat), IoError);

  const fs::path blank = temp_dir() / "blank.rects";
  {
    std::ofstream out(blank);
    out << "\n0 1 0 1 0 1\n\n";
  }
  CHECK(read_rects(blank, lat).size() == 1);
}

TEST_CASE("shear files encode bilinear coefficient tables") {
  const fs::path p = temp_dir() / "h.shear";
  {
    std::ofstream out(p);
    out << "3\n1 2 3 1\n1 3 2 -1\n";
  }
  const ShearMap m = read_shear(p);
  const ShearMap h = heisenberg_shear(1.0);
  ArrayXi y(3), x(3);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      y << 0, a, b;
      x << 0, b, a;
      CHECK(m.shift(0, y.data(), x.data()) == h.shift(0, y.data(), x.data()));
      CHECK(m.shift(1, y.data(), x.data()) == 0);
    }

  const fs::path bad = temp_dir() / "bad.shear";
  {
    std::ofstream out(bad);
    out << "3\n1 1 2 1\n";  // j must exceed i
  }
  CHECK_THROWS_AS(read_shear(bad), IoError);
}

TEST_CASE("shear spec parsing") {
  CHECK(parse_shear_spec("zero", 4).is_zero());
  const ShearMap h = parse_shear_spec("heisenberg:1.5", 3);
  CHECK(h.label() == "heisenberg:1.5");
  CHECK_THROWS_AS(parse_shear_spec("heisenberg:1.5", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_shear_spec("heisenberg:abc", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_shear_spec("wat", 3), std::invalid_argument);
}

TEST_CASE("csv formatting round-trips doubles") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02e23, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  std::ostringstream os;
  CsvWriter csv(os);
  csv.header({"a", "b"});
  csv.begin_row();
  csv.col(1).col(0.5);
  csv.end_row();
  CHECK(os.str() == "a,b\n1,0.5\n");
}

TEST_CASE("grid writer validates the value count") {
  const Lattice lat{2, 2};
  CHECK_THROWS_AS(write_grid(temp_dir() / "x.grid", lat, Eigen::ArrayXd::Zero(3)),
                  std::invalid_argument);
}
