#include "maxrect/cli.hpp"
#include "maxrect/experiments.hpp"
#include "maxrect/io.hpp"
#include "maxrect/maximal.hpp"
#include "maxrect/random.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

using namespace maxrect;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "maxrect-cli-tests";
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

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cols.push_back(cell);
    rows.push_back(cols);
  }
  return rows;
}

fs::path write_cube_grid(const std::string& name, int extent, int dims, int side, double scale) {
  ArrayXi e = ArrayXi::Constant(dims, extent);
  const Lattice lat(e);
  GridFunction<double> f = cube_indicator(lat, side);
  const fs::path p = temp_dir() / name;
  write_grid(p, lat, (scale * f.values).eval());
  return p;
}

}  // namespace

TEST_CASE("maxfield: constant input gives a constant field") {
  const Lattice lat{6, 6};
  const fs::path in = temp_dir() / "const.grid";
  write_grid(in, lat, Eigen::ArrayXd::Constant(36, 2.5));

  cli::MaxfieldConfig cfg;
  cfg.grid_path = in.string();
  cfg.exps.alpha = 0.0;
  cfg.family = "all";
  cfg.out_path = (temp_dir() / "const.out.grid").string();
  REQUIRE(cli::cmd_maxfield(cfg) == cli::kOk);

  const GridFunction<double> field = read_grid(cfg.out_path);
  for (Index i = 0; i < field.values.size(); ++i)
    CHECK(field.values[i] == doctest::Approx(2.5).epsilon(1e-13));

  const auto stats = read_csv(cfg.out_path + ".stats.csv");
  REQUIRE(stats.size() == 2);
  CHECK(stats[0] == std::vector<std::string>{"alpha", "family", "max", "min", "mean"});
}

TEST_CASE("maxfield: cube indicator peaks at vol^alpha and output is reproducible") {
  const fs::path in = write_cube_grid("q16.grid", 16, 2, 4, 1.0);
  cli::MaxfieldConfig cfg;
  cfg.grid_path = in.string();
  cfg.exps.alpha = 0.5;
  cfg.family = "all";
  cfg.out_path = (temp_dir() / "q16.out.grid").string();
  REQUIRE(cli::cmd_maxfield(cfg) == cli::kOk);
  const std::string first = slurp(cfg.out_path);
  const auto stats = read_csv(cfg.out_path + ".stats.csv");
  CHECK(std::stod(stats[1][2]) == doctest::Approx(4.0).epsilon(1e-12));

  REQUIRE(cli::cmd_maxfield(cfg) == cli::kOk);
  CHECK(slurp(cfg.out_path) == first);  // byte-identical rerun

  // alpha = 0 with a zero shear matches the strong field byte for byte.
  cli::MaxfieldConfig strong = cfg;
  strong.exps.alpha = 0.0;
  strong.out_path = (temp_dir() / "q16.strong1.grid").string();
  REQUIRE(cli::cmd_maxfield(strong) == cli::kOk);
  const GridFunction<double> f = read_grid(in);
  const auto lib = strong_max_field(f, RectFamily::All);
  const fs::path lib_out = temp_dir() / "q16.strong2.grid";
  write_grid(lib_out, lib.lattice, lib.values);
  CHECK(slurp(strong.out_path) == slurp(lib_out));
}

TEST_CASE("maxfield: exit codes") {
  cli::MaxfieldConfig cfg;
  cfg.grid_path = (temp_dir() / "missing.grid").string();
  cfg.out_path = (temp_dir() / "x.grid").string();
  CHECK(cli::cmd_maxfield(cfg) == cli::kIoError);

  const fs::path in = write_cube_grid("small.grid", 8, 2, 2, 1.0);
  cfg.grid_path = in.string();
  cfg.family = "rotated";
  CHECK(cli::cmd_maxfield(cfg) == cli::kBadConfig);

  cfg.family = "all";
  cfg.exps.alpha = 0.5;
  cfg.exps.p = 2.0;
  cfg.exps.q = 3.0;  // inconsistent triple
  CHECK(cli::cmd_maxfield(cfg) == cli::kInvariant);

  cfg.exps = {};
  cfg.shear_spec = "heisenberg:1";  // needs a 3D grid
  CHECK(cli::cmd_maxfield(cfg) == cli::kBadConfig);

  cfg.shear_spec = "zero";
  cfg.out_path.clear();
  CHECK(cli::cmd_maxfield(cfg) == cli::kBadConfig);
}

TEST_CASE("weaktype: sweep columns and reproducibility") {
  const fs::path in = write_cube_grid("w8.grid", 8, 3, 2, 1.0);
  cli::WeaktypeConfig cfg;
  cfg.grid_path = in.string();
  cfg.shear_spec = "heisenberg:1";
  cfg.exps.p = 2.0;
  cfg.exps.q = 2.0;
  cfg.family = "dyadic-sides";
  cfg.lambda_count = 10;
  cfg.out_path = (temp_dir() / "w8.csv").string();
  REQUIRE(cli::cmd_weaktype(cfg) == cli::kOk);

  const auto rows = read_csv(cfg.out_path);
  REQUIRE(rows.size() == 11);  // header + 10
  CHECK(rows[0][0] == "lambda");
  double prev_vol = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double vol = std::stod(rows[i][1]);
    CHECK(vol <= prev_vol);
    prev_vol = vol;
    CHECK(std::stod(rows[i][2]) >= 0.0);
  }
  // The last threshold is the field max: strict superlevel set is empty.
  CHECK(rows.back()[3] == "1");
  CHECK(std::stod(rows.back()[2]) == 0.0);

  const std::string bytes = slurp(cfg.out_path);
  REQUIRE(cli::cmd_weaktype(cfg) == cli::kOk);
  CHECK(slurp(cfg.out_path) == bytes);
}

TEST_CASE("weaktype: scaling f and lambda together leaves scores unchanged") {
  const fs::path in1 = write_cube_grid("s1.grid", 8, 3, 2, 1.0);
  const fs::path in2 = write_cube_grid("s2.grid", 8, 3, 2, 2.0);

  cli::WeaktypeConfig cfg;
  cfg.grid_path = in1.string();
  cfg.shear_spec = "heisenberg:1";
  cfg.exps.p = 2.0;
  cfg.exps.q = 2.0;
  cfg.family = "dyadic-sides";
  cfg.lambda_min = 0.05;
  cfg.lambda_max = 1.0;
  cfg.lambda_count = 8;
  cfg.out_path = (temp_dir() / "s1.csv").string();
  REQUIRE(cli::cmd_weaktype(cfg) == cli::kOk);

  cli::WeaktypeConfig cfg2 = cfg;
  cfg2.grid_path = in2.string();
  cfg2.lambda_min = 0.1;
  cfg2.lambda_max = 2.0;
  cfg2.out_path = (temp_dir() / "s2.csv").string();
  REQUIRE(cli::cmd_weaktype(cfg2) == cli::kOk);

  const auto a = read_csv(cfg.out_path), b = read_csv(cfg2.out_path);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 1; i < a.size(); ++i) {
    const double sa = std::stod(a[i][2]), sb = std::stod(b[i][2]);
    CHECK(std::abs(sa - sb) <= 1e-9 * (1.0 + std::abs(sa)));
    CHECK(std::stod(a[i][1]) == std::stod(b[i][1]));  // identical level sets
  }
}

TEST_CASE("weaktype: degenerate sweep and bad exponents") {
  const fs::path in = write_cube_grid("w6.grid", 6, 3, 2, 1.0);
  cli::WeaktypeConfig cfg;
  cfg.grid_path = in.string();
  cfg.exps.p = 2.0;
  cfg.exps.q = 2.0;
  cfg.lambda_min = 1e6;
  cfg.lambda_max = 2e6;
  cfg.lambda_count = 5;
  cfg.out_path = (temp_dir() / "w6.csv").string();
  CHECK(cli::cmd_weaktype(cfg) == cli::kDegenerateSweep);

  cli::WeaktypeConfig noexp = cfg;
  noexp.exps = {};
  CHECK(cli::cmd_weaktype(noexp) == cli::kBadConfig);

  cli::WeaktypeConfig lonely = cfg;
  lonely.exps = {};
  lonely.exps.q = 2.0;
  CHECK(cli::cmd_weaktype(lonely) == cli::kInvariant);
}

TEST_CASE("covering: hand example through files") {
  const fs::path rects = temp_dir() / "hand.rects";
  {
    std::ofstream out(rects);
    out << "0 2 0 2\n0 2 0 2\n1 3 0 2\n";
  }
  cli::CoveringConfig cfg;
  cfg.rects_path = rects.string();
  cfg.extents = {4, 4};
  cfg.p_list = {2.0};
  cfg.out_path = (temp_dir() / "hand.csv").string();
  REQUIRE(cli::cmd_covering(cfg) == cli::kOk);

  const auto rows = read_csv(cfg.out_path);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"k", "index", "volume", "overlap", "accepted"});
  CHECK(rows[1] == std::vector<std::string>{"0", "0", "4", "0", "1"});
  CHECK(rows[2] == std::vector<std::string>{"1", "1", "4", "4", "0"});
  CHECK(rows[3] == std::vector<std::string>{"2", "2", "4", "2", "1"});

  const auto summary = read_csv(cfg.out_path + ".summary.csv");
  REQUIRE(summary.size() == 2);
  CHECK(std::stod(summary[1][4]) == 1.0);  // est1 ratio
  CHECK(std::stod(summary[1][7]) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));

  const fs::path empty = temp_dir() / "empty.rects";
  { std::ofstream out(empty); }
  cli::CoveringConfig bad = cfg;
  bad.rects_path = empty.string();
  CHECK(cli::cmd_covering(bad) == cli::kBadConfig);

  const fs::path outside = temp_dir() / "o.rects";
  {
    std::ofstream out(outside);
    out << "0 9 0 2\n";
  }
  bad.rects_path = outside.string();
  CHECK(cli::cmd_covering(bad) == cli::kIoError);
}

TEST_CASE("covering: 500 random rectangles on a 64x64 lattice") {
  const Lattice lat{64, 64};
  Rng rng(777);
  const auto rects = random_rect_family(lat, 500, rng);
  const fs::path path = temp_dir() / "r500.rects";
  write_rects(path, rects);
  cli::CoveringConfig cfg;
  cfg.rects_path = path.string();
  cfg.extents = {64, 64};
  cfg.out_path = (temp_dir() / "r500.csv").string();
  REQUIRE(cli::cmd_covering(cfg) == cli::kOk);  // exit 4 would mean a failed verification
  const auto rows = read_csv(cfg.out_path);
  CHECK(rows.size() == 501);
  const auto summary = read_csv(cfg.out_path + ".summary.csv");
  REQUIRE(summary.size() == 4);  // default p list 1.5, 2, 3
  for (std::size_t i = 1; i < summary.size(); ++i) {
    CHECK(std::stod(summary[i][4]) >= 1.0);  // est1 ratio
    CHECK(std::stod(summary[i][7]) >= 1.0);  // overlap ratio
  }
}

TEST_CASE("covering: volume-descending scan order") {
  const fs::path rects = temp_dir() / "vol.rects";
  {
    std::ofstream out(rects);
    out << "0 1 0 1\n0 4 0 4\n";
  }
  cli::CoveringConfig cfg;
  cfg.rects_path = rects.string();
  cfg.extents = {4, 4};
  cfg.order = "volume-desc";
  cfg.out_path = (temp_dir() / "vol.csv").string();
  REQUIRE(cli::cmd_covering(cfg) == cli::kOk);
  const auto rows = read_csv(cfg.out_path);
  CHECK(std::stod(rows[1][2]) == 16.0);  // the big box is scanned first
  CHECK(rows[1][1] == "1");              // and carries its original file position
  CHECK(rows[1][4] == "1");
  CHECK(rows[2][1] == "0");
  CHECK(rows[2][4] == "0");  // the unit cell is then fully covered
}

TEST_CASE("scaling: ratios stay within the dilation band") {
  cli::ScalingConfig cfg;
  cfg.extents = {64, 64};
  cfg.exps.q = 4.0;
  cfg.exps.alpha = 0.5;
  cfg.family = "dyadic-sides";
  cfg.sizes = {4, 8};
  cfg.out_path = (temp_dir() / "scal.csv").string();
  REQUIRE(cli::cmd_scaling(cfg) == cli::kOk);
  const auto rows = read_csv(cfg.out_path);
  REQUIRE(rows.size() == 3);
  const double r4 = std::stod(rows[1][3]), r8 = std::stod(rows[2][3]);
  CHECK(r4 > 0.0);
  CHECK(r8 > 0.0);
  CHECK(r4 / r8 > 0.75);
  CHECK(r4 / r8 < 1.33);

  cli::ScalingConfig bad = cfg;
  bad.sizes = {3};
  CHECK(cli::cmd_scaling(bad) == cli::kBadConfig);
  bad.sizes = {128};
  CHECK(cli::cmd_scaling(bad) == cli::kBadConfig);
  bad.sizes = {};
  CHECK(cli::cmd_scaling(bad) == cli::kBadConfig);
}

TEST_CASE("generated grid specs are seeded and reproducible") {
  cli::MaxfieldConfig cfg;
  cfg.grid_path = "gen:uniform:8x8";
  cfg.exps.alpha = 0.0;
  cfg.family = "all";
  cfg.seed = 7;
  cfg.out_path = (temp_dir() / "gen.grid").string();
  REQUIRE(cli::cmd_maxfield(cfg) == cli::kOk);
  const std::string first = slurp(cfg.out_path);
  REQUIRE(cli::cmd_maxfield(cfg) == cli::kOk);
  CHECK(slurp(cfg.out_path) == first);

  cfg.seed = 8;  // a different seed gives a different field
  REQUIRE(cli::cmd_maxfield(cfg) == cli::kOk);
  CHECK(slurp(cfg.out_path) != first);

  cfg.grid_path = "gen:cube:4:16x16";
  cfg.exps.alpha = 0.5;
  REQUIRE(cli::cmd_maxfield(cfg) == cli::kOk);
  const auto stats = read_csv(cfg.out_path + ".stats.csv");
  CHECK(std::stod(stats[1][2]) == doctest::Approx(4.0).epsilon(1e-12));

  cfg.grid_path = "gen:sparse:0.1:8x8x8";
  cfg.exps = {};
  REQUIRE(cli::cmd_maxfield(cfg) == cli::kOk);

  cfg.grid_path = "gen:wat:8x8";
  CHECK(cli::cmd_maxfield(cfg) == cli::kBadConfig);
  cfg.grid_path = "gen:uniform:8y8";
  CHECK(cli::cmd_maxfield(cfg) == cli::kBadConfig);
  cfg.grid_path = "gen:sparse:1.5:8x8";
  CHECK(cli::cmd_maxfield(cfg) == cli::kBadConfig);
}

TEST_CASE("verify command exit codes") {
  cli::VerifyConfig cfg;
  cfg.sizes = {6, 4};
  cfg.trials = 5;
  {
    std::ofstream null_out("/dev/null");
    auto* old = std::cout.rdbuf(null_out.rdbuf());
    CHECK(cli::cmd_verify(cfg) == cli::kOk);
    cli::VerifyConfig tie = cfg;
    tie.inject_fault = "tie-strict";
    CHECK(cli::cmd_verify(tie) == cli::kVerifyFailed);
    cli::VerifyConfig wrap = cfg;
    wrap.inject_fault = "shear-no-wrap";
    CHECK(cli::cmd_verify(wrap) == cli::kVerifyFailed);
    std::cout.rdbuf(old);
  }
  cli::VerifyConfig bad = cfg;
  bad.inject_fault = "wat";
  CHECK(cli::cmd_verify(bad) == cli::kBadConfig);
}

TEST_CASE("geometric threshold grids") {
  const auto one = geometric_grid(0.5, 2.0, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == 0.5);
  const auto flat = geometric_grid(3.0, 3.0, 4);
  for (double l : flat) CHECK(l == 3.0);
  const auto grid = geometric_grid(0.25, 4.0, 5);
  CHECK(grid.front() == 0.25);
  CHECK(grid.back() == 4.0);
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
  CHECK_THROWS_AS(geometric_grid(0.0, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(geometric_grid(2.0, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(geometric_grid(1.0, 2.0, 0), std::invalid_argument);
}

TEST_CASE("weaktype sweep with a fractional exponent and given order") {
  const Lattice lat{12, 12};
  Rng rng(55);
  const GridFunction<double> f = random_grid(lat, rng);
  const ShearMap twist = ShearMap::bilinear(2, {{0, 1, 1, 1.0}}, "twist:1");
  const FracExponents exps = FracExponents::from_pq(1.5, 3.0);  // alpha = 1/3
  const auto field = frac_max_field(f, twist, exps, RectFamily::All);
  const double mx = field.values.maxCoeff();
  const auto lambdas = geometric_grid(0.2 * mx, mx, 6);
  for (WitnessOrder order : {WitnessOrder::Given, WitnessOrder::VolumeDesc}) {
    const WeaktypeResult res = weaktype_sweep(f, twist, exps, RectFamily::All, lambdas, order);
    REQUIRE(res.rows.size() == 6);
    CHECK(res.rows.back().empty);
    bool any = false;
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
      if (i > 0) CHECK(res.rows[i].vol_U <= res.rows[i - 1].vol_U);
      CHECK(std::isfinite(res.rows[i].score));
      any = any || !res.rows[i].empty;
      if (!res.rows[i].empty) CHECK(res.rows[i].n_selected >= 1);
    }
    CHECK(any);
  }
}
