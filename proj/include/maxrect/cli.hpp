#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace maxrect::cli {

inline constexpr int kOk = 0;
inline constexpr int kVerifyFailed = 1;
inline constexpr int kBadConfig = 2;
inline constexpr int kIoError = 3;
inline constexpr int kInvariant = 4;
inline constexpr int kDegenerateSweep = 5;

/// Any two of alpha/p/q determine the third; all three together must agree.
struct ExponentFlags {
  std::optional<double> alpha;
  std::optional<double> p;
  std::optional<double> q;
};

// Grid inputs are either a .grid file path or a generator spec:
// gen:uniform:<e1>x<e2>[x...] | gen:sparse:<density>:<extents> |
// gen:cube:<side>:<extents>, drawn from the config seed.
struct MaxfieldConfig {
  std::string grid_path;
  std::string shear_spec = "zero";
  ExponentFlags exps;
  std::optional<std::string> family;  // default picked from the lattice
  std::string boundary = "torus";
  std::uint64_t seed = 1;
  std::string out_path;
};

struct WeaktypeConfig {
  std::string grid_path;
  std::string shear_spec = "zero";
  ExponentFlags exps;  // must resolve to a full (p, q, alpha) triple
  std::optional<std::string> family;
  std::string boundary = "torus";
  std::optional<double> lambda_min;  // default 0.01 * max(field)
  std::optional<double> lambda_max;  // default max(field)
  int lambda_count = 20;
  std::string order = "volume-desc";
  std::uint64_t seed = 1;
  std::string out_path;
};

struct CoveringConfig {
  std::string rects_path;
  std::vector<int> extents;
  std::string order = "given";
  std::vector<double> p_list = {1.5, 2.0, 3.0};
  std::string out_path;
};

struct ScalingConfig {
  std::vector<int> extents;
  std::string shear_spec = "zero";
  ExponentFlags exps;  // must resolve to a full triple
  std::optional<std::string> family;
  std::string boundary = "torus";
  std::vector<int> sizes;  // cube sides, powers of two fitting the grid
  std::string out_path;
};

struct VerifyConfig {
  std::uint64_t seed = 20260810;
  std::vector<int> sizes = {8, 5};  // 2D extent, 3D extent
  int trials = 30;
  std::string inject_fault = "none";
};

int cmd_maxfield(const MaxfieldConfig&);
int cmd_weaktype(const WeaktypeConfig&);
int cmd_covering(const CoveringConfig&);
int cmd_scaling(const ScalingConfig&);
int cmd_verify(const VerifyConfig&);

}  // namespace maxrect::cli
