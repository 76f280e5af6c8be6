#include "maxrect/cli.hpp"

#include <CLI11.hpp>

#include <string>
#include <vector>

namespace cli = maxrect::cli;

int main(int argc, char** argv) {
  CLI::App app{"strong / fractional / sheared maximal operators over lattice rectangles"};
  app.require_subcommand(1);

  cli::MaxfieldConfig mf;
  cli::WeaktypeConfig wt;
  cli::CoveringConfig cv;
  cli::ScalingConfig sc;
  cli::VerifyConfig vf;

  auto add_exponents = [](CLI::App* cmd, cli::ExponentFlags& fl) {
    cmd->add_option("--alpha", fl.alpha, "fractional exponent in [0,1)");
    cmd->add_option("--p", fl.p, "source exponent, > 1");
    cmd->add_option("--q", fl.q, "target exponent, >= p");
  };

  CLI::App* maxfield = app.add_subcommand("maxfield", "compute a maximal field and write it as .grid");
  maxfield->add_option("--grid", mf.grid_path, "input .grid file or gen:<spec>")->required();
  maxfield->add_option("--shear", mf.shear_spec, "zero | heisenberg:<mu> | file:<path>");
  add_exponents(maxfield, mf.exps);
  maxfield->add_option("--family", mf.family, "all | dyadic-sides | dyadic");
  maxfield->add_option("--boundary", mf.boundary, "torus | zero");
  maxfield->add_option("--seed", mf.seed, "seed for gen: grid specs");
  maxfield->add_option("--out", mf.out_path, "output .grid path")->required();

  CLI::App* weaktype = app.add_subcommand("weaktype", "threshold sweep with witness covers and selection");
  weaktype->add_option("--grid", wt.grid_path, "input .grid file or gen:<spec>")->required();
  weaktype->add_option("--shear", wt.shear_spec, "zero | heisenberg:<mu> | file:<path>");
  add_exponents(weaktype, wt.exps);
  weaktype->add_option("--family", wt.family, "all | dyadic-sides | dyadic");
  weaktype->add_option("--boundary", wt.boundary, "torus | zero");
  weaktype->add_option("--lambda-min", wt.lambda_min, "smallest threshold (default 0.01 * max field)");
  weaktype->add_option("--lambda-max", wt.lambda_max, "largest threshold (default max field)");
  weaktype->add_option("--lambda-count", wt.lambda_count, "geometric grid size (default 20)");
  weaktype->add_option("--order", wt.order, "witness order: given | volume-desc");
  weaktype->add_option("--seed", wt.seed, "seed for gen: grid specs");
  weaktype->add_option("--out", wt.out_path, "output CSV path")->required();

  CLI::App* covering = app.add_subcommand("covering", "greedy selection over a .rects file");
  covering->add_option("--rects", cv.rects_path, "input .rects file")->required();
  covering->add_option("--extents", cv.extents, "lattice extents, e.g. --extents 64 64")->required();
  covering->add_option("--order", cv.order, "scan order: given | volume-desc");
  covering->add_option("--p-list", cv.p_list, "exponents for the overlap norms");
  covering->add_option("--out", cv.out_path, "per-rectangle CSV path ('.summary.csv' added for totals)")
      ->required();

  CLI::App* scaling = app.add_subcommand("scaling", "cube-indicator norm ratios across sides");
  scaling->add_option("--extents", sc.extents, "lattice extents")->required();
  scaling->add_option("--shear", sc.shear_spec, "zero | heisenberg:<mu> | file:<path>");
  add_exponents(scaling, sc.exps);
  scaling->add_option("--family", sc.family, "all | dyadic-sides | dyadic");
  scaling->add_option("--boundary", sc.boundary, "torus | zero");
  scaling->add_option("--sizes", sc.sizes, "cube sides (powers of two)")->required();
  scaling->add_option("--out", sc.out_path, "output CSV path")->required();

  CLI::App* verify = app.add_subcommand("verify", "run the whole invariant suite");
  verify->add_option("--seed", vf.seed, "base seed");
  verify->add_option("--sizes", vf.sizes, "2D and 3D per-axis extents (default 8 5)");
  verify->add_option("--trials", vf.trials, "trials per randomized check");
  verify->add_option("--inject-fault", vf.inject_fault,
                     "none | tie-strict | shear-no-wrap (testing hook; suite must fail)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kBadConfig;
  }

  if (maxfield->parsed()) return cli::cmd_maxfield(mf);
  if (weaktype->parsed()) return cli::cmd_weaktype(wt);
  if (covering->parsed()) return cli::cmd_covering(cv);
  if (scaling->parsed()) return cli::cmd_scaling(sc);
  if (verify->parsed()) return cli::cmd_verify(vf);
  return cli::kBadConfig;
}
