#include "maxrect/cli.hpp"

#include "maxrect/experiments.hpp"
#include "maxrect/io.hpp"
#include "maxrect/verify.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

namespace maxrect::cli {
namespace {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ExponentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Resolved {
  double alpha = 0.0;
  std::optional<FracExponents> exps;  // present when p and q are pinned down
};

Resolved resolve_exponents(const ExponentFlags& fl) {
  try {
    if (fl.p && fl.q && fl.alpha) return {*fl.alpha, FracExponents::make(*fl.p, *fl.q, *fl.alpha)};
    if (fl.p && fl.q) {
      const FracExponents e = FracExponents::from_pq(*fl.p, *fl.q);
      return {e.alpha, e};
    }
    if (fl.p && fl.alpha) return {*fl.alpha, FracExponents::from_p_alpha(*fl.p, *fl.alpha)};
    if (fl.q && fl.alpha) return {*fl.alpha, FracExponents::from_q_alpha(*fl.q, *fl.alpha)};
    if (fl.alpha) {
      if (!(0.0 <= *fl.alpha && *fl.alpha < 1.0))
        throw ExponentError("alpha must lie in [0, 1)");
      return {*fl.alpha, std::nullopt};
    }
    if (fl.p || fl.q) throw ExponentError("a lone p or q does not pin the exponents; add a second one");
    return {0.0, std::nullopt};
  } catch (const ExponentError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ExponentError(e.what());
  }
}

RectFamily resolve_family(const std::optional<std::string>& flag, const Lattice& lat) {
  if (!flag) return default_family(lat);
  const auto fam = parse_family(*flag);
  if (!fam) throw ConfigError("unknown family: " + *flag + " (all | dyadic-sides | dyadic)");
  return *fam;
}

Boundary resolve_boundary(const std::string& flag) {
  if (flag == "torus") return Boundary::Torus;
  if (flag == "zero") return Boundary::Zero;
  throw ConfigError("unknown boundary: " + flag + " (torus | zero)");
}

WitnessOrder resolve_order(const std::string& flag) {
  if (flag == "given") return WitnessOrder::Given;
  if (flag == "volume-desc") return WitnessOrder::VolumeDesc;
  throw ConfigError("unknown order: " + flag + " (given | volume-desc)");
}

Lattice lattice_from_extents(const std::vector<int>& extents) {
  if (extents.empty()) throw ConfigError("missing lattice extents");
  ArrayXi e(static_cast<Eigen::Index>(extents.size()));
  for (std::size_t i = 0; i < extents.size(); ++i) {
    if (extents[i] < 1) throw ConfigError("extents must be positive");
    e[static_cast<Eigen::Index>(i)] = extents[i];
  }
  return Lattice(e);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write output file: " + path);
  return out;
}

Lattice parse_extent_spec(const std::string& s) {
  std::vector<int> extents;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t used = 0;
    int e = 0;
    try {
      e = std::stoi(s.substr(pos), &used);
    } catch (const std::exception&) {
      throw ConfigError("bad extent list: " + s);
    }
    extents.push_back(e);
    pos += used;
    if (pos < s.size()) {
      if (s[pos] != 'x') throw ConfigError("bad extent list: " + s);
      ++pos;
    }
  }
  return lattice_from_extents(extents);
}

// A grid argument is a file path, or a seeded generator spec
// (gen:uniform:..., gen:sparse:..., gen:cube:...).
GridFunction<double> load_grid(const std::string& spec, std::uint64_t seed) {
  if (spec.rfind("gen:", 0) != 0) return read_grid(spec);
  const std::string body = spec.substr(4);
  Rng rng(seed);
  if (body.rfind("uniform:", 0) == 0) return random_grid(parse_extent_spec(body.substr(8)), rng);
  if (body.rfind("sparse:", 0) == 0) {
    const std::string rest = body.substr(7);
    const std::size_t colon = rest.find(':');
    if (colon == std::string::npos) throw ConfigError("gen:sparse needs <density>:<extents>");
    const double density = std::stod(rest.substr(0, colon));
    if (!(density > 0.0 && density <= 1.0)) throw ConfigError("sparse density must be in (0, 1]");
    return random_sparse_indicator(parse_extent_spec(rest.substr(colon + 1)), rng, density);
  }
  if (body.rfind("cube:", 0) == 0) {
    const std::string rest = body.substr(5);
    const std::size_t colon = rest.find(':');
    if (colon == std::string::npos) throw ConfigError("gen:cube needs <side>:<extents>");
    const int side = std::stoi(rest.substr(0, colon));
    return cube_indicator(parse_extent_spec(rest.substr(colon + 1)), side);
  }
  throw ConfigError("unknown grid generator: " + spec +
                    " (gen:uniform:<extents> | gen:sparse:<density>:<extents> | "
                    "gen:cube:<side>:<extents>)");
}

template <class F>
int guard(F&& fn) {
  try {
    return fn();
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const ExponentError& e) {
    std::cerr << "error: exponents: " << e.what() << "\n";
    return kInvariant;
  } catch (const VerificationError& e) {
    std::cerr << "error: verification: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvariant;
  }
}

}  // namespace

int cmd_maxfield(const MaxfieldConfig& cfg) {
  return guard([&] {
    const GridFunction<double> f = load_grid(cfg.grid_path, cfg.seed);
    const ShearMap rho = parse_shear_spec(cfg.shear_spec, f.lattice.dims());
    const Resolved res = resolve_exponents(cfg.exps);
    const RectFamily family = resolve_family(cfg.family, f.lattice);
    FieldOptions fopts;
    fopts.boundary = resolve_boundary(cfg.boundary);
    if (cfg.out_path.empty()) throw ConfigError("missing --out path");

    const MaximalField<double> field =
        frac_max_field_result(f, rho, res.alpha, family, fopts).field;
    write_grid(cfg.out_path, field.lattice, field.values);

    auto stats = open_out(cfg.out_path + ".stats.csv");
    CsvWriter csv(stats);
    csv.header({"alpha", "family", "max", "min", "mean"});
    csv.begin_row();
    csv.col(res.alpha)
        .col(to_string(family))
        .col(field.values.maxCoeff())
        .col(field.values.minCoeff())
        .col(field.values.mean());
    csv.end_row();

    std::cout << "maxfield: wrote " << cfg.out_path << " (alpha=" << format_double(res.alpha)
              << ", family=" << to_string(family) << ", max=" << format_double(field.values.maxCoeff())
              << ")\n";
    return kOk;
  });
}

int cmd_weaktype(const WeaktypeConfig& cfg) {
  return guard([&] {
    const GridFunction<double> f = load_grid(cfg.grid_path, cfg.seed);
    const ShearMap rho = parse_shear_spec(cfg.shear_spec, f.lattice.dims());
    const Resolved res = resolve_exponents(cfg.exps);
    if (!res.exps) throw ConfigError("weaktype needs a full exponent pair (two of alpha/p/q)");
    const RectFamily family = resolve_family(cfg.family, f.lattice);
    const WitnessOrder order = resolve_order(cfg.order);
    FieldOptions fopts;
    fopts.boundary = resolve_boundary(cfg.boundary);
    fopts.witnesses = true;
    if (cfg.out_path.empty()) throw ConfigError("missing --out path");
    if (cfg.lambda_count < 1) throw ConfigError("lambda count must be >= 1");

    const FieldResult<double> fr = frac_max_field_result(f, rho, res.alpha, family, fopts);
    const double fmax = fr.field.values.maxCoeff();
    if (!(fmax > 0.0)) throw ConfigError("field is identically zero; nothing to sweep");
    const double lo = cfg.lambda_min.value_or(0.01 * fmax);
    const double hi = cfg.lambda_max.value_or(fmax);
    const std::vector<double> lambdas = geometric_grid(lo, hi, cfg.lambda_count);

    const WeaktypeResult sweep =
        weaktype_sweep(fr, f, rho, *res.exps, lambdas, order, fopts.boundary);

    auto out = open_out(cfg.out_path);
    CsvWriter csv(out);
    csv.header({"lambda", "vol_U", "score", "empty", "n_witness", "n_selected", "vol_union_all",
                "vol_union_selected", "sum_selected_integrals", "overlap_norm_dual"});
    bool any_nonempty = false;
    double max_score = 0.0;
    for (const WeaktypeRow& row : sweep.rows) {
      any_nonempty = any_nonempty || !row.empty;
      max_score = std::max(max_score, row.score);
      csv.begin_row();
      csv.col(row.lambda)
          .col(row.vol_U)
          .col(row.score)
          .col(row.empty ? 1 : 0)
          .col(row.n_witness)
          .col(row.n_selected)
          .col(row.vol_union_all)
          .col(row.vol_union_selected)
          .col(row.sum_selected_integrals)
          .col(row.overlap_norm_dual);
      csv.end_row();
    }
    if (!any_nonempty) {
      std::cerr << "error: every lambda in the sweep produced an empty level set\n";
      return kDegenerateSweep;
    }
    std::cout << "weaktype: wrote " << cfg.out_path << " (" << sweep.rows.size()
              << " rows, max score " << format_double(max_score) << ")\n";
    return kOk;
  });
}

int cmd_covering(const CoveringConfig& cfg) {
  return guard([&] {
    const Lattice lat = lattice_from_extents(cfg.extents);
    std::vector<Rect> rects = read_rects(cfg.rects_path, lat);
    if (rects.empty()) throw ConfigError("rects file contains no rectangles: " + cfg.rects_path);
    if (cfg.out_path.empty()) throw ConfigError("missing --out path");
    for (double p : cfg.p_list)
      if (!(p > 1.0)) throw ConfigError("overlap norms need p > 1");
    std::vector<int> file_pos(rects.size());
    for (std::size_t i = 0; i < rects.size(); ++i) file_pos[i] = static_cast<int>(i);
    if (resolve_order(cfg.order) == WitnessOrder::VolumeDesc) {
      std::stable_sort(file_pos.begin(), file_pos.end(), [&](int a, int b) {
        return volume_cells(rects[static_cast<std::size_t>(a)]) >
               volume_cells(rects[static_cast<std::size_t>(b)]);
      });
      std::vector<Rect> sorted;
      sorted.reserve(rects.size());
      for (int i : file_pos) sorted.push_back(rects[static_cast<std::size_t>(i)]);
      rects = std::move(sorted);
    }

    const CoveringResult res = covering_select(rects, lat);
    for (const CheckReport& rep :
         {verify_halfoverlap(res), verify_rejected(res), verify_halfmax(res)})
      if (!rep.pass) throw VerificationError("selection check failed: " + rep.detail);

    {
      auto out = open_out(cfg.out_path);
      CsvWriter csv(out);
      csv.header({"k", "index", "volume", "overlap", "accepted"});
      std::size_t next_sel = 0;
      for (int i = 0; i < static_cast<int>(rects.size()); ++i) {
        const bool accepted =
            next_sel < res.selected.size() && res.selected[next_sel] == i;
        if (accepted) ++next_sel;
        csv.begin_row();
        csv.col(i)
            .col(file_pos[static_cast<std::size_t>(i)])
            .col(volume_cells(res.input[static_cast<std::size_t>(i)]))
            .col(res.overlap_at_turn[static_cast<std::size_t>(i)])
            .col(accepted ? 1 : 0);
        csv.end_row();
      }
    }
    const UnionVolumes uv = union_volumes(res);
    {
      auto out = open_out(cfg.out_path + ".summary.csv");
      CsvWriter csv(out);
      csv.header({"n_input", "n_selected", "vol_union_all", "vol_union_selected", "est1_ratio",
                  "p", "overlap_norm", "overlap_ratio"});
      for (double p : cfg.p_list) {
        const OverlapNorm on = overlap_lp(res, p);
        csv.begin_row();
        csv.col(static_cast<Index>(rects.size()))
            .col(static_cast<Index>(res.selected.size()))
            .col(uv.vol_all)
            .col(uv.vol_selected)
            .col(uv.ratio)
            .col(p)
            .col(on.norm)
            .col(on.ratio);
        csv.end_row();
      }
    }
    std::cout << "covering: " << res.selected.size() << "/" << rects.size()
              << " selected, union ratio " << format_double(uv.ratio) << ", wrote " << cfg.out_path
              << "\n";
    return kOk;
  });
}

int cmd_scaling(const ScalingConfig& cfg) {
  return guard([&] {
    const Lattice lat = lattice_from_extents(cfg.extents);
    const ShearMap rho = parse_shear_spec(cfg.shear_spec, lat.dims());
    const Resolved res = resolve_exponents(cfg.exps);
    if (!res.exps) throw ConfigError("scaling needs a full exponent pair (two of alpha/p/q)");
    const RectFamily family = resolve_family(cfg.family, lat);
    FieldOptions fopts;
    fopts.boundary = resolve_boundary(cfg.boundary);
    if (cfg.out_path.empty()) throw ConfigError("missing --out path");
    if (cfg.sizes.empty()) throw ConfigError("missing cube sides (--sizes)");
    for (int s : cfg.sizes) {
      if (s < 1 || (s & (s - 1)) != 0) throw ConfigError("cube sides must be powers of two");
      if (s > lat.extents().minCoeff()) throw ConfigError("cube side does not fit the grid");
    }

    const std::vector<ScalingRow> rows = scaling_run(lat, rho, *res.exps, family, cfg.sizes, fopts);
    auto out = open_out(cfg.out_path);
    CsvWriter csv(out);
    csv.header({"side", "field_norm_q", "f_norm_p", "ratio"});
    for (const ScalingRow& row : rows) {
      csv.begin_row();
      csv.col(row.side).col(row.field_norm_q).col(row.f_norm_p).col(row.ratio);
      csv.end_row();
    }
    std::cout << "scaling: wrote " << cfg.out_path << " (" << rows.size() << " sides)\n";
    return kOk;
  });
}

int cmd_verify(const VerifyConfig& cfg) {
  return guard([&] {
    VerifyOptions opts;
    opts.seed = cfg.seed;
    opts.trials = cfg.trials;
    if (cfg.sizes.size() >= 1) opts.size2 = cfg.sizes[0];
    if (cfg.sizes.size() >= 2) opts.size3 = cfg.sizes[1];
    if (opts.size2 < 2 || opts.size3 < 2 || opts.trials < 1)
      throw ConfigError("verify sizes must be >= 2 and trials >= 1");
    const auto fault = parse_fault(cfg.inject_fault);
    if (!fault)
      throw ConfigError("unknown fault: " + cfg.inject_fault +
                        " (none | tie-strict | shear-no-wrap)");
    opts.fault = *fault;
    const VerifySummary summary = run_verify(opts, std::cout);
    return summary.ok() ? kOk : kVerifyFailed;
  });
}

}  // namespace maxrect::cli
