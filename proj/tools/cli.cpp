#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hsdp/baselines.hpp"
#include "hsdp/delivery.hpp"
#include "hsdp/design.hpp"
#include "hsdp/errors.hpp"
#include "hsdp/io.hpp"

namespace hsdp::cli {

namespace {

namespace fs = std::filesystem;

fs::path output_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("HSDP_OUT_DIR")) return env;
  return ".";
}

fs::path resolve(const fs::path& dir, const std::string& name) {
  fs::path p(name);
  return p.is_absolute() ? p : dir / p;
}

struct Options {
  // construct / optimize parameters
  int antennas = 0;
  int tail = 0;  // 0 = minimal
  bool bump_tail = false;
  std::vector<long long> dims;
  long long modulus = 0;
  long long q = 0;
  int n = 1;
  long long search_modulus = 0;
  bool drop_virtual = false;
  long long virtual_column = -1;  // -1 = last

  // shared I/O
  std::string dir_flag;
  std::string hsdp_path;
  std::string mapda_path;
  std::string out_hsdp = "hsdp.json";
  std::string out_mapda = "mapda.json";
  std::string out_point = "design_point.json";
  std::string out_report = "sim_report.json";
  std::string out_csv = "compare.csv";
  std::string channel_path;
  std::string ours_path;
  bool pretty = false;

  // simulate
  std::uint64_t seed = kDefaultSeed;
  std::vector<long long> demands;

  // compare
  long long users = 0;
  std::vector<long long> extra_t;
};

int tail_or_minimal(const Options& opt) {
  int tail = opt.tail > 0 ? opt.tail : minimal_tail(opt.antennas);
  if (opt.bump_tail && tail == 1 && opt.antennas != 2) tail = 2;
  return tail;
}

int cmd_construct(const Options& opt) {
  const fs::path dir = output_dir(opt.dir_flag);
  ConstructionParams params{opt.antennas, tail_or_minimal(opt), opt.dims,
                            opt.modulus};
  Hsdp packing = construct_hsdp(params);
  HsdpVerifyReport packing_report = verify_hsdp(packing);
  render_hsdp_report(std::cout, packing_report);
  if (!packing_report.pass()) return kExitVerifyFailed;

  Mapda array = build_mapda(packing);
  if (opt.drop_virtual) {
    const long long before = array.symbol_count();
    std::optional<long long> column;
    if (opt.virtual_column >= 0) column = opt.virtual_column;
    array = drop_virtual_user(array, column);
    if (array.symbol_count() != before)
      std::cout << "virtual-user drop removed "
                << before - array.symbol_count() << " symbols\n";
  }
  MapdaVerifyReport array_report = verify_mapda(array);
  render_mapda_report(std::cout, array_report);
  if (!array_report.pass()) return kExitVerifyFailed;

  fs::create_directories(dir);
  save_hsdp(resolve(dir, opt.out_hsdp), packing);
  save_mapda(resolve(dir, opt.out_mapda), array);
  if (opt.pretty) render_mapda(std::cout, array);

  SchemeParams sp = scheme_params(array);
  std::cout << "wrote " << resolve(dir, opt.out_hsdp).string() << " and "
            << resolve(dir, opt.out_mapda).string() << "\n"
            << "scheme (L,K,F,Z,S) = (" << sp.antennas << ',' << sp.users << ','
            << sp.subpacketization << ',' << sp.stars << ',' << sp.symbols
            << ") M/N = " << to_string(sp.memory_ratio)
            << " sum-DoF = " << to_string(sp.sum_dof) << "\n";
  return kExitOk;
}

int cmd_verify(const Options& opt) {
  std::optional<int> antennas_override;
  if (opt.antennas > 0) antennas_override = opt.antennas;
  if (!opt.hsdp_path.empty()) {
    Hsdp packing = load_hsdp(opt.hsdp_path);
    if (antennas_override) packing.antennas = *antennas_override;
    HsdpVerifyReport report = verify_hsdp(packing);
    render_hsdp_report(std::cout, report);
    return report.pass() ? kExitOk : kExitVerifyFailed;
  }
  Mapda array = load_mapda(opt.mapda_path, antennas_override);
  MapdaVerifyReport report = verify_mapda(array);
  if (opt.pretty) render_mapda(std::cout, array);
  render_mapda_report(std::cout, report);
  return report.pass() ? kExitOk : kExitVerifyFailed;
}

int cmd_optimize(const Options& opt) {
  const fs::path dir = output_dir(opt.dir_flag);
  std::optional<int> tail;
  if (opt.tail > 0) tail = opt.tail;
  DesignPoint point;
  std::optional<long long> gap_product;
  if (opt.search_modulus > 0) {
    SearchReport report = search_best(opt.search_modulus, opt.antennas, opt.n, tail);
    point = report.best;
    gap_product = report.closed_form_product;
  } else {
    point = closed_form_point(opt.antennas, opt.q, opt.n, tail);
  }
  fs::create_directories(dir);
  save_design_point(resolve(dir, opt.out_point), point);
  std::cout << "v=" << point.modulus << " g=" << point.block_size()
            << " b=" << point.block_count()
            << " M/N=" << to_string(point.memory_ratio()) << "\n";
  if (gap_product) {
    long long best = point.block_count();
    std::cout << "closed-form product for this modulus: " << *gap_product
              << " (search found " << best << ", gap " << best - *gap_product
              << ")\n";
  }
  std::cout << "wrote " << resolve(dir, opt.out_point).string() << "\n";
  return kExitOk;
}

int cmd_simulate(const Options& opt) {
  const fs::path dir = output_dir(opt.dir_flag);
  std::optional<int> antennas_override;
  if (opt.antennas > 0) antennas_override = opt.antennas;
  Mapda array = load_mapda(opt.mapda_path, antennas_override);
  MapdaVerifyReport array_report = verify_mapda(array);
  if (!array_report.pass()) {
    render_mapda_report(std::cout, array_report);
    return kExitVerifyFailed;
  }
  ChannelMatrix channel =
      opt.channel_path.empty()
          ? ChannelMatrix::random(array.cols(), array.antennas(), opt.seed)
          : load_channel_csv(opt.channel_path, array.cols(), array.antennas());
  SimOptions sim_options;
  sim_options.seed = opt.seed;
  SimReport report = simulate(array, channel, opt.demands, sim_options);
  fs::create_directories(dir);
  save_sim_report(resolve(dir, opt.out_report), report);
  std::cout << "S=" << report.intervals_run << " served/interval="
            << to_string(report.measured_sum_dof)
            << " sum-DoF=" << to_string(report.measured_sum_dof)
            << " max-residual=" << report.max_null_residual << "\n"
            << "wrote " << resolve(dir, opt.out_report).string() << "\n";
  return kExitOk;
}

int cmd_compare(const Options& opt) {
  const fs::path dir = output_dir(opt.dir_flag);
  std::vector<SweepPoint> points;
  if (!opt.ours_path.empty())
    for (DesignPoint& point : load_design_points(opt.ours_path))
      points.emplace_back(std::move(point));
  for (long long t : opt.extra_t) points.emplace_back(t);
  if (points.empty())
    throw std::invalid_argument("nothing to compare: pass --ours-from or --t");
  std::vector<SweepRow> rows = compare_sweep(opt.users, opt.antennas, points);
  fs::create_directories(dir);
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  write_text_file(resolve(dir, opt.out_csv), csv.str());
  std::cout << "wrote " << rows.size() << " rows to "
            << resolve(dir, opt.out_csv).string() << "\n";
  return kExitOk;
}

}  // namespace

int run(std::vector<std::string> args) {
  CLI::App app{"Construction, verification, delivery simulation and baseline "
               "comparison for linear-subpacketization MISO coded caching"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* construct = app.add_subcommand(
      "construct", "Build a packing and its delivery array, verify both");
  construct->add_option("--L", opt.antennas, "transmit antennas")->required();
  construct->add_option("--m", opt.dims, "block dimensions m_1,...,m_n")
      ->required()->delimiter(',');
  construct->add_option("--v", opt.modulus, "odd modulus (users K = v)")->required();
  construct->add_option("--r", opt.tail, "tail length (default: minimal)");
  construct->add_flag("--bump-tail", opt.bump_tail,
                      "use tail 2 when tail 1 would be degenerate");
  construct->add_option("--out-hsdp", opt.out_hsdp, "packing output file");
  construct->add_option("--out-mapda", opt.out_mapda, "array output file");
  construct->add_option("--outdir", opt.dir_flag,
                        "output directory (default $HSDP_OUT_DIR or .)");
  construct->add_flag("--drop-virtual-user", opt.drop_virtual,
                      "serve one user fewer: delete a column before writing");
  construct->add_option("--virtual-column", opt.virtual_column,
                        "which column to treat as virtual (default: last)");
  construct->add_flag("--pretty", opt.pretty, "print the array");

  CLI::App* verify = app.add_subcommand("verify", "Check a packing or array file");
  verify->add_option("--hsdp", opt.hsdp_path, "packing JSON file");
  verify->add_option("--mapda", opt.mapda_path, "array JSON file");
  verify->add_option("--L", opt.antennas, "override the antenna count");
  verify->add_flag("--pretty", opt.pretty, "print the array before the report");

  CLI::App* optimize = app.add_subcommand(
      "optimize", "Pick block dimensions: closed form (--q) or search (--search-v)");
  optimize->add_option("--L", opt.antennas, "transmit antennas")->required();
  optimize->add_option("--q", opt.q, "closed-form parameter q");
  optimize->add_option("--n", opt.n, "number of block dimensions")->required();
  optimize->add_option("--search-v", opt.search_modulus,
                       "exhaustive search for this odd modulus");
  optimize->add_option("--r", opt.tail, "tail length (default: minimal)");
  optimize->add_option("--out", opt.out_point, "design point output file");
  optimize->add_option("--outdir", opt.dir_flag, "output directory");

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Zero-forcing delivery over every symbol of an array");
  simulate->add_option("--mapda", opt.mapda_path, "array JSON file")->required();
  simulate->add_option("--L", opt.antennas, "override the antenna count");
  simulate->add_option("--seed", opt.seed, "payload/channel seed");
  simulate->add_option("--channel-file", opt.channel_path,
                       "CSV channel (real, or re,im pairs)");
  simulate->add_option("--demands", opt.demands, "1-based file per user")
      ->delimiter(',');
  simulate->add_option("--out", opt.out_report, "report output file");
  simulate->add_option("--outdir", opt.dir_flag, "output directory");

  CLI::App* compare = app.add_subcommand(
      "compare", "Emit the scheme-comparison CSV for one (K, L)");
  compare->add_option("--k", opt.users, "number of users")->required();
  compare->add_option("--l", opt.antennas, "transmit antennas")->required();
  compare->add_option("--ours-from", opt.ours_path, "design points JSON");
  compare->add_option("--t", opt.extra_t, "baseline-only memory parameters")
      ->delimiter(',');
  compare->add_option("--out", opt.out_csv, "CSV output file");
  compare->add_option("--outdir", opt.dir_flag, "output directory");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitBadParams;
  }

  try {
    if (construct->parsed()) return cmd_construct(opt);
    if (verify->parsed()) {
      if (opt.hsdp_path.empty() == opt.mapda_path.empty())
        throw std::invalid_argument("pass exactly one of --hsdp / --mapda");
      return cmd_verify(opt);
    }
    if (optimize->parsed()) {
      if ((opt.q > 0) == (opt.search_modulus > 0))
        throw std::invalid_argument("pass exactly one of --q / --search-v");
      return cmd_optimize(opt);
    }
    if (simulate->parsed()) return cmd_simulate(opt);
    if (compare->parsed()) return cmd_compare(opt);
    return kExitBadParams;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const DegenerateRecursion& e) {
    std::cerr << "degenerate parameters: " << e.what() << "\n";
    return kExitBadParams;
  } catch (const ModulusTooSmall& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitBadParams;
  } catch (const NonIntegralBlockDim& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitBadParams;
  } catch (const NoFeasiblePoint& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitBadParams;
  } catch (const RankDeficiency& e) {
    std::cerr << "delivery failed: " << e.what() << "\n";
    return kExitVerifyFailed;
  } catch (const DecodeFailure& e) {
    std::cerr << "delivery failed: " << e.what() << "\n";
    return kExitVerifyFailed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad parameters: " << e.what() << "\n";
    return kExitBadParams;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadParams;
  }
}

}  // namespace hsdp::cli
