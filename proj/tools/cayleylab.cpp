// cayleylab: experiments on Gaussian Cayley matrices of finite groups.
//
//   cayleylab group-info --group alt:5
//   cayleylab estimate --group alt:5 --trials 1000 --method block --seed 7
//   cayleylab bounds --group cyclic:16 --format csv
//   cayleylab theorem1-sweep --family cyclic_powers --sizes 4,6,8,10
//   cayleylab spencer --group alt:5 --method local --budget 50

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cayley/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Gaussian Cayley matrix laboratory"};
  app.require_subcommand(1);

  cayley::ExperimentConfig config;
  std::string format = "json";
  std::string out_path;
  std::string cache_dir = ".cayley-cache";
  bool no_cache = false;
  app.add_option("--cache-dir", cache_dir, "Directory for cached irrep spectra")->capture_default_str();
  app.add_flag("--no-cache", no_cache, "Do not read or write the spectrum cache");

  auto add_common = [&](CLI::App* cmd, bool needs_group) {
    auto* group = cmd->add_option("--group", config.group, "Group spec, e.g. cyclic:4, abelian:2x2x3, alt:5");
    if (needs_group) group->required();
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", out_path, "Write output to PATH instead of stdout");
    cmd->add_option("--seed", config.seed, "Master seed")->capture_default_str();
  };

  auto* info = app.add_subcommand("group-info", "Order, classes and irreducible degrees of a group");
  add_common(info, true);

  auto* estimate = app.add_subcommand("estimate", "Monte Carlo estimate of E||X_G||");
  add_common(estimate, true);
  estimate->add_option("--trials", config.trials, "Number of trials")->capture_default_str();
  estimate->add_option("--method", config.method, "direct_real | direct_complex | block")->default_str("block");

  auto* bounds = app.add_subcommand("bounds", "sigma, v, w certificate and m(G)");
  add_common(bounds, true);

  auto* sweep = app.add_subcommand("theorem1-sweep", "Scaling table of E||Z_G|| across a family");
  add_common(sweep, false);
  format = "csv";
  sweep->add_option("--family", config.family, "cyclic_powers | alternating_range")->required();
  sweep->add_option("--sizes", config.sizes, "Exponents k (cyclic 2^k) or degrees k (A_k)")
      ->required()
      ->delimiter(',');
  sweep->add_option("--trials", config.trials, "Trials per row")->capture_default_str();

  auto* spencer = app.add_subcommand("spencer", "Search for signs with small ||sum eps_g rho(g)||");
  add_common(spencer, true);
  spencer->add_option("--method", config.method, "brute | random | local | abelian")->default_str("local");
  spencer->add_option("--budget", config.budget, "Draws, restarts or starts, by method")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  config.subcommand = chosen->get_name();
  // Sweeps default to CSV, everything else to JSON.
  if (chosen != sweep && chosen->count("--format") == 0) format = "json";
  if (!no_cache) config.cache_dir = cache_dir;

  try {
    config.format = cayley::parse_output_format(format);
    if (!out_path.empty()) config.out = out_path;
    const std::string output = cayley::run_command(config);
    if (config.out) {
      std::ofstream file(*config.out, std::ios::binary);
      if (!file) {
        std::cerr << "error: cannot open " << config.out->string() << "\n";
        return 2;
      }
      file << output;
    } else {
      std::cout << output;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cayley::exit_code_for(e);
  }
  return 0;
}
