#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>

#include "ringwalk/experiments.hpp"
#include "ringwalk/io.hpp"
#include "ringwalk/ring.hpp"
#include "ringwalk/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"continuous-time walks on long-range rings"};
  app.set_version_flag("--version", ringwalk::kVersion);
  app.require_subcommand(1);

  ringwalk::ExperimentConfig cfg;
  std::string gamma_str;
  std::string gammas_str;

  CLI::App* run = app.add_subcommand("run", "run an experiment and write its data files");
  run->add_option("experiment", cfg.experiment,
                  "one of: spectrum dos dos-fit return msd spa classify figure1 figure2 figure3")
      ->required();
  run->add_option("--n", cfg.n_nodes, "number of ring nodes");
  run->add_option("--gamma", gamma_str, "coupling decay exponent, >= 2 or 'inf'");
  run->add_option("--gammas", gammas_str, "comma-separated exponents for figure recipes");
  run->add_option("--rmax", cfg.r_max, "coupling range cutoff, default floor(n/2)");
  run->add_option("--tmin", cfg.t_min, "first time point");
  run->add_option("--tmax", cfg.t_max, "last time point");
  run->add_option("--ppd", cfg.points_per_decade, "points per decade for log-spaced grids");
  run->add_option("--dt", cfg.dt, "linear time step; when > 0 it replaces the log grid");
  run->add_option("--bins", cfg.bins, "histogram bin count");
  run->add_option("--out", cfg.out_prefix, "output path prefix, default experiment name");
  run->add_option("--format", cfg.format, "csv or json");
  run->add_option("--kind", cfg.kind, "classical or quantum");
  run->add_option("--method", cfg.method, "spectrum source: analytic or diag");
  run->add_option("--system", cfg.system, "stationary-phase target: finite or infinite");

  bool list_only = false;
  CLI::App* check = app.add_subcommand("selfcheck", "run fast internal consistency checks");
  check->add_flag("--list", list_only, "list check names without running them");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) {
      if (!gamma_str.empty()) cfg.gamma = ringwalk::io::parse_gamma(gamma_str);
      if (!gammas_str.empty()) {
        std::stringstream ss(gammas_str);
        std::string token;
        while (std::getline(ss, token, ',')) {
          cfg.gammas.push_back(ringwalk::io::parse_gamma(token));
        }
      }
      for (const std::string& path : ringwalk::run_experiment(cfg)) {
        std::cout << "wrote " << path << "\n";
      }
      return 0;
    }
    return ringwalk::selfcheck(list_only, std::cout) ? 0 : 3;
  } catch (const ringwalk::GuardError& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
