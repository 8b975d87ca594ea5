#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ringwalk {

// one CLI invocation's worth of settings; run_experiment validates the
// combination and writes the output files
struct ExperimentConfig {
  std::string experiment;  // spectrum dos dos-fit return msd spa classify figure1 figure2 figure3
  int n_nodes = 10000;
  double gamma = 0.0;          // unset sentinel; figures fall back to the standard four
  std::vector<double> gammas;  // figure recipes
  int r_max = 0;               // 0 = floor(n/2)
  double t_min = 1.0;
  double t_max = 100.0;
  int points_per_decade = 50;
  double dt = 0.0;             // > 0 switches the grid to linear spacing
  int bins = 200;
  std::string out_prefix;      // empty = experiment name
  std::string format;          // csv | json; empty = per-experiment default
  std::string kind = "quantum";     // return / msd
  std::string method = "analytic";  // spectrum: analytic | diag
  std::string system = "finite";    // spa: finite | infinite
};

// returns the paths written, in write order
std::vector<std::string> run_experiment(const ExperimentConfig& config);

// fast verification subset (small rings only).  Prints one line per check to
// `out`; returns true when everything passed.  list_only prints names without
// running anything.
bool selfcheck(bool list_only, std::ostream& out);

}  // namespace ringwalk
