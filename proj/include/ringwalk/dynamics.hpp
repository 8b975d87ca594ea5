#pragma once

#include <Eigen/Core>

#include "ringwalk/spectral.hpp"

namespace ringwalk {

enum class WalkKind { classical, quantum };

// strictly increasing sample times, first one >= 0
struct TimeGrid {
  Eigen::VectorXd times;
  explicit TimeGrid(Eigen::VectorXd t);
};

// t_i = t_min * 10^(i / points_per_decade), up to and including t_max
TimeGrid log_time_grid(double t_min, double t_max, int points_per_decade);

// t_i = t_min + i * dt, up to and including t_max
TimeGrid linear_time_grid(double t_min, double t_max, double dt);

struct TimeSeries {
  Eigen::VectorXd times;
  Eigen::VectorXd values;
};

// node-averaged return probability (1/N) sum_m exp(-E_m t).  Any spectrum
// source works: the sum is symmetric in the eigenvalues.
TimeSeries classical_return_avg(const Spectrum& spectrum, const TimeGrid& grid);

// |(1/N) sum_m exp(-i E_m t)|^2
TimeSeries quantum_return_avg(const Spectrum& spectrum, const TimeGrid& grid);

double classical_return_at(const Spectrum& spectrum, double t);
double quantum_return_at(const Spectrum& spectrum, double t);

// probability over nodes for a walk started at node 0, via inverse DFT of the
// mode amplitudes.  Requires a mode-indexed (analytic) spectrum: sorted
// eigenvalues lose the mode-to-node pairing the transform depends on.
Eigen::VectorXd transition_probabilities(const Spectrum& spectrum, double t, WalkKind kind);

// sum_k d(k,0)^2 P_k with the ring distance d(k,0) = min(k, N-k)
double mean_squared_displacement(const Eigen::VectorXd& profile);

TimeSeries msd_series(const Spectrum& spectrum, const TimeGrid& grid, WalkKind kind);

}  // namespace ringwalk
