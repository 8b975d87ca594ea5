#pragma once

#include <vector>

#include "ringwalk/ring.hpp"

namespace ringwalk {

// one stationary point of the dispersion, with its signed curvature.
// divergent marks a band bottom whose curvature sum does not converge
// (gamma <= 3 on the infinite ring); second_derivative is +inf there.
struct StationaryPoint {
  double theta0;
  double energy;
  double second_derivative;
  bool divergent;
};

struct SpaParams {
  double gamma;
  std::vector<StationaryPoint> points;
};

// infinite-ring dispersion curvature at the band edges.  theta0 = 0:
// 2 zeta(gamma-2) for gamma > 3, +inf for gamma <= 3.  theta0 = pi:
// -2 eta(gamma-2), always finite, -1 at gamma = 2.
double second_derivative_infinite(double gamma, double theta0);

// finite-ring curvature 2 sum_R w_R R^(2-gamma) cos(theta0 R); any theta0
double second_derivative_finite(const RingSpec& spec, double theta0);

// top of the infinite-ring band: 4 (1 - 2^-gamma) zeta(gamma), 4 in the
// nearest-neighbor limit
double band_maximum_infinite(double gamma);

// dispersion value at theta = pi
double band_maximum_finite(const RingSpec& spec);

// stationary points entering the long-time return estimate.  gamma = 2 has a
// single one (the dispersion is linear at the band bottom); 2 < gamma <= 3
// adds the band bottom flagged divergent; gamma > 3 has two regular points.
SpaParams spa_params_infinite(double gamma);

// finite rings always have two regular points
SpaParams spa_params_finite(const RingSpec& spec);

// long-time node-averaged quantum return estimates.  Piecewise in gamma:
//   gamma = 2          ->  1 / (2 pi t)
//   2 < gamma <= 3     ->  1 / (2 pi t eta(gamma-2))
//   gamma > 3 and inf  ->  two-point interference formula, reducing to
//                          [1 + sin 4t] / (2 pi t) in the nearest-neighbor
//                          limit
// The gamma -> 2+ and gamma -> 3+ ends of the middle branch differ from the
// adjacent branches by a factor of 2; callers comparing against exact data
// should sample at envelope maxima where the estimates are calibrated.
double spa_return_infinite(double gamma, double t);

// two-point estimate built from the finite-ring curvatures
double spa_return_finite(const RingSpec& spec, double t);

// infinite-line nearest-neighbor quantum return, squared bessel function
double line_quantum_return(double t);

}  // namespace ringwalk
