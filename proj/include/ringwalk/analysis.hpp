#pragma once

#include <map>
#include <string>
#include <vector>

#include "ringwalk/dynamics.hpp"
#include "ringwalk/spectral.hpp"

namespace ringwalk {

struct FitResult {
  std::map<std::string, double> params;
  double residual;    // root-mean-square residual in fit coordinates
  double window_lo;
  double window_hi;
  int n_points;
  bool converged;
};

// strict three-point local maxima, interior indices only
std::vector<Eigen::Index> local_maxima_indices(const Eigen::VectorXd& values);

// linear regression of log(value) on log(t) inside [t_lo, t_hi] (inclusive).
// use_envelope restricts the regression to local maxima of the series.
// Nonpositive values are skipped; fewer than 10 usable points is an error.
// params: "slope", "intercept" (natural-log intercept).
FitResult fit_power_law(const TimeSeries& series, double t_lo, double t_hi,
                        bool use_envelope);

// least squares for the band-family exponents on interior bins (outermost bin
// at each edge excluded): density^-2 is fitted to scale * (c E^alpha - E^beta)
// with c = e_max^(beta - alpha), alpha in [0,1], beta in (alpha, 2], and the
// scale profiled out.  Multistart Nelder-Mead over the box; ties broken by
// residual then lower beta.  params: "alpha", "beta", "scale".
FitResult fit_dos_exponents(const DosEstimate& dos, double e_max);

// log-log regression of MSD against return^-2 on the grid; for the quantum
// kind both observables are sampled at the return-series envelope maxima.
// The classical relation requires gamma > 3 and is refused otherwise.
// params: "slope", "intercept".
FitResult msd_return_relation_check(const RingSpec& spec, const TimeGrid& grid,
                                    WalkKind kind);

struct UniversalityReport {
  std::string classical_verdict;  // "normal-diffusive" or "anomalous"
  std::string quantum_verdict;    // "universal" or "non-universal"
};

// verdicts from four named fits: "classical_return", "quantum_return_envelope",
// "classical_msd", "quantum_msd" (slopes).  classical normal-diffusive when
// return ~ t^-1/2 and MSD ~ t; quantum universal when the envelope ~ t^-1 and
// MSD ~ t^2; tolerance 0.1 on each exponent.
UniversalityReport classify_universality(const RingSpec& spec,
                                         const std::map<std::string, FitResult>& fits);

struct RingClassification {
  std::map<std::string, FitResult> fits;
  UniversalityReport report;
};

// runs the four default fits and classifies.  Windows: classical observables
// on t in [10, 1000] (log grid), quantum envelope on [20, 200] (linear grid),
// quantum MSD on [1, 100] (log grid).
RingClassification classify_ring(const RingSpec& spec);

}  // namespace ringwalk
