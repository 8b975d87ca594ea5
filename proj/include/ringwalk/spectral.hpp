#pragma once

#include <Eigen/Core>

#include "ringwalk/ring.hpp"

namespace ringwalk {

enum class SpectrumSource { analytic, diagonalized };

struct Spectrum {
  Eigen::VectorXd eigenvalues;  // indexed by Bloch mode m (analytic) or sorted (diagonalized)
  RingSpec spec;
  SpectrumSource source;
};

// E(theta) = sum_{R=1}^{r_max} R^{-gamma} [2 - 2 cos(theta R)], ascending R.
// For even N with r_max = N/2 the antipodal term enters with half weight,
// R^{-gamma} [1 - cos(theta R)], so mode energies match the once-counted
// Hamiltonian exactly.
double bloch_eigenvalue(const RingSpec& spec, double theta);

// N mode energies at theta_m = 2 pi m / N, m = 0..N-1; E(0) = 0 exactly
Spectrum full_spectrum(const RingSpec& spec);

// dense-diagonalization oracle, ascending eigenvalues; guarded at N <= 4096
Spectrum diagonalize_spectrum(const RingSpec& spec);

struct DosEstimate {
  Eigen::VectorXd bin_edges;  // n_bins + 1 edges, uniform over [0, E_max]
  Eigen::VectorXd density;    // counts / (n_total * width)
  Eigen::VectorXi counts;
  long n_total;
};

// Uniform-bin histogram over [0, max eigenvalue]; values at interior edges go
// to the right bin, the top edge clamps into the last bin.
DosEstimate dos_histogram(const Spectrum& spectrum, int n_bins);

// Closed-form infinite-ring density of states for gamma_case in {2, 4, inf}.
// Valid where the expression is finite: [0, pi^2/2) for the gamma=2 case,
// (0, pi^4/24) for gamma=4, (0, 4) for the nearest-neighbor case.
double analytic_dos(double gamma_case, double energy);

// Band-family density [sqrt(c E^alpha - E^beta)]^{-1} with c = e_max^{beta-alpha},
// normalized to unit integral over (0, e_max). alpha in [0,1], beta in (alpha, 2].
double generalized_dos(double alpha, double beta, double e_max, double energy);

// integral of the unnormalized band-family density over (0, e_max)
double generalized_dos_normalization(double alpha, double beta, double e_max);

// infinite-ring dispersions: pi*theta - theta^2/2 and
// theta^4/24 - pi theta^3/6 + pi^2 theta^2/6, for theta in [0, 2 pi)
double dispersion_gamma2(double theta);
double dispersion_gamma4(double theta);

}  // namespace ringwalk
