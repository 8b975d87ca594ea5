#pragma once

namespace ringwalk {

// Riemann zeta on s in (0,1) or s > 1 via Euler-Maclaurin summation
// (cutoff 20, 12 Bernoulli correction terms). Accurate to ~1e-15 over the
// supported range. s <= 0 and the pole s = 1 are rejected.
double riemann_zeta(double s);

// Dirichlet eta (alternating zeta) for s >= 0 via the Cohen-Villegas-Zagier
// alternating-series acceleration (48 terms). Accurate to ~1e-14.
// eta(0) = 1/2 is the continuation value the acceleration converges to.
double dirichlet_eta(double s);

// Bessel function of the first kind, order zero, for x >= 0.
// Power series below x = 16 (long-double accumulation), 12-term asymptotic
// expansion above. Absolute error stays below 1e-10 (worst near the seam).
double bessel_j0(double x);

}  // namespace ringwalk
