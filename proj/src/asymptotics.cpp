#include "ringwalk/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "ringwalk/special.hpp"
#include "ringwalk/spectral.hpp"

namespace ringwalk {

namespace {

void check_gamma(double gamma) {
  if (!(gamma >= 2.0)) {
    throw std::invalid_argument("gamma must be >= 2");
  }
}

void check_time(double t) {
  if (!(t > 0.0)) {
    throw std::invalid_argument("long-time estimate needs t > 0");
  }
}

enum class BandEdge { bottom, top };

BandEdge classify_edge(double theta0) {
  if (theta0 == 0.0) return BandEdge::bottom;
  if (std::abs(theta0 - M_PI) < 1e-12) return BandEdge::top;
  throw std::invalid_argument("curvature is tabulated at theta = 0 and theta = pi only");
}

// |amp_bottom e^(-i pi/4) + amp_top e^(-i e_top t + i pi/4)|^2 / (2 pi t)
// with amp = |E''|^(-1/2); the cross term oscillates at the band width
double two_point_return(double t, double d2_bottom, double d2_top, double e_top) {
  double a = std::abs(d2_bottom);
  double b = std::abs(d2_top);
  return (1.0 / a + 1.0 / b + 2.0 * std::sin(e_top * t) / std::sqrt(a * b)) /
         (2.0 * M_PI * t);
}

}  // namespace

double second_derivative_infinite(double gamma, double theta0) {
  check_gamma(gamma);
  if (classify_edge(theta0) == BandEdge::bottom) {
    if (std::isinf(gamma)) return 2.0;
    if (gamma <= 3.0) return INFINITY;  // sum_R R^(2-gamma) diverges
    return 2.0 * riemann_zeta(gamma - 2.0);
  }
  if (std::isinf(gamma)) return -2.0;
  return -2.0 * dirichlet_eta(gamma - 2.0);
}

double second_derivative_finite(const RingSpec& spec, double theta0) {
  const CouplingTable table = build_coupling_table(spec);
  const int n = spec.n_nodes;
  double acc = 0.0;
  for (const auto& [r, coupling] : table) {
    double w = (n % 2 == 0 && 2 * r == n) ? 0.5 : 1.0;
    double rr = static_cast<double>(r);
    acc += w * coupling * rr * rr * std::cos(theta0 * rr);
  }
  return 2.0 * acc;
}

double band_maximum_infinite(double gamma) {
  check_gamma(gamma);
  if (std::isinf(gamma)) return 4.0;
  return 4.0 * (1.0 - std::pow(2.0, -gamma)) * riemann_zeta(gamma);
}

double band_maximum_finite(const RingSpec& spec) {
  return bloch_eigenvalue(spec, M_PI);
}

SpaParams spa_params_infinite(double gamma) {
  check_gamma(gamma);
  SpaParams params;
  params.gamma = gamma;
  double e_top = band_maximum_infinite(gamma);
  double d2_top = second_derivative_infinite(gamma, M_PI);
  if (gamma == 2.0) {
    // band bottom is linear in theta, so only the top is stationary
    params.points.push_back({M_PI, e_top, d2_top, false});
    return params;
  }
  double d2_bottom = second_derivative_infinite(gamma, 0.0);
  params.points.push_back({0.0, 0.0, d2_bottom, std::isinf(d2_bottom)});
  params.points.push_back({M_PI, e_top, d2_top, false});
  return params;
}

SpaParams spa_params_finite(const RingSpec& spec) {
  SpaParams params;
  params.gamma = spec.gamma;
  params.points.push_back({0.0, 0.0, second_derivative_finite(spec, 0.0), false});
  params.points.push_back(
      {M_PI, band_maximum_finite(spec), second_derivative_finite(spec, M_PI), false});
  return params;
}

double spa_return_infinite(double gamma, double t) {
  check_gamma(gamma);
  check_time(t);
  if (gamma == 2.0) {
    return 1.0 / (2.0 * M_PI * t);
  }
  if (gamma <= 3.0) {
    return 1.0 / (2.0 * M_PI * t * dirichlet_eta(gamma - 2.0));
  }
  return two_point_return(t, second_derivative_infinite(gamma, 0.0),
                          second_derivative_infinite(gamma, M_PI),
                          band_maximum_infinite(gamma));
}

double spa_return_finite(const RingSpec& spec, double t) {
  check_time(t);
  return two_point_return(t, second_derivative_finite(spec, 0.0),
                          second_derivative_finite(spec, M_PI),
                          band_maximum_finite(spec));
}

double line_quantum_return(double t) {
  double j = bessel_j0(2.0 * std::abs(t));
  return j * j;
}

}  // namespace ringwalk
