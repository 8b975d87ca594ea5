#include "ringwalk/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ringwalk {

namespace {

double bloch_from_table(const CouplingTable& table, int n, double theta) {
  double acc = 0.0;
  for (const auto& [r, coupling] : table) {  // std::map iterates ascending r
    double w = (n % 2 == 0 && 2 * r == n) ? 0.5 : 1.0;
    double s = std::sin(0.5 * theta * static_cast<double>(r));
    acc += w * coupling * 4.0 * s * s;  // w * c_r * (2 - 2 cos(theta r))
  }
  return acc;
}

}  // namespace

double bloch_eigenvalue(const RingSpec& spec, double theta) {
  return bloch_from_table(build_coupling_table(spec), spec.n_nodes, theta);
}

Spectrum full_spectrum(const RingSpec& spec) {
  const CouplingTable table = build_coupling_table(spec);
  const int n = spec.n_nodes;
  Eigen::VectorXd ev(n);
  for (int m = 0; m < n; ++m) {
    double theta = 2.0 * M_PI * static_cast<double>(m) / static_cast<double>(n);
    ev(m) = bloch_from_table(table, n, theta);
  }
  ev(0) = 0.0;
  return Spectrum{ev, spec, SpectrumSource::analytic};
}

Spectrum diagonalize_spectrum(const RingSpec& spec) {
  if (spec.n_nodes > 4096) {
    throw GuardError(
        "dense diagonalization is limited to n_nodes <= 4096; "
        "use the analytic spectrum for larger rings");
  }
  Eigen::MatrixXd h = build_hamiltonian(spec);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalue decomposition failed");
  }
  return Spectrum{solver.eigenvalues(), spec, SpectrumSource::diagonalized};
}

DosEstimate dos_histogram(const Spectrum& spectrum, int n_bins) {
  if (n_bins < 2) {
    throw std::invalid_argument("dos_histogram requires n_bins >= 2");
  }
  const long n_total = spectrum.eigenvalues.size();
  const double e_max = spectrum.eigenvalues.maxCoeff();
  if (!(e_max > 0.0)) {
    throw std::invalid_argument("dos_histogram requires a spectrum with positive span");
  }
  const double width = e_max / static_cast<double>(n_bins);
  DosEstimate est;
  est.n_total = n_total;
  est.bin_edges.resize(n_bins + 1);
  for (int i = 0; i <= n_bins; ++i) est.bin_edges(i) = width * static_cast<double>(i);
  est.bin_edges(n_bins) = e_max;
  est.counts = Eigen::VectorXi::Zero(n_bins);
  for (long i = 0; i < n_total; ++i) {
    int idx = static_cast<int>(std::floor(spectrum.eigenvalues(i) / width));
    idx = std::clamp(idx, 0, n_bins - 1);  // top edge and -0.0 roundoff fold inward
    est.counts(idx) += 1;
  }
  est.density = est.counts.cast<double>() / (static_cast<double>(n_total) * width);
  return est;
}

double analytic_dos(double gamma_case, double energy) {
  if (std::isinf(gamma_case)) {
    if (!(energy > 0.0) || !(energy < 4.0)) {
      throw std::domain_error("nearest-neighbor density of states needs 0 < E < 4");
    }
    return 1.0 / (M_PI * std::sqrt(energy * (4.0 - energy)));
  }
  if (gamma_case == 2.0) {
    const double e_max = M_PI * M_PI / 2.0;
    if (!(energy >= 0.0) || !(energy < e_max)) {
      throw std::domain_error("gamma=2 density of states needs 0 <= E < pi^2/2");
    }
    return 1.0 / (M_PI * std::sqrt(2.0) * std::sqrt(e_max - energy));
  }
  if (gamma_case == 4.0) {
    const double e_max = std::pow(M_PI, 4) / 24.0;
    if (!(energy > 0.0) || !(energy < e_max)) {
      throw std::domain_error("gamma=4 density of states needs 0 < E < pi^4/24");
    }
    double m = energy * M_PI * M_PI / std::sqrt(24.0) - std::pow(energy, 1.5);
    return 1.0 / (2.0 * M_PI * std::pow(2.0 / 3.0, 0.25) * std::sqrt(m));
  }
  throw std::invalid_argument("analytic_dos covers gamma cases 2, 4 and inf only");
}

namespace {

struct GaussLegendre {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;
};

// order-40 Gauss-Legendre rule, nodes found by Newton iteration on P_40
const GaussLegendre& gauss_legendre_40() {
  static const GaussLegendre rule = [] {
    constexpr int n = 40;
    GaussLegendre r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n / 2; ++i) {
      double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                          (static_cast<double>(n) + 0.5));
      double deriv = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
          p0 = p1;
          p1 = pk;
        }
        deriv = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / deriv;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      double w = 2.0 / ((1.0 - x * x) * deriv * deriv);
      r.nodes[i] = -x;
      r.weights[i] = w;
      r.nodes[n - 1 - i] = x;
      r.weights[n - 1 - i] = w;
    }
    return r;
  }();
  return rule;
}

void check_band_family_params(double alpha, double beta, double e_max) {
  if (!(alpha >= 0.0) || !(alpha <= 1.0)) {
    throw std::invalid_argument("band-family density needs alpha in [0, 1]");
  }
  if (!(beta > alpha) || !(beta <= 2.0)) {
    throw std::invalid_argument("band-family density needs beta in (alpha, 2]");
  }
  if (!(e_max > 0.0) || std::isinf(e_max)) {
    throw std::invalid_argument("band-family density needs finite e_max > 0");
  }
}

// sin^(2 alpha)(phi) * (1 - sin^(2(beta-alpha))(phi)) evaluated from
// log(sin^2 phi), stable at both band edges
inline double band_shape(double alpha, double beta, double log_sin_sq) {
  return std::exp(alpha * log_sin_sq) * (-std::expm1((beta - alpha) * log_sin_sq));
}

}  // namespace

double generalized_dos_normalization(double alpha, double beta, double e_max) {
  check_band_family_params(alpha, beta, e_max);
  // E = e_max sin^2(phi) maps the integral to phi in (0, pi/2) with weight
  // e_max sin(2 phi); split at pi/4 and fold the top half through
  // u = pi/2 - phi so log(sin^2 phi) = 2 log1p(-2 sin^2(u/2)) stays accurate
  // where sin^2 phi -> 1. Panels refine geometrically into each endpoint.
  const GaussLegendre& gl = gauss_legendre_40();
  const double pref = std::pow(e_max, 1.0 - beta / 2.0);
  const int n_panels = 16;
  double total = 0.0;
  double hi = M_PI / 4.0;
  for (int p = 0; p < n_panels; ++p) {
    double lo = (p + 1 == n_panels) ? 0.0 : hi * 0.5;
    double mid = 0.5 * (lo + hi);
    double half = 0.5 * (hi - lo);
    double acc_lo = 0.0, acc_hi = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      double x = mid + half * gl.nodes[i];
      double s = std::sin(x);
      double l_bottom = 2.0 * std::log(s);
      acc_lo += gl.weights[i] * std::sin(2.0 * x) /
                std::sqrt(band_shape(alpha, beta, l_bottom));
      double sh = std::sin(0.5 * x);
      double l_top = 2.0 * std::log1p(-2.0 * sh * sh);
      acc_hi += gl.weights[i] * std::sin(2.0 * x) /
                std::sqrt(band_shape(alpha, beta, l_top));
    }
    total += half * (acc_lo + acc_hi);
    hi = lo;
  }
  return pref * total;
}

double generalized_dos(double alpha, double beta, double e_max, double energy) {
  check_band_family_params(alpha, beta, e_max);
  bool inside = energy > 0.0 || (alpha == 0.0 && energy == 0.0);
  if (!inside || !(energy < e_max)) {
    throw std::domain_error("band-family density is defined on (0, e_max)");
  }
  double g = energy / e_max;
  double shape;
  if (g < 0.5) {
    shape = std::pow(g, alpha) - std::pow(g, beta);  // no cancellation below g = 1/2
  } else {
    shape = band_shape(alpha, beta, std::log(g));
  }
  double f = 1.0 / std::sqrt(std::pow(e_max, beta) * shape);
  return f / generalized_dos_normalization(alpha, beta, e_max);
}

double dispersion_gamma2(double theta) {
  return M_PI * theta - 0.5 * theta * theta;
}

double dispersion_gamma4(double theta) {
  double t2 = theta * theta;
  return t2 * t2 / 24.0 - M_PI * t2 * theta / 6.0 + M_PI * M_PI * t2 / 6.0;
}

}  // namespace ringwalk
