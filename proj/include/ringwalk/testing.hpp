#pragma once

// independent small-system oracles used by tests and the self-check command

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "ringwalk/dynamics.hpp"
#include "ringwalk/ring.hpp"

namespace ringwalk::testing {

// scaling-and-squaring Taylor exponential.  Deliberately simple: it is an
// oracle for cross-checking the spectral propagators, so it shares no code
// with them.  Guarded to small matrices where Taylor convergence is easy.
inline Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("matrix_exponential needs a square matrix");
  }
  if (a.rows() > 64) {
    throw GuardError("matrix_exponential oracle is limited to dimension <= 64");
  }
  const Eigen::Index n = a.rows();
  double norm1 = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    norm1 = std::max(norm1, a.col(j).cwiseAbs().sum());
  }
  int squarings = 0;
  double scale = 1.0;
  while (norm1 * scale > 0.5) {
    scale *= 0.5;
    ++squarings;
  }
  Eigen::MatrixXcd b = a * scale;
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k <= 40; ++k) {
    term = (term * b) / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-20) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

// start-at-node-0 profile computed from exp(-iHt) / exp(-Ht) directly
inline Eigen::VectorXd profile_via_matrix_exponential(const RingSpec& spec, double t,
                                                      WalkKind kind) {
  Eigen::MatrixXd h = build_hamiltonian(spec);
  Eigen::MatrixXcd gen;
  if (kind == WalkKind::quantum) {
    gen = std::complex<double>(0.0, -t) * h;
  } else {
    gen = (-t * h).cast<std::complex<double>>();
  }
  Eigen::MatrixXcd u = matrix_exponential(gen);
  Eigen::VectorXd p(spec.n_nodes);
  for (int k = 0; k < spec.n_nodes; ++k) {
    p(k) = (kind == WalkKind::quantum) ? std::norm(u(k, 0)) : u(k, 0).real();
  }
  return p;
}

}  // namespace ringwalk::testing
