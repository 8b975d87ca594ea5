#pragma once

#include <Eigen/Core>
#include <cmath>
#include <map>
#include <stdexcept>

namespace ringwalk {

// Raised when a request trips a numerical guard (dense work above the size
// guard, divergent series, ...). The CLI maps this to exit code 2, distinct
// from plain usage errors (std::invalid_argument, exit code 1).
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ring of N nodes with couplings R^{-gamma} up to distance r_max.
// gamma = +infinity is the distinguished nearest-neighbor value: the coupling
// table collapses to {1: 1} exactly, with no overflow-prone huge exponents.
struct RingSpec {
  int n_nodes;
  double gamma;
  int r_max;

  RingSpec(int n, double g, int rmax) : n_nodes(n), gamma(g), r_max(rmax) {
    if (n < 3) throw std::invalid_argument("RingSpec: need at least 3 nodes");
    if (!(g >= 2.0))  // also rejects NaN
      throw std::invalid_argument("RingSpec: decay exponent must be >= 2 (or inf)");
    if (rmax < 1 || rmax > n / 2)
      throw std::invalid_argument("RingSpec: r_max must lie in [1, N/2]");
  }
  RingSpec(int n, double g) : RingSpec(n, g, std::max(1, n / 2)) {}

  bool nearest_neighbor_only() const { return std::isinf(gamma) || r_max == 1; }
};

// distance -> amplitude R^{-gamma}; {1: 1} in the nearest-neighbor limit
using CouplingTable = std::map<int, double>;

CouplingTable build_coupling_table(const RingSpec& spec);

// min(|j-k|, n-|j-k|); throws on out-of-range indices
int ring_distance(int j, int k, int n);

// Dense N x N Laplacian-like matrix: off-diagonal -d(j,k)^{-gamma} for
// 1 <= d(j,k) <= r_max, diagonal balancing each row to zero sum. For even N
// the antipodal pair d = N/2 is connected by a single element (counted once).
// Intended as the diagonalization / propagation oracle; production paths work
// from the closed-form spectrum instead.
Eigen::MatrixXd build_hamiltonian(const RingSpec& spec);

}  // namespace ringwalk
