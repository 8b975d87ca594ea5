#include "ringwalk/ring.hpp"

#include <cstdlib>

namespace ringwalk {

CouplingTable build_coupling_table(const RingSpec& spec) {
  CouplingTable table;
  if (std::isinf(spec.gamma)) {
    table[1] = 1.0;
    return table;
  }
  for (int r = 1; r <= spec.r_max; ++r)
    table[r] = std::pow(static_cast<double>(r), -spec.gamma);
  return table;
}

int ring_distance(int j, int k, int n) {
  if (n < 1 || j < 0 || j >= n || k < 0 || k >= n)
    throw std::invalid_argument("ring_distance: node index out of range");
  int d = std::abs(j - k);
  return std::min(d, n - d);
}

Eigen::MatrixXd build_hamiltonian(const RingSpec& spec) {
  const int n = spec.n_nodes;
  const CouplingTable table = build_coupling_table(spec);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    double diag = 0.0;  // ascending-k accumulation, same order as the row scan
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      int d = ring_distance(j, k, n);
      auto it = table.find(d);
      if (it == table.end()) continue;
      h(j, k) = -it->second;
      diag += it->second;
    }
    h(j, j) = diag;
  }
  return h;
}

}  // namespace ringwalk
