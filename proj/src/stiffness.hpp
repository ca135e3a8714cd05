#ifndef GWAVE_SRC_STIFFNESS_HPP
#define GWAVE_SRC_STIFFNESS_HPP

#include <Eigen/Sparse>

#include "gwave/graph.hpp"

namespace gwave::detail {

/// Stiffness matrix of -Delta_Omega acting on interior coefficient vectors:
/// full weighted degree on the diagonal (edges leaving the interior
/// included), -omega_xy on interior-interior edges. The operator itself is
/// M^{-1} L; the pencil (L, M) is symmetric positive definite.
inline Eigen::SparseMatrix<double> interior_stiffness(const WeightedGraph& g,
                                                      const DomainDecomposition& dom) {
  const int m = dom.interior_size();
  std::vector<Eigen::Triplet<double>> trip;
  for (int k = 0; k < m; ++k) {
    const int x = dom.interior[static_cast<size_t>(k)];
    trip.emplace_back(k, k, g.weighted_degree(x));
    for (const auto& [y, w] : g.neighbors(x)) {
      const int j = dom.interior_pos[static_cast<size_t>(y)];
      if (j >= 0) trip.emplace_back(k, j, -w);
    }
  }
  Eigen::SparseMatrix<double> L(m, m);
  L.setFromTriplets(trip.begin(), trip.end());
  return L;
}

inline Eigen::VectorXd interior_measures(const WeightedGraph& g,
                                         const DomainDecomposition& dom) {
  Eigen::VectorXd mu(dom.interior_size());
  for (int k = 0; k < dom.interior_size(); ++k)
    mu[k] = g.measure(dom.interior[static_cast<size_t>(k)]);
  return mu;
}

}  // namespace gwave::detail

#endif  // GWAVE_SRC_STIFFNESS_HPP
