#ifndef GWAVE_RANDOM_HPP
#define GWAVE_RANDOM_HPP

#include <random>

#include "gwave/graph.hpp"

namespace gwave {

/// Seeded generators for randomized invariant checks. All draws go through
/// std::mt19937_64 so a fixed seed reproduces the same instances on a given
/// platform.
using Rng = std::mt19937_64;

struct RandomGraphParams {
  int min_vertices = 5;
  int max_vertices = 30;
  double min_weight = 0.1;
  double max_weight = 10.0;
  double min_measure = 0.5;
  double max_measure = 2.0;
  double extra_edge_probability = 0.25;
};

/// Connected weighted graph: a random spanning tree plus extra edges.
WeightedGraph random_graph(Rng& rng, const RandomGraphParams& params = {});

/// Random domain with nonempty boundary and interior (rejection sampling).
DomainDecomposition random_domain(Rng& rng, const WeightedGraph& g);

/// Dirichlet field with interior values uniform in [lo, hi].
VertexField random_dirichlet_field(Rng& rng, const WeightedGraph& g,
                                   const DomainDecomposition& dom, double lo = -1.0,
                                   double hi = 1.0);

}  // namespace gwave

#endif  // GWAVE_RANDOM_HPP
