#ifndef GWAVE_TESTS_SUPPORT_HPP
#define GWAVE_TESTS_SUPPORT_HPP

#include <string>
#include <vector>

#include "gwave/graph.hpp"
#include "gwave/rothe.hpp"

namespace gwave::test {

/// Path graph 0-1-...-(n-1) with unit weights and measures.
inline WeightedGraph path_graph(int n) {
  std::vector<WeightedGraph::LabeledEdge> edges;
  for (int k = 0; k + 1 < n; ++k)
    edges.emplace_back(std::to_string(k), std::to_string(k + 1), 1.0);
  return WeightedGraph::build(edges);
}

struct ScalarCase {
  WeightedGraph graph;
  DomainDecomposition dom;
  ProblemSpec spec;
};

/// The five-vertex path with domain {1,2,3}: one interior vertex, unit
/// displacement released from rest, quadratic damping, no forcing.
inline ScalarCase p5_scalar_case(double p = 2.0, double T = 1.0) {
  ScalarCase c{path_graph(5), {}, {}};
  c.dom = decompose_domain(c.graph, std::vector<std::string>{"1", "2", "3"});
  c.spec.p = p;
  c.spec.T = T;
  c.spec.g = dirichlet_field(c.graph, c.dom, {{"2", 1.0}});
  c.spec.h = c.graph.zero_field();
  return c;
}

/// Bisection root of a scalar monotone function on [lo, hi].
template <typename F>
double bisect(F&& f, double lo, double hi, int iterations = 200) {
  double flo = f(lo);
  for (int k = 0; k < iterations; ++k) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if ((flo <= 0.0) == (fmid <= 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace gwave::test

#endif  // GWAVE_TESTS_SUPPORT_HPP
