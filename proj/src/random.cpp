#include "gwave/random.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace gwave {

WeightedGraph random_graph(Rng& rng, const RandomGraphParams& params) {
  std::uniform_int_distribution<int> size_dist(params.min_vertices, params.max_vertices);
  std::uniform_real_distribution<double> weight_dist(params.min_weight, params.max_weight);
  std::uniform_real_distribution<double> measure_dist(params.min_measure, params.max_measure);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  const int n = size_dist(rng);
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<WeightedGraph::LabeledEdge> edges;
  std::set<std::pair<int, int>> used;
  // Spanning tree: attach each vertex to a random earlier one.
  for (int k = 1; k < n; ++k) {
    std::uniform_int_distribution<int> parent_dist(0, k - 1);
    const int a = order[static_cast<size_t>(parent_dist(rng))];
    const int b = order[static_cast<size_t>(k)];
    used.insert(std::minmax(a, b));
    edges.emplace_back(std::to_string(a), std::to_string(b), weight_dist(rng));
  }
  // Extra edges, always leaving at least one pair non-adjacent so that a
  // domain with nonempty interior exists.
  const size_t all_pairs = static_cast<size_t>(n) * (n - 1) / 2;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (used.count({a, b}) || used.size() + 1 >= all_pairs) continue;
      if (coin(rng) < params.extra_edge_probability) {
        used.insert({a, b});
        edges.emplace_back(std::to_string(a), std::to_string(b), weight_dist(rng));
      }
    }

  std::map<std::string, double> measures;
  for (int x = 0; x < n; ++x) measures[std::to_string(x)] = measure_dist(rng);
  return WeightedGraph::build(edges, measures);
}

DomainDecomposition random_domain(Rng& rng, const WeightedGraph& g) {
  const int n = g.vertex_count();
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<int> omega;
    const double keep = 0.5 + 0.4 * coin(rng);
    for (int x = 0; x < n; ++x)
      if (coin(rng) < keep) omega.push_back(x);
    if (omega.empty() || static_cast<int>(omega.size()) == n) continue;
    try {
      return decompose_domain(g, omega);
    } catch (const Error&) {
      continue;  // empty interior or boundary; redraw
    }
  }
  // Deterministic fallback: dropping a vertex of minimum degree leaves its
  // non-neighbors in the interior (the generator never emits complete graphs).
  int drop = 0;
  size_t best = g.neighbors(0).size();
  for (int x = 1; x < n; ++x)
    if (g.neighbors(x).size() < best) {
      best = g.neighbors(x).size();
      drop = x;
    }
  std::vector<int> omega;
  for (int x = 0; x < n; ++x)
    if (x != drop) omega.push_back(x);
  return decompose_domain(g, omega);
}

VertexField random_dirichlet_field(Rng& rng, const WeightedGraph& g,
                                   const DomainDecomposition& dom, double lo, double hi) {
  std::uniform_real_distribution<double> value_dist(lo, hi);
  VertexField v = g.zero_field();
  for (int x : dom.interior) v[x] = value_dist(rng);
  return v;
}

}  // namespace gwave
