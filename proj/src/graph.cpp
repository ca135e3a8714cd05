#include "gwave/graph.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "stiffness.hpp"

namespace gwave {

namespace {

std::string edge_desc(const std::string& a, const std::string& b) {
  return "'" + a + "' -- '" + b + "'";
}

}  // namespace

WeightedGraph WeightedGraph::build(const std::vector<LabeledEdge>& edges,
                                   const std::map<std::string, double>& measures) {
  WeightedGraph g;
  std::unordered_map<std::string, int> index;

  auto intern = [&](const std::string& label) {
    auto [it, inserted] = index.emplace(label, static_cast<int>(g.labels_.size()));
    if (inserted) g.labels_.push_back(label);
    return it->second;
  };

  std::set<std::pair<int, int>> seen;
  for (const auto& [la, lb, weight] : edges) {
    if (la == lb) fail(errc::self_loop, "self-loop at vertex '" + la + "'");
    if (!(weight > 0.0))
      fail(errc::nonpositive_weight,
           "edge " + edge_desc(la, lb) + " has weight " + std::to_string(weight));
    const int a = intern(la);
    const int b = intern(lb);
    auto key = std::minmax(a, b);
    if (!seen.insert(key).second)
      fail(errc::duplicate_edge, "edge " + edge_desc(la, lb) + " listed twice");
    g.edges_.push_back({key.first, key.second, weight});
  }
  if (g.labels_.empty()) fail(errc::disconnected_graph, "graph has no vertices");

  const int n = static_cast<int>(g.labels_.size());
  g.mu_ = VertexField::Ones(n);
  for (const auto& [label, mu] : measures) {
    auto it = index.find(label);
    if (it == index.end())
      fail(errc::unknown_vertex, "measure given for unknown vertex '" + label + "'");
    if (!(mu > 0.0))
      fail(errc::nonpositive_measure,
           "vertex '" + label + "' has measure " + std::to_string(mu));
    g.mu_[it->second] = mu;
  }

  g.adjacency_.assign(static_cast<size_t>(n), {});
  for (const Edge& e : g.edges_) {
    g.adjacency_[static_cast<size_t>(e.a)].emplace_back(e.b, e.weight);
    g.adjacency_[static_cast<size_t>(e.b)].emplace_back(e.a, e.weight);
  }

  // Connectivity over all of V.
  std::vector<char> visited(static_cast<size_t>(n), 0);
  std::vector<int> stack = {0};
  visited[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (const auto& [y, w] : g.adjacency_[static_cast<size_t>(x)]) {
      (void)w;
      if (!visited[static_cast<size_t>(y)]) {
        visited[static_cast<size_t>(y)] = 1;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  if (reached != n) {
    std::string missing;
    for (int x = 0; x < n; ++x)
      if (!visited[static_cast<size_t>(x)]) {
        missing = g.labels_[static_cast<size_t>(x)];
        break;
      }
    fail(errc::disconnected_graph,
         "vertex '" + missing + "' unreachable from '" + g.labels_[0] + "'");
  }
  return g;
}

int WeightedGraph::index_of(const std::string& label) const {
  for (int x = 0; x < vertex_count(); ++x)
    if (labels_[static_cast<size_t>(x)] == label) return x;
  fail(errc::unknown_vertex, "unknown vertex '" + label + "'");
}

bool WeightedGraph::has_vertex(const std::string& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

double WeightedGraph::weighted_degree(int x) const {
  double sum = 0.0;
  for (const auto& [y, w] : neighbors(x)) {
    (void)y;
    sum += w;
  }
  return sum;
}

DomainDecomposition decompose_domain(const WeightedGraph& g, std::span<const int> omega) {
  const int n = g.vertex_count();
  DomainDecomposition dom;
  dom.in_omega.assign(static_cast<size_t>(n), 0);
  for (int x : omega) {
    if (x < 0 || x >= n)
      fail(errc::unknown_vertex, "vertex index " + std::to_string(x) + " out of range");
    dom.in_omega[static_cast<size_t>(x)] = 1;
  }
  for (int x = 0; x < n; ++x)
    if (dom.in_omega[static_cast<size_t>(x)]) dom.omega.push_back(x);
  if (dom.omega.empty()) fail(errc::empty_interior, "domain is empty");

  dom.in_interior.assign(static_cast<size_t>(n), 0);
  dom.interior_pos.assign(static_cast<size_t>(n), -1);
  for (int x : dom.omega) {
    bool outside_neighbor = false;
    for (const auto& [y, w] : g.neighbors(x)) {
      (void)w;
      if (!dom.in_omega[static_cast<size_t>(y)]) {
        outside_neighbor = true;
        break;
      }
    }
    if (outside_neighbor)
      dom.boundary.push_back(x);
    else
      dom.in_interior[static_cast<size_t>(x)] = 1;
  }
  for (int x : dom.omega)
    if (dom.in_interior[static_cast<size_t>(x)]) {
      dom.interior_pos[static_cast<size_t>(x)] = static_cast<int>(dom.interior.size());
      dom.interior.push_back(x);
    }

  if (dom.interior.empty())
    fail(errc::empty_interior, "every vertex of the domain touches its complement");
  if (dom.boundary.empty())
    fail(errc::empty_boundary, "no vertex of the domain has a neighbor outside it");
  return dom;
}

DomainDecomposition decompose_domain(const WeightedGraph& g,
                                     const std::vector<std::string>& omega_labels) {
  std::vector<int> omega;
  omega.reserve(omega_labels.size());
  for (const auto& label : omega_labels) omega.push_back(g.index_of(label));
  std::sort(omega.begin(), omega.end());
  omega.erase(std::unique(omega.begin(), omega.end()), omega.end());
  return decompose_domain(g, omega);
}

bool is_dirichlet_field(const WeightedGraph& g, const DomainDecomposition& dom,
                        const VertexField& v) {
  if (v.size() != g.vertex_count()) return false;
  for (int x = 0; x < g.vertex_count(); ++x)
    if (!dom.in_interior[static_cast<size_t>(x)] && v[x] != 0.0) return false;
  return true;
}

void require_dirichlet(const WeightedGraph& g, const DomainDecomposition& dom,
                       const VertexField& v, const char* what) {
  if (v.size() != g.vertex_count())
    fail(errc::not_dirichlet_field,
         std::string(what) + " has " + std::to_string(v.size()) + " entries, graph has " +
             std::to_string(g.vertex_count()) + " vertices");
  for (int x = 0; x < g.vertex_count(); ++x)
    if (!dom.in_interior[static_cast<size_t>(x)] && v[x] != 0.0)
      fail(errc::not_dirichlet_field, std::string(what) + " is nonzero at vertex '" +
                                          g.label(x) + "' outside the interior");
}

VertexField dirichlet_field(const WeightedGraph& g, const DomainDecomposition& dom,
                            const std::map<std::string, double>& values) {
  VertexField v = g.zero_field();
  for (const auto& [label, value] : values) {
    const int x = g.index_of(label);
    if (!dom.in_interior[static_cast<size_t>(x)] && value != 0.0)
      fail(errc::unknown_vertex,
           "vertex '" + label + "' is not an interior vertex; Dirichlet data lives on the interior");
    v[x] = value;
  }
  return v;
}

VertexField embed_interior(const WeightedGraph& g, const DomainDecomposition& dom,
                           const Eigen::VectorXd& interior_values) {
  VertexField v = g.zero_field();
  for (int k = 0; k < dom.interior_size(); ++k) v[dom.interior[static_cast<size_t>(k)]] = interior_values[k];
  return v;
}

Eigen::VectorXd restrict_interior(const DomainDecomposition& dom, const VertexField& v) {
  Eigen::VectorXd r(dom.interior_size());
  for (int k = 0; k < dom.interior_size(); ++k) r[k] = v[dom.interior[static_cast<size_t>(k)]];
  return r;
}

namespace {

void require_field_size(const WeightedGraph& g, const VertexField& v, const char* what) {
  if (v.size() != g.vertex_count())
    fail(errc::unknown_vertex, std::string(what) + " has " + std::to_string(v.size()) +
                                   " entries, graph has " +
                                   std::to_string(g.vertex_count()) + " vertices");
}

}  // namespace

VertexField mu_laplacian(const WeightedGraph& g, const VertexField& v) {
  require_field_size(g, v, "field");
  VertexField out = g.zero_field();
  for (int x = 0; x < g.vertex_count(); ++x) {
    double sum = 0.0;
    for (const auto& [y, w] : g.neighbors(x)) sum += w * (v[y] - v[x]);
    out[x] = sum / g.measure(x);
  }
  return out;
}

VertexField gradient_form(const WeightedGraph& g, const VertexField& v1,
                          const VertexField& v2) {
  require_field_size(g, v1, "first field");
  require_field_size(g, v2, "second field");
  VertexField out = g.zero_field();
  for (int x = 0; x < g.vertex_count(); ++x) {
    double sum = 0.0;
    for (const auto& [y, w] : g.neighbors(x)) sum += w * (v1[y] - v1[x]) * (v2[y] - v2[x]);
    out[x] = sum / (2.0 * g.measure(x));
  }
  return out;
}

double d_mu(const WeightedGraph& g) {
  double best = 0.0;
  for (int x = 0; x < g.vertex_count(); ++x)
    best = std::max(best, g.weighted_degree(x) / g.measure(x));
  return best;
}

VertexField dirichlet_laplacian(const WeightedGraph& g, const DomainDecomposition& dom,
                                const VertexField& v) {
  require_dirichlet(g, dom, v, "field");
  VertexField out = g.zero_field();
  for (int x : dom.interior) {
    double sum = 0.0;
    for (const auto& [y, w] : g.neighbors(x)) sum += w * (v[y] - v[x]);
    out[x] = sum / g.measure(x);
  }
  return out;
}

double integrate(const WeightedGraph& g, const VertexField& v, std::span<const int> subset) {
  require_field_size(g, v, "integrand");
  double sum = 0.0;
  for (int x : subset) {
    if (x < 0 || x >= g.vertex_count())
      fail(errc::unknown_vertex, "vertex index " + std::to_string(x) + " out of range");
    sum += g.measure(x) * v[x];
  }
  return sum;
}

double lp_norm(const WeightedGraph& g, const VertexField& v, double q,
               std::span<const int> subset) {
  require_field_size(g, v, "field");
  if (std::isinf(q)) {
    double sup = 0.0;
    for (int x : subset) sup = std::max(sup, std::abs(v[x]));
    return sup;
  }
  if (!(q >= 1.0)) fail(errc::invalid_exponent, "L^q norm needs q >= 1, got " + std::to_string(q));
  double sum = 0.0;
  for (int x : subset) {
    if (x < 0 || x >= g.vertex_count())
      fail(errc::unknown_vertex, "vertex index " + std::to_string(x) + " out of range");
    sum += g.measure(x) * std::pow(std::abs(v[x]), q);
  }
  return std::pow(sum, 1.0 / q);
}

double verify_green(const WeightedGraph& g, const DomainDecomposition& dom,
                    const VertexField& w, const VertexField& v) {
  require_dirichlet(g, dom, w, "first field");
  require_dirichlet(g, dom, v, "second field");
  const VertexField lap = dirichlet_laplacian(g, dom, w);
  double lhs = 0.0;
  for (int x : dom.interior) lhs += g.measure(x) * lap[x] * v[x];
  const VertexField gamma = gradient_form(g, w, v);
  return lhs + integrate(g, gamma, dom.omega);
}

DirichletGroundState dirichlet_ground_state(const WeightedGraph& g,
                                            const DomainDecomposition& dom) {
  const int m = dom.interior_size();
  const Eigen::SparseMatrix<double> L = detail::interior_stiffness(g, dom);
  const Eigen::VectorXd mu = detail::interior_measures(g, dom);

  double lambda = 0.0;
  Eigen::VectorXd phi(m);
  if (m <= 512) {
    // Symmetrized pencil: eigenvalues of M^{-1/2} L M^{-1/2}.
    const Eigen::VectorXd s = mu.cwiseSqrt();
    Eigen::MatrixXd B = Eigen::MatrixXd(L);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) B(i, j) /= s[i] * s[j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(B);
    lambda = solver.eigenvalues()[0];
    phi = solver.eigenvectors().col(0).cwiseQuotient(s);
  } else {
    // Inverse power iteration on L x = lambda M x.
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(L);
    Eigen::VectorXd x = Eigen::VectorXd::Ones(m);
    x /= std::sqrt(x.dot(mu.asDiagonal() * x));
    double prev = 0.0;
    for (int it = 0; it < 20000; ++it) {
      Eigen::VectorXd y = llt.solve(mu.asDiagonal() * x);
      y /= std::sqrt(y.dot(mu.asDiagonal() * y));
      x = y;
      lambda = x.dot(L * x);
      if (it > 2 && std::abs(lambda - prev) <= 1e-14 * std::abs(lambda)) break;
      prev = lambda;
    }
    phi = x;
  }

  // Normalize in L^2(Omega) with nonnegative mass.
  phi /= std::sqrt(phi.dot(mu.asDiagonal() * phi));
  if (phi.sum() < 0.0) phi = -phi;
  return {lambda, embed_interior(g, dom, phi)};
}

double smallest_dirichlet_eigenvalue(const WeightedGraph& g,
                                     const DomainDecomposition& dom) {
  return dirichlet_ground_state(g, dom).lambda;
}

double embedding_constant(const WeightedGraph& g, const DomainDecomposition& dom,
                          double q) {
  const double c2 = 1.0 / std::sqrt(smallest_dirichlet_eigenvalue(g, dom));
  if (q == 2.0) return c2;

  double mu_min = std::numeric_limits<double>::infinity();
  for (int x : dom.interior) mu_min = std::min(mu_min, g.measure(x));
  const double c_inf = c2 / std::sqrt(mu_min);
  if (std::isinf(q)) return c_inf;

  if (!(q >= 1.0)) fail(errc::invalid_exponent, "embedding needs q >= 1, got " + std::to_string(q));
  double mu_omega = 0.0;
  for (int x : dom.omega) mu_omega += g.measure(x);
  if (q < 2.0) {
    // Hoelder against L^2: ||v||_q <= mu(Omega)^{1/q - 1/2} ||v||_2.
    return std::pow(mu_omega, 1.0 / q - 0.5) * c2;
  }
  // ||v||_q^q <= ||v||_inf^{q-2} ||v||_2^2.
  return std::pow(std::pow(c_inf, q - 2.0) * c2 * c2, 1.0 / q);
}

}  // namespace gwave
