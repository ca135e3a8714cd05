#ifndef GWAVE_GRAPH_HPP
#define GWAVE_GRAPH_HPP

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gwave/errors.hpp"

namespace gwave {

/// Real-valued function on V, aligned with the graph's vertex indexing.
/// Fields used as Dirichlet data vanish identically (exact zeros) off the
/// interior of their domain.
using VertexField = Eigen::VectorXd;

struct Edge {
  int a;  // a < b, dense vertex indices
  int b;
  double weight;
};

/// Finite connected weighted graph (V, E, mu, omega). Vertex labels are
/// opaque strings mapped to dense indices at build time; all numeric kernels
/// operate on indices. Immutable after construction.
class WeightedGraph {
 public:
  using LabeledEdge = std::tuple<std::string, std::string, double>;

  /// Validates and builds the graph. Measures default to 1 on vertices
  /// absent from `measures`.
  static WeightedGraph build(const std::vector<LabeledEdge>& edges,
                             const std::map<std::string, double>& measures = {});

  int vertex_count() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& vertex_labels() const { return labels_; }
  const std::string& label(int x) const { return labels_[static_cast<size_t>(x)]; }

  /// Dense index of a labeled vertex; throws UnknownVertex.
  int index_of(const std::string& label) const;
  bool has_vertex(const std::string& label) const;

  double measure(int x) const { return mu_[x]; }
  const VertexField& measures() const { return mu_; }
  double total_measure() const { return mu_.sum(); }

  const std::vector<Edge>& edges() const { return edges_; }

  /// Neighbors of x as (vertex index, edge weight) pairs.
  std::span<const std::pair<int, double>> neighbors(int x) const {
    return {adjacency_[static_cast<size_t>(x)].data(),
            adjacency_[static_cast<size_t>(x)].size()};
  }

  /// Weighted degree sum_{y~x} omega_xy.
  double weighted_degree(int x) const;

  VertexField zero_field() const { return VertexField::Zero(vertex_count()); }

 private:
  WeightedGraph() = default;

  std::vector<std::string> labels_;
  VertexField mu_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, double>>> adjacency_;
};

/// A domain Omega, its boundary (vertices of Omega with a neighbor outside)
/// and interior Omega \ boundary. Immutable. Vertex sets are sorted index
/// lists; the masks give O(1) membership tests.
struct DomainDecomposition {
  std::vector<int> omega;
  std::vector<int> boundary;
  std::vector<int> interior;
  std::vector<char> in_omega;         // |V| mask
  std::vector<char> in_interior;      // |V| mask
  std::vector<int> interior_pos;      // |V|; dense position in `interior`, -1 elsewhere

  int interior_size() const { return static_cast<int>(interior.size()); }
};

/// Splits omega into boundary and interior. Rejects empty interior and empty
/// boundary (the solvable configurations need both).
DomainDecomposition decompose_domain(const WeightedGraph& g, std::span<const int> omega);
DomainDecomposition decompose_domain(const WeightedGraph& g,
                                     const std::vector<std::string>& omega_labels);

bool is_dirichlet_field(const WeightedGraph& g, const DomainDecomposition& dom,
                        const VertexField& v);
void require_dirichlet(const WeightedGraph& g, const DomainDecomposition& dom,
                       const VertexField& v, const char* what);

/// Builds a Dirichlet field from interior values; entries off the interior
/// are exact zeros.
VertexField dirichlet_field(const WeightedGraph& g, const DomainDecomposition& dom,
                            const std::map<std::string, double>& values);
VertexField embed_interior(const WeightedGraph& g, const DomainDecomposition& dom,
                           const Eigen::VectorXd& interior_values);
Eigen::VectorXd restrict_interior(const DomainDecomposition& dom, const VertexField& v);

/// mu-Laplacian: (Delta v)(x) = (1/mu(x)) sum_{y~x} omega_xy (v(y) - v(x)).
VertexField mu_laplacian(const WeightedGraph& g, const VertexField& v);

/// Gradient form: Gamma(v1,v2)(x) =
///   (1/(2 mu(x))) sum_{y~x} omega_xy (v1(y)-v1(x)) (v2(y)-v2(x)).
/// |grad v|^2(x) is gradient_form(g, v, v)(x).
VertexField gradient_form(const WeightedGraph& g, const VertexField& v1,
                          const VertexField& v2);

/// Maximum weighted-degree-to-measure ratio max_x (1/mu(x)) sum_{y~x} omega_xy.
double d_mu(const WeightedGraph& g);

/// Dirichlet Laplacian: Delta applied to a field vanishing off the interior,
/// restricted to the interior (zero elsewhere in the returned field).
VertexField dirichlet_laplacian(const WeightedGraph& g, const DomainDecomposition& dom,
                                const VertexField& v);

/// sum_{x in subset} mu(x) v(x).
double integrate(const WeightedGraph& g, const VertexField& v, std::span<const int> subset);

inline constexpr double inf_exponent = std::numeric_limits<double>::infinity();

/// L^q norm of v over the subset under measure mu; q = infinity gives the
/// sup norm.
double lp_norm(const WeightedGraph& g, const VertexField& v, double q,
               std::span<const int> subset);

/// Signed Green's-formula residual
///   int_{interior} Delta_Omega w . v dmu + int_Omega Gamma(w,v) dmu,
/// which vanishes identically in exact arithmetic.
double verify_green(const WeightedGraph& g, const DomainDecomposition& dom,
                    const VertexField& w, const VertexField& v);

struct DirichletGroundState {
  double lambda;      // smallest eigenvalue of -Delta_Omega
  VertexField field;  // eigenfunction, extended by zero, normalized in L^2(Omega)
};

/// Smallest eigenpair of -Delta_Omega on the interior under the mu-weighted
/// inner product. Dense symmetric solve up to 512 interior vertices, inverse
/// power iteration above.
DirichletGroundState dirichlet_ground_state(const WeightedGraph& g,
                                            const DomainDecomposition& dom);
double smallest_dirichlet_eigenvalue(const WeightedGraph& g,
                                     const DomainDecomposition& dom);

/// Embedding constant C_q with ||v||_{L^q(Omega)} <= C_q ||grad v||_{L^2(Omega)}
/// for Dirichlet fields. C_2 = lambda_1^{-1/2} is sharp; other exponents are
/// derived from C_2 by finite-measure comparisons.
double embedding_constant(const WeightedGraph& g, const DomainDecomposition& dom,
                          double q);

}  // namespace gwave

#endif  // GWAVE_GRAPH_HPP
