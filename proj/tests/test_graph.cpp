#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gwave/graph.hpp"
#include "gwave/random.hpp"
#include "support.hpp"

using namespace gwave;
using test::path_graph;

TEST_CASE("build_graph stores fields and applies the unit-measure default") {
  const WeightedGraph p3 = path_graph(3);
  CHECK(p3.vertex_count() == 3);
  CHECK(p3.measure(0) == 1.0);
  CHECK(p3.measure(2) == 1.0);
  CHECK(p3.edges().size() == 2);

  const WeightedGraph pair =
      WeightedGraph::build({{"0", "1", 2.5}}, {{"0", 1.0}, {"1", 3.0}});
  CHECK(pair.edges()[0].weight == 2.5);
  CHECK(pair.measure(pair.index_of("1")) == 3.0);
}

TEST_CASE("build_graph rejects invalid input") {
  CHECK_THROWS_WITH_AS(WeightedGraph::build({{"0", "1", 1.0}, {"2", "3", 1.0}}),
                       doctest::Contains("DisconnectedGraph"), Error);
  CHECK_THROWS_WITH_AS(WeightedGraph::build({{"0", "1", 0.0}}),
                       doctest::Contains("NonpositiveWeight"), Error);
  CHECK_THROWS_WITH_AS(WeightedGraph::build({{"0", "1", -2.0}}),
                       doctest::Contains("NonpositiveWeight"), Error);
  CHECK_THROWS_WITH_AS(WeightedGraph::build({{"0", "0", 1.0}}),
                       doctest::Contains("SelfLoop"), Error);
  CHECK_THROWS_WITH_AS(WeightedGraph::build({{"0", "1", 1.0}, {"1", "0", 2.0}}),
                       doctest::Contains("DuplicateEdge"), Error);
  CHECK_THROWS_WITH_AS(WeightedGraph::build({{"0", "1", 1.0}}, {{"0", 0.0}}),
                       doctest::Contains("NonpositiveMeasure"), Error);
  CHECK_THROWS_WITH_AS(WeightedGraph::build({{"0", "1", 1.0}}, {{"9", 1.0}}),
                       doctest::Contains("UnknownVertex"), Error);
}

TEST_CASE("mu_laplacian evaluates the defining sum") {
  const WeightedGraph p3 = path_graph(3);
  VertexField v = p3.zero_field();
  v[1] = 1.0;
  const VertexField lap = mu_laplacian(p3, v);
  CHECK(lap[0] == doctest::Approx(1.0));
  CHECK(lap[1] == doctest::Approx(-2.0));
  CHECK(lap[2] == doctest::Approx(1.0));

  // Constants are in the kernel.
  const VertexField flat = mu_laplacian(p3, VertexField::Constant(3, 4.2));
  CHECK(flat.cwiseAbs().maxCoeff() == 0.0);

  const WeightedGraph pair =
      WeightedGraph::build({{"0", "1", 2.5}}, {{"0", 1.0}, {"1", 3.0}});
  VertexField u(2);
  u[pair.index_of("0")] = 1.0;
  u[pair.index_of("1")] = 0.0;
  const VertexField lap2 = mu_laplacian(pair, u);
  CHECK(lap2[pair.index_of("0")] == doctest::Approx(-2.5));
  CHECK(lap2[pair.index_of("1")] == doctest::Approx(2.5 / 3.0));
}

TEST_CASE("gradient_form evaluates the half-sum of products") {
  const WeightedGraph p3 = path_graph(3);
  VertexField v = p3.zero_field();
  v[1] = 1.0;
  const VertexField gamma = gradient_form(p3, v, v);
  CHECK(gamma[0] == doctest::Approx(0.5));
  CHECK(gamma[1] == doctest::Approx(1.0));
  CHECK(gamma[2] == doctest::Approx(0.5));

  CHECK(gradient_form(p3, v, p3.zero_field()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("gradient_form is symmetric and bilinear") {
  Rng rng(7);
  for (int k = 0; k < 20; ++k) {
    const WeightedGraph g = random_graph(rng);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    VertexField v1(g.vertex_count()), v2(g.vertex_count()), v3(g.vertex_count());
    for (int x = 0; x < g.vertex_count(); ++x) {
      v1[x] = dist(rng);
      v2[x] = dist(rng);
      v3[x] = dist(rng);
    }
    const double a = dist(rng), b = dist(rng);
    const VertexField sym = gradient_form(g, v1, v2) - gradient_form(g, v2, v1);
    CHECK(sym.cwiseAbs().maxCoeff() <= 1e-12);
    const VertexField lin = gradient_form(g, a * v1 + b * v2, v3) -
                            a * gradient_form(g, v1, v3) - b * gradient_form(g, v2, v3);
    CHECK(lin.cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("d_mu is the maximum weighted-degree-to-measure ratio") {
  CHECK(d_mu(path_graph(3)) == doctest::Approx(2.0));
  const WeightedGraph pair =
      WeightedGraph::build({{"0", "1", 2.5}}, {{"0", 1.0}, {"1", 3.0}});
  CHECK(d_mu(pair) == doctest::Approx(2.5));
  CHECK(d_mu(path_graph(2)) == doctest::Approx(1.0));
}

TEST_CASE("decompose_domain splits boundary and interior") {
  const WeightedGraph p5 = path_graph(5);
  const DomainDecomposition dom =
      decompose_domain(p5, std::vector<std::string>{"1", "2", "3"});
  CHECK(dom.boundary == std::vector<int>{p5.index_of("1"), p5.index_of("3")});
  CHECK(dom.interior == std::vector<int>{p5.index_of("2")});

  const WeightedGraph p6 = path_graph(6);
  const DomainDecomposition dom6 =
      decompose_domain(p6, std::vector<std::string>{"1", "2", "3", "4"});
  CHECK(dom6.boundary == std::vector<int>{p6.index_of("1"), p6.index_of("4")});
  CHECK(dom6.interior == std::vector<int>{p6.index_of("2"), p6.index_of("3")});
}

TEST_CASE("decompose_domain rejects degenerate splits") {
  const WeightedGraph p5 = path_graph(5);
  CHECK_THROWS_WITH_AS(
      decompose_domain(p5, std::vector<std::string>{"0", "1", "2", "3", "4"}),
      doctest::Contains("EmptyBoundary"), Error);
  CHECK_THROWS_WITH_AS(decompose_domain(p5, std::vector<std::string>{"1", "2"}),
                       doctest::Contains("EmptyInterior"), Error);
  CHECK_THROWS_WITH_AS(decompose_domain(p5, std::vector<std::string>{"7"}),
                       doctest::Contains("UnknownVertex"), Error);
}

TEST_CASE("dirichlet_laplacian forces zero off the interior") {
  const WeightedGraph p5 = path_graph(5);
  const DomainDecomposition dom =
      decompose_domain(p5, std::vector<std::string>{"1", "2", "3"});
  VertexField v = p5.zero_field();
  v[2] = 0.7;
  const VertexField lap = dirichlet_laplacian(p5, dom, v);
  CHECK(lap[2] == doctest::Approx(-1.4));
  CHECK(lap[0] == 0.0);
  CHECK(lap[1] == 0.0);

  const WeightedGraph p6 = path_graph(6);
  const DomainDecomposition dom6 =
      decompose_domain(p6, std::vector<std::string>{"1", "2", "3", "4"});
  VertexField u = p6.zero_field();
  u[2] = 2.0;  // a
  u[3] = 5.0;  // b
  const VertexField lap6 = dirichlet_laplacian(p6, dom6, u);
  CHECK(lap6[2] == doctest::Approx(5.0 - 2.0 * 2.0));
  CHECK(lap6[3] == doctest::Approx(2.0 - 2.0 * 5.0));

  CHECK(dirichlet_laplacian(p5, dom, p5.zero_field()).cwiseAbs().maxCoeff() == 0.0);

  VertexField bad = p5.zero_field();
  bad[0] = 1.0;
  CHECK_THROWS_WITH_AS(dirichlet_laplacian(p5, dom, bad),
                       doctest::Contains("NotDirichletField"), Error);
}

TEST_CASE("integrate sums measure-weighted values") {
  const WeightedGraph p3 = path_graph(3);
  VertexField v(3);
  v << 1.0, 2.0, 3.0;
  const std::vector<int> all = {0, 1, 2};
  CHECK(integrate(p3, v, all) == doctest::Approx(6.0));
  CHECK(integrate(p3, p3.zero_field(), all) == 0.0);

  const WeightedGraph pair =
      WeightedGraph::build({{"0", "1", 1.0}}, {{"0", 1.0}, {"1", 3.0}});
  VertexField u(2);
  u[pair.index_of("0")] = 2.0;
  u[pair.index_of("1")] = 5.0;
  const std::vector<int> one = {pair.index_of("1")};
  CHECK(integrate(pair, u, one) == doctest::Approx(15.0));
  CHECK(integrate(p3, VertexField::Ones(3), all) == doctest::Approx(p3.total_measure()));

  const std::vector<int> outside = {5};
  CHECK_THROWS_WITH_AS(integrate(p3, v, outside), doctest::Contains("UnknownVertex"),
                       Error);
  CHECK_THROWS_WITH_AS(integrate(p3, VertexField::Ones(2), all),
                       doctest::Contains("UnknownVertex"), Error);
}

TEST_CASE("lp_norm covers finite exponents and the sup norm") {
  const WeightedGraph p2 = path_graph(2);
  VertexField v(2);
  v << 3.0, 4.0;
  const std::vector<int> all = {0, 1};
  CHECK(lp_norm(p2, v, 2.0, all) == doctest::Approx(5.0));
  VertexField s(2);
  s << -3.0, 4.0;
  CHECK(lp_norm(p2, s, inf_exponent, all) == doctest::Approx(4.0));
  CHECK(lp_norm(p2, p2.zero_field(), 1.0, all) == 0.0);
  CHECK(lp_norm(p2, p2.zero_field(), 3.5, all) == 0.0);
  CHECK_THROWS_WITH_AS(lp_norm(p2, v, 0.5, all), doctest::Contains("InvalidExponent"),
                       Error);
}

TEST_CASE("verify_green vanishes on hand-checked fields") {
  const WeightedGraph p6 = path_graph(6);
  const DomainDecomposition dom =
      decompose_domain(p6, std::vector<std::string>{"1", "2", "3", "4"});
  CHECK(verify_green(p6, dom, p6.zero_field(), p6.zero_field()) == 0.0);

  VertexField w = p6.zero_field(), v = p6.zero_field();
  w[2] = 1.0;
  v[3] = 1.0;
  CHECK(std::abs(verify_green(p6, dom, w, v)) <= 1e-12);
}

TEST_CASE("Green's formula and self-adjointness hold on random instances") {
  Rng rng(11);
  for (int k = 0; k < 100; ++k) {
    const WeightedGraph g = random_graph(rng);
    const DomainDecomposition dom = random_domain(rng, g);
    const VertexField w = random_dirichlet_field(rng, g, dom);
    const VertexField v = random_dirichlet_field(rng, g, dom);

    const VertexField lw = dirichlet_laplacian(g, dom, w);
    const VertexField lv = dirichlet_laplacian(g, dom, v);
    double lhs = 0.0, rhs = 0.0;
    for (int x : dom.interior) {
      lhs += g.measure(x) * lw[x] * v[x];
      rhs += g.measure(x) * w[x] * lv[x];
    }
    CHECK(std::abs(verify_green(g, dom, w, v)) <= 1e-12 * (1.0 + std::abs(lhs)));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs)));
  }
}

TEST_CASE("the Dirichlet form is positive definite on the interior") {
  Rng rng(13);
  for (int k = 0; k < 40; ++k) {
    const WeightedGraph g = random_graph(rng);
    const DomainDecomposition dom = random_domain(rng, g);
    const VertexField v = random_dirichlet_field(rng, g, dom);
    const VertexField lap = dirichlet_laplacian(g, dom, v);
    double form = 0.0;
    for (int x : dom.interior) form -= g.measure(x) * lap[x] * v[x];
    CHECK(form >= -1e-14);
    if (lp_norm(g, v, inf_exponent, dom.interior) > 1e-3) CHECK(form > 0.0);
  }
  // Equality only for the zero field.
  const WeightedGraph p5 = path_graph(5);
  const DomainDecomposition dom =
      decompose_domain(p5, std::vector<std::string>{"1", "2", "3"});
  const VertexField z = p5.zero_field();
  CHECK(integrate(p5, gradient_form(p5, z, z), dom.omega) == 0.0);
}

TEST_CASE("pointwise Laplacian bound with factor 2 D_mu") {
  Rng rng(17);
  for (int k = 0; k < 50; ++k) {
    const WeightedGraph g = random_graph(rng);
    const DomainDecomposition dom = random_domain(rng, g);
    const VertexField v = random_dirichlet_field(rng, g, dom);
    const VertexField lap = dirichlet_laplacian(g, dom, v);
    const VertexField grad_sq = gradient_form(g, v, v);
    const double dmu = d_mu(g);
    for (int x : dom.interior)
      CHECK(lap[x] * lap[x] <= 2.0 * dmu * grad_sq[x] + 1e-10);
  }
}

TEST_CASE("smallest Dirichlet eigenvalue matches the hand eigenproblems") {
  const WeightedGraph p5 = path_graph(5);
  const DomainDecomposition dom5 =
      decompose_domain(p5, std::vector<std::string>{"1", "2", "3"});
  CHECK(smallest_dirichlet_eigenvalue(p5, dom5) == doctest::Approx(2.0).epsilon(1e-12));

  const WeightedGraph p6 = path_graph(6);
  const DomainDecomposition dom6 =
      decompose_domain(p6, std::vector<std::string>{"1", "2", "3", "4"});
  CHECK(smallest_dirichlet_eigenvalue(p6, dom6) == doctest::Approx(1.0).epsilon(1e-12));

  Rng rng(19);
  for (int k = 0; k < 10; ++k) {
    const WeightedGraph g = random_graph(rng);
    const DomainDecomposition dom = random_domain(rng, g);
    CHECK(smallest_dirichlet_eigenvalue(g, dom) > 0.0);
  }
}

TEST_CASE("Sobolev embedding holds with the derived constants") {
  Rng rng(23);
  for (int k = 0; k < 10; ++k) {
    const WeightedGraph g = random_graph(rng);
    const DomainDecomposition dom = random_domain(rng, g);
    for (double q : {1.0, 2.0, 4.0, inf_exponent}) {
      const double cq = embedding_constant(g, dom, q);
      for (int j = 0; j < 25; ++j) {
        const VertexField v = random_dirichlet_field(rng, g, dom);
        const double norm_q = lp_norm(g, v, q, dom.omega);
        const double grad = std::sqrt(integrate(g, gradient_form(g, v, v), dom.omega));
        CHECK(norm_q <= cq * grad + 1e-12);
      }
    }
  }
}

TEST_CASE("the q = 2 embedding is tight on the ground state") {
  Rng rng(29);
  for (int k = 0; k < 10; ++k) {
    const WeightedGraph g = random_graph(rng);
    const DomainDecomposition dom = random_domain(rng, g);
    const DirichletGroundState ground = dirichlet_ground_state(g, dom);
    const double c2 = embedding_constant(g, dom, 2.0);
    const double lhs = lp_norm(g, ground.field, 2.0, dom.omega);
    const double rhs =
        c2 * std::sqrt(integrate(g, gradient_form(g, ground.field, ground.field), dom.omega));
    CHECK(std::abs(lhs - rhs) <= 1e-10);
  }
}

TEST_CASE("inverse power iteration agrees with the dense path") {
  // Force the iterative branch by rebuilding a graph large enough to cross
  // the dense-size threshold: a long path with domain covering most of it.
  std::vector<WeightedGraph::LabeledEdge> edges;
  const int n = 600;
  for (int k = 0; k + 1 < n; ++k)
    edges.emplace_back(std::to_string(k), std::to_string(k + 1), 1.0);
  const WeightedGraph g = WeightedGraph::build(edges);
  std::vector<std::string> omega;
  for (int k = 1; k + 1 < n; ++k) omega.push_back(std::to_string(k));
  const DomainDecomposition dom = decompose_domain(g, omega);
  REQUIRE(dom.interior_size() == n - 4);
  REQUIRE(dom.interior_size() > 512);

  const double lambda = smallest_dirichlet_eigenvalue(g, dom);
  // Path Dirichlet spectrum: 2 - 2 cos(pi / (m + 1)) for the smallest mode.
  const double expected = 2.0 - 2.0 * std::cos(M_PI / (dom.interior_size() + 1));
  CHECK(lambda == doctest::Approx(expected).epsilon(1e-9));
}
