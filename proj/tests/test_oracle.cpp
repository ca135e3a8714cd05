#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gwave/analysis.hpp"
#include "gwave/oracle.hpp"
#include "gwave/random.hpp"
#include "support.hpp"

using namespace gwave;
using test::p5_scalar_case;
using test::path_graph;

TEST_CASE("zero data and forcing integrate to the zero trajectory") {
  test::ScalarCase c = p5_scalar_case();
  c.spec.g = c.graph.zero_field();
  const OracleTrajectory traj = mol_integrate(c.graph, c.dom, c.spec, 1e-3);
  for (const VertexField& u : traj.u) CHECK(u.cwiseAbs().maxCoeff() == 0.0);
  for (const VertexField& v : traj.v) CHECK(v.cwiseAbs().maxCoeff() == 0.0);
  CHECK(traj.times.front() == 0.0);
  CHECK(traj.times.back() == c.spec.T);
}

TEST_CASE("initial data is reproduced exactly and boundaries stay zero") {
  const test::ScalarCase c = p5_scalar_case();
  const std::vector<double> samples = uniform_times(1.0, 11);
  const OracleTrajectory traj = mol_integrate(c.graph, c.dom, c.spec, 1e-3, samples);
  CHECK((traj.u.front() - c.spec.g).cwiseAbs().maxCoeff() == 0.0);
  CHECK((traj.v.front() - c.spec.h).cwiseAbs().maxCoeff() == 0.0);
  for (size_t k = 0; k < traj.times.size(); ++k)
    for (int x = 0; x < c.graph.vertex_count(); ++x)
      if (!c.dom.in_interior[static_cast<size_t>(x)]) {
        CHECK(traj.u[k][x] == 0.0);
        CHECK(traj.v[k][x] == 0.0);
      }
  // Requested samples are present.
  for (double t : samples)
    CHECK(std::abs(traj.times[static_cast<size_t>(traj.sample_index(t))] - t) <= traj.dt);
}

TEST_CASE("the damped scalar oscillation has a nonincreasing envelope") {
  const test::ScalarCase c = p5_scalar_case(2.0, 10.0);
  const std::vector<double> samples = uniform_times(10.0, 501);
  const OracleTrajectory traj = mol_integrate(c.graph, c.dom, c.spec, 1e-3, samples);
  const int iv = c.graph.index_of("2");

  std::vector<double> peaks;
  for (size_t k = 1; k + 1 < traj.times.size(); ++k) {
    const double prev = std::abs(traj.u[k - 1][iv]);
    const double here = std::abs(traj.u[k][iv]);
    const double next = std::abs(traj.u[k + 1][iv]);
    if (here >= prev && here >= next && here > 1e-6) peaks.push_back(here);
  }
  REQUIRE(peaks.size() >= 3);
  for (size_t k = 0; k + 1 < peaks.size(); ++k) CHECK(peaks[k + 1] <= peaks[k] * 1.001);
}

TEST_CASE("fourth-order self-convergence on the scalar case") {
  const test::ScalarCase c = p5_scalar_case();
  const int iv = c.graph.index_of("2");
  const std::vector<double> at_end = {1.0};

  auto end_state = [&](double dt) {
    const OracleTrajectory traj = mol_integrate(c.graph, c.dom, c.spec, dt, at_end);
    return traj.u.back()[iv];
  };

  // Halving 1e-4 changes u(T) below 1e-10.
  CHECK(std::abs(end_state(1e-4) - end_state(5e-5)) <= 1e-10);

  // Error ratio against a much finer reference lands near 2^4 = 16.
  const double reference = end_state(3.125e-3 / 4.0);
  const double coarse = std::abs(end_state(5e-2) - reference);
  const double fine = std::abs(end_state(2.5e-2) - reference);
  REQUIRE(fine > 0.0);
  const double ratio = coarse / fine;
  CHECK(ratio >= 8.0);
  CHECK(ratio <= 32.0);
}

TEST_CASE("step validation errors") {
  const test::ScalarCase c = p5_scalar_case();
  CHECK_THROWS_WITH_AS(mol_integrate(c.graph, c.dom, c.spec, 0.0),
                       doctest::Contains("NonpositiveStep"), Error);
  CHECK_THROWS_WITH_AS(mol_integrate(c.graph, c.dom, c.spec, -1e-3),
                       doctest::Contains("NonpositiveStep"), Error);
  CHECK_THROWS_WITH_AS(mol_integrate(c.graph, c.dom, c.spec, 2.0),
                       doctest::Contains("NonpositiveStep"), Error);
  // d_mu = 2 and one interior vertex: the heuristic rejects dt >= 0.5.
  CHECK_THROWS_WITH_AS(mol_integrate(c.graph, c.dom, c.spec, 0.9),
                       doctest::Contains("UnstableIntegration"), Error);
}

TEST_CASE("runaway states abort with diagnostics") {
  test::ScalarCase c = p5_scalar_case();
  VertexField amplitude = c.graph.zero_field();
  amplitude[c.graph.index_of("2")] = 1e26;
  c.spec.forcing = ForcingSpec::constant(amplitude);
  CHECK_THROWS_WITH_AS(mol_integrate(c.graph, c.dom, c.spec, 1e-3),
                       doctest::Contains("UnstableIntegration"), Error);
}

TEST_CASE("energy decay of unforced trajectories") {
  test::ScalarCase zero = p5_scalar_case();
  zero.spec.g = zero.graph.zero_field();
  const OracleTrajectory flat = mol_integrate(zero.graph, zero.dom, zero.spec, 1e-3);
  for (double e : energy_decay_check(flat, zero.graph, zero.dom).values) CHECK(e == 0.0);

  const test::ScalarCase c = p5_scalar_case();
  const OracleTrajectory traj =
      mol_integrate(c.graph, c.dom, c.spec, 1e-3, uniform_times(1.0, 51));
  const EnergySeries series = energy_decay_check(traj, c.graph, c.dom);
  const double initial = series.values.front();
  CHECK(initial == doctest::Approx(2.0));  // int |grad g|^2 over the domain
  for (size_t k = 0; k + 1 < series.values.size(); ++k) {
    CHECK(series.values[k + 1] <= series.values[k] + 1e-8 * initial);
    if (series.values[k] > 1e-14 * initial) CHECK(series.values[k + 1] < series.values[k]);
  }
}

TEST_CASE("energy never grows across randomized unforced problems") {
  Rng rng(47);
  for (int k = 0; k < 20; ++k) {
    const WeightedGraph g = random_graph(rng, {5, 12, 0.5, 3.0, 0.5, 2.0, 0.25});
    const DomainDecomposition dom = random_domain(rng, g);
    ProblemSpec spec;
    spec.p = 1.0 + 0.5 * (1 + k % 4);
    spec.T = 1.0;
    spec.g = random_dirichlet_field(rng, g, dom);
    spec.h = random_dirichlet_field(rng, g, dom);

    const double safe_dt = 0.5 / std::sqrt(2.0 * d_mu(g) * dom.interior_size());
    const OracleTrajectory traj = mol_integrate(g, dom, spec, std::min(1e-3, safe_dt));
    const EnergySeries series = energy_decay_check(traj, g, dom);
    const double initial = series.values.front();
    CHECK(series.values.back() <= initial);
    for (size_t j = 0; j + 1 < series.values.size(); ++j)
      CHECK(series.values[j + 1] <= series.values[j] + 1e-8 * initial);
  }
}

TEST_CASE("forced trajectories are rejected by the energy check") {
  test::ScalarCase c = p5_scalar_case();
  VertexField amplitude = c.graph.zero_field();
  amplitude[c.graph.index_of("2")] = 0.5;
  c.spec.forcing = ForcingSpec::constant(amplitude);
  const OracleTrajectory traj = mol_integrate(c.graph, c.dom, c.spec, 1e-3);
  CHECK_THROWS_WITH_AS(energy_decay_check(traj, c.graph, c.dom),
                       doctest::Contains("ForcingNotZero"), Error);
}
