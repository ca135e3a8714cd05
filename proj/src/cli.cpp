#include "gwave/cli.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "gwave/random.hpp"

namespace gwave {

LoadedProblem load_problem(const RunConfig& config) {
  if (config.graph_path.empty()) fail(errc::parse_error, "no graph file configured");
  if (config.domain_path.empty()) fail(errc::parse_error, "no domain file configured");

  std::map<std::string, double> measures;
  if (!config.measure_path.empty()) measures = parse_measures(read_file(config.measure_path));

  LoadedProblem problem{
      WeightedGraph::build(parse_edge_list(read_file(config.graph_path)), measures),
      {},
      {},
      config.n,
      config.tol,
      config.out_path};
  problem.dom = decompose_domain(problem.graph, parse_domain(read_file(config.domain_path)));

  problem.spec.p = config.p;
  problem.spec.T = config.T;
  problem.spec.g = dirichlet_field(problem.graph, problem.dom, config.g);
  problem.spec.h = dirichlet_field(problem.graph, problem.dom, config.h);

  const ForcingKind kind = forcing_kind_from_name(config.forcing_kind);
  const VertexField amplitude = dirichlet_field(problem.graph, problem.dom, config.amplitude);
  switch (kind) {
    case ForcingKind::zero: problem.spec.forcing = ForcingSpec::zero(); break;
    case ForcingKind::constant: problem.spec.forcing = ForcingSpec::constant(amplitude); break;
    case ForcingKind::sinusoid:
      problem.spec.forcing = ForcingSpec::sinusoid(amplitude, config.forcing_frequency);
      break;
    case ForcingKind::sqrt_time: problem.spec.forcing = ForcingSpec::sqrt_time(amplitude); break;
    case ForcingKind::custom:
      fail(errc::unknown_forcing_kind, "custom forcing is not expressible in a config file");
  }
  validate_problem(problem.graph, problem.dom, problem.spec);
  return problem;
}

void cmd_solve(const RunConfig& config) {
  const LoadedProblem problem = load_problem(config);
  if (problem.out_path.empty()) fail(errc::parse_error, "no output path configured");
  log(LogLevel::info, "solving " + std::to_string(problem.n) + " steps on " +
                          std::to_string(problem.graph.vertex_count()) + " vertices");

  const TimeGrid grid = make_grid(problem.spec.T, problem.n);
  SolveOptions options;
  options.tol = problem.tol;
  const RotheSequence seq = run(problem.graph, problem.dom, problem.spec, grid, options);

  std::vector<std::vector<std::string>> rows;
  rows.reserve(static_cast<size_t>(grid.n + 1) * problem.dom.omega.size());
  for (int i = 0; i <= grid.n; ++i)
    for (int x : problem.dom.omega)
      rows.push_back({format_double(grid.time(i)), problem.graph.label(x),
                      format_double(seq.u[static_cast<size_t>(i)][x]),
                      format_double(seq.w[static_cast<size_t>(i)][x])});
  write_csv(problem.out_path, "t,vertex,u,w", rows);
  log(LogLevel::info,
      "wrote " + problem.out_path + " (" + std::to_string(rows.size()) + " rows)");
}

void cmd_converge(const RunConfig& config, const std::vector<int>& n_list, int samples,
                  std::ostream& out) {
  const LoadedProblem problem = load_problem(config);
  if (problem.out_path.empty()) fail(errc::parse_error, "no output path configured");
  const ConvergenceReport report =
      convergence_study(problem.graph, problem.dom, problem.spec, n_list, samples, problem.tol);

  std::vector<std::vector<std::string>> rows;
  for (size_t k = 0; k < report.distances.size(); ++k)
    rows.push_back({std::to_string(report.n_list[k]), std::to_string(report.n_list[k + 1]),
                    format_double(report.distances[k])});
  write_csv(problem.out_path, "n_coarse,n_fine,d_sup", rows);
  out << "decay order " << format_double(report.slope) << " over "
      << report.distances.size() << " refinements\n";
}

void cmd_oracle(const RunConfig& config, double dt, int samples, std::ostream& out,
                const std::string& traj_out) {
  const LoadedProblem problem = load_problem(config);
  if (problem.out_path.empty()) fail(errc::parse_error, "no output path configured");

  const std::vector<double> times = uniform_times(problem.spec.T, samples);
  log(LogLevel::debug, "reference integration at dt = " + format_double(dt));
  const OracleTrajectory traj =
      mol_integrate(problem.graph, problem.dom, problem.spec, dt, times);
  const TimeGrid grid = make_grid(problem.spec.T, problem.n);
  SolveOptions options;
  options.tol = problem.tol;
  const RotheSequence seq = run(problem.graph, problem.dom, problem.spec, grid, options);

  std::vector<std::vector<std::string>> rows;
  double sup_u = 0.0, sup_w = 0.0;
  for (double t : times) {
    const int k = traj.sample_index(t);
    const VertexField du = interpolant_u(seq, t) - traj.u[static_cast<size_t>(k)];
    const VertexField dw = interpolant_w(seq, t) - traj.v[static_cast<size_t>(k)];
    const double eu = lp_norm(problem.graph, du, 2.0, problem.dom.omega);
    const double ew = lp_norm(problem.graph, dw, 2.0, problem.dom.omega);
    sup_u = std::max(sup_u, eu);
    sup_w = std::max(sup_w, ew);
    rows.push_back({format_double(t), format_double(eu), format_double(ew)});
  }
  write_csv(problem.out_path, "t,dist_u,dist_w", rows);

  if (!traj_out.empty()) {
    std::vector<std::vector<std::string>> traj_rows;
    for (size_t k = 0; k < traj.times.size(); ++k)
      for (int x : problem.dom.omega)
        traj_rows.push_back({format_double(traj.times[k]), problem.graph.label(x),
                             format_double(traj.u[k][x]), format_double(traj.v[k][x])});
    write_csv(traj_out, "t,vertex,u,v", traj_rows);
  }
  out << "sup dist_u " << format_double(sup_u) << ", sup dist_w " << format_double(sup_w)
      << " over " << samples << " samples\n";
}

namespace {

struct CheckTable {
  std::ostream& out;
  bool all_ok = true;

  void row(const std::string& name, bool ok, const std::string& detail) {
    all_ok = all_ok && ok;
    out << (ok ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
  }
};

double relative(double residual, double scale) {
  return std::abs(residual) / (1.0 + std::abs(scale));
}

}  // namespace

bool cmd_check(const RunConfig& config, std::uint64_t seed, std::ostream& out) {
  const LoadedProblem problem = load_problem(config);
  Rng rng(seed);
  CheckTable table{out};

  // Discrete-calculus identities on randomized instances.
  {
    double worst_green = 0.0, worst_adjoint = 0.0, worst_symmetry = 0.0, worst_bound = 0.0;
    const int instances = 100;
    for (int k = 0; k < instances; ++k) {
      const WeightedGraph g = random_graph(rng);
      const DomainDecomposition dom = random_domain(rng, g);
      const VertexField w = random_dirichlet_field(rng, g, dom);
      const VertexField v = random_dirichlet_field(rng, g, dom);

      const VertexField lw = dirichlet_laplacian(g, dom, w);
      const VertexField lv = dirichlet_laplacian(g, dom, v);
      double lhs = 0.0;
      for (int x : dom.interior) lhs += g.measure(x) * lw[x] * v[x];
      worst_green = std::max(worst_green, relative(verify_green(g, dom, w, v), lhs));

      double rhs = 0.0;
      for (int x : dom.interior) rhs += g.measure(x) * w[x] * lv[x];
      worst_adjoint = std::max(worst_adjoint, relative(lhs - rhs, lhs));

      const VertexField gamma_wv = gradient_form(g, w, v);
      const VertexField gamma_vw = gradient_form(g, v, w);
      const VertexField grad_sq = gradient_form(g, w, w);
      const double dmu = d_mu(g);
      for (int x = 0; x < g.vertex_count(); ++x)
        worst_symmetry = std::max(worst_symmetry, relative(gamma_wv[x] - gamma_vw[x], gamma_wv[x]));
      for (int x : dom.interior)
        worst_bound = std::max(worst_bound, lw[x] * lw[x] - 2.0 * dmu * grad_sq[x]);
    }
    table.row("green-formula", worst_green <= 1e-12,
              "max relative residual " + format_double(worst_green) + " on " +
                  std::to_string(instances) + " instances");
    table.row("self-adjointness", worst_adjoint <= 1e-12,
              "max relative residual " + format_double(worst_adjoint));
    table.row("gamma-symmetry", worst_symmetry <= 1e-12,
              "max relative asymmetry " + format_double(worst_symmetry));
    table.row("laplacian-bound", worst_bound <= 1e-10,
              "max excess over 2 D_mu |grad|^2: " + format_double(worst_bound));
  }

  // Sobolev embedding on the configured graph.
  {
    const double lambda = smallest_dirichlet_eigenvalue(problem.graph, problem.dom);
    const DirichletGroundState ground = dirichlet_ground_state(problem.graph, problem.dom);
    bool ok = lambda > 0.0;
    double worst_gap = 0.0;
    for (double q : {1.0, 2.0, 4.0, inf_exponent}) {
      const double cq = embedding_constant(problem.graph, problem.dom, q);
      for (int k = 0; k < 200; ++k) {
        const VertexField v = random_dirichlet_field(rng, problem.graph, problem.dom);
        const double norm_q = lp_norm(problem.graph, v, q, problem.dom.omega);
        const double grad =
            std::sqrt(integrate(problem.graph, gradient_form(problem.graph, v, v),
                                problem.dom.omega));
        worst_gap = std::max(worst_gap, norm_q - cq * grad);
      }
    }
    ok = ok && worst_gap <= 1e-12;
    const double c2 = embedding_constant(problem.graph, problem.dom, 2.0);
    const double lhs = lp_norm(problem.graph, ground.field, 2.0, problem.dom.omega);
    const double rhs = c2 * std::sqrt(integrate(problem.graph,
                                                gradient_form(problem.graph, ground.field,
                                                              ground.field),
                                                problem.dom.omega));
    const double tightness = std::abs(lhs - rhs);
    ok = ok && tightness <= 1e-10;
    table.row("embedding", ok,
              "lambda_1 " + format_double(lambda) + ", max violation " +
                  format_double(worst_gap) + ", q=2 tightness gap " + format_double(tightness));
  }

  // Variational consistency on randomized step states.
  {
    double worst_identity = 0.0, worst_fd = 0.0;
    const int instances = 20;
    for (int k = 0; k < instances; ++k) {
      const WeightedGraph g = random_graph(rng, {5, 12, 0.5, 2.0, 0.5, 2.0, 0.25});
      const DomainDecomposition dom = random_domain(rng, g);
      ProblemSpec spec;
      spec.p = (k % 3 == 0) ? 1.5 : (k % 3 == 1 ? 2.0 : 3.0);
      spec.T = 1.0;
      spec.g = g.zero_field();
      spec.h = g.zero_field();

      StepState state;
      state.index = 1;
      state.delta = 0.2;
      state.u_prev = random_dirichlet_field(rng, g, dom);
      state.u_prev2 = random_dirichlet_field(rng, g, dom);
      state.f_i = random_dirichlet_field(rng, g, dom);
      // Keep the damping argument away from 0 so central differences of the
      // |w|^{p+1} term stay well conditioned for p < 2.
      VertexField u = g.zero_field();
      {
        const VertexField w = random_dirichlet_field(rng, g, dom, 0.1, 1.5);
        for (int x : dom.interior) u[x] = state.u_prev[x] + state.delta * w[x];
      }

      const VertexField grad = functional_gradient(g, dom, spec, state, u);
      const VertexField residual = step_residual(g, dom, spec, state, u);
      for (int x : dom.interior)
        worst_identity = std::max(worst_identity, relative(grad[x] - 2.0 * residual[x], grad[x]));

      const double eta = 1e-6;
      for (int x : dom.interior) {
        VertexField up = u, down = u;
        up[x] += eta;
        down[x] -= eta;
        const double fd = (evaluate_functional(g, dom, spec, state, up) -
                           evaluate_functional(g, dom, spec, state, down)) /
                          (2.0 * eta);
        const double analytic = g.measure(x) * grad[x];
        worst_fd = std::max(worst_fd, std::abs(fd - analytic) / (1.0 + std::abs(fd)));
      }
    }
    table.row("gradient-identity", worst_identity <= 1e-14,
              "max relative gap to 2 F(u): " + format_double(worst_identity));
    table.row("gradient-fd", worst_fd <= 1e-5,
              "max relative gap to central differences: " + format_double(worst_fd));
  }

  // Rothe run on the configured problem: endpoints, a priori slacks, bounds.
  {
    const TimeGrid grid = make_grid(problem.spec.T, problem.n);
    SolveOptions options;
    options.tol = problem.tol;
    const RotheSequence seq = run(problem.graph, problem.dom, problem.spec, grid, options);

    bool endpoints = true;
    for (int i = 0; i <= grid.n; ++i)
      endpoints = endpoints &&
                  (interpolant_u(seq, grid.time(i)) - seq.u[static_cast<size_t>(i)]).norm() == 0.0;
    table.row("interpolant-endpoints", endpoints, "u^(n)(t_i) = u_i exactly");

    if (grid.delta < 1.0) {
      const AprioriReport apriori = apriori_check(problem.graph, problem.dom, seq, problem.spec);
      table.row("apriori-slacks", apriori.min_slack >= -1e-10,
                "min per-step slack " + format_double(apriori.min_slack));
      bool global = true;
      for (const AprioriStep& step : apriori.steps) global = global && step.global_ok;
      table.row("apriori-global-bound", global,
                "e^T bound " + format_double(apriori.global_bound));
    } else {
      table.row("apriori-slacks", false,
                "grid has delta = " + format_double(grid.delta) + " >= 1");
    }
  }

  // Hoelder admissibility of the configured forcing.
  {
    const std::vector<double> times = uniform_times(problem.spec.T, 24);
    const HolderFit fit = holder_estimate(problem.spec.forcing, problem.graph, problem.dom, times);
    table.row("holder-forcing", fit.pass,
              "declared (C, gamma) = (" + format_double(fit.declared.C) + ", " +
                  format_double(fit.declared.gamma) + "), worst sampled constant " +
                  format_double(fit.worst_constant));
  }

  // Cross-solver agreement on the configured problem (step uniqueness).
  {
    const TimeGrid grid = make_grid(problem.spec.T, std::min(problem.n, 8));
    const EnergyProbeResult probe =
        energy_monotonicity_probe(problem.graph, problem.dom, problem.spec, grid, problem.tol);
    table.row("solver-uniqueness", probe.max_value <= 1e-14,
              "max difference energy " + format_double(probe.max_value));
  }

  out << (table.all_ok ? "all checks passed" : "some checks FAILED") << "\n";
  return table.all_ok;
}

}  // namespace gwave
