#include "gwave/rothe.hpp"

#include <Eigen/Cholesky>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <cmath>
#include <cstdio>
#include <limits>

#include "stiffness.hpp"

namespace gwave {

namespace {

double odd_power(double value, double p) {
  // |v|^{p-1} v, the monotone damping nonlinearity.
  return value == 0.0 ? 0.0 : std::pow(std::abs(value), p - 1.0) * value;
}

}  // namespace

void validate_problem(const WeightedGraph& g, const DomainDecomposition& dom,
                      const ProblemSpec& spec) {
  if (!(spec.p > 1.0))
    fail(errc::invalid_exponent, "damping exponent must satisfy p > 1, got " +
                                     std::to_string(spec.p));
  if (!(spec.T > 0.0))
    fail(errc::nonpositive_horizon, "horizon must be positive, got " + std::to_string(spec.T));
  require_dirichlet(g, dom, spec.g, "initial displacement");
  require_dirichlet(g, dom, spec.h, "initial velocity");
  spec.forcing.validate(g, dom);
}

TimeGrid make_grid(double T, int n) {
  if (!(T > 0.0)) fail(errc::nonpositive_horizon, "horizon must be positive, got " + std::to_string(T));
  if (n < 1) fail(errc::zero_steps, "grid needs at least one step");
  return {T, n, T / n};
}

VertexField step_residual(const WeightedGraph& g, const DomainDecomposition& dom,
                          const ProblemSpec& spec, const StepState& state,
                          const VertexField& u) {
  require_dirichlet(g, dom, u, "step candidate");
  const double delta = state.delta;
  const VertexField lap = dirichlet_laplacian(g, dom, u);
  VertexField out = g.zero_field();
  for (int x : dom.interior) {
    const double w = (u[x] - state.u_prev[x]) / delta;
    out[x] = (u[x] - 2.0 * state.u_prev[x] + state.u_prev2[x]) / (delta * delta) - lap[x] +
             odd_power(w, spec.p) - state.f_i[x];
  }
  return out;
}

double evaluate_functional(const WeightedGraph& g, const DomainDecomposition& dom,
                           const ProblemSpec& spec, const StepState& state,
                           const VertexField& u) {
  require_dirichlet(g, dom, u, "step candidate");
  const double delta = state.delta;
  double inertial = 0.0, damping = 0.0, load = 0.0;
  for (int x : dom.interior) {
    const double mu = g.measure(x);
    inertial += mu * (u[x] - 4.0 * state.u_prev[x] + 2.0 * state.u_prev2[x]) * u[x];
    damping += mu * std::pow(std::abs((u[x] - state.u_prev[x]) / delta), spec.p + 1.0);
    load += mu * state.f_i[x] * u[x];
  }
  const double dirichlet = integrate(g, gradient_form(g, u, u), dom.omega);
  return inertial / (delta * delta) + dirichlet +
         2.0 * delta / (spec.p + 1.0) * damping - 2.0 * load;
}

VertexField functional_gradient(const WeightedGraph& g, const DomainDecomposition& dom,
                                const ProblemSpec& spec, const StepState& state,
                                const VertexField& u) {
  require_dirichlet(g, dom, u, "step candidate");
  const double delta = state.delta;
  const VertexField lap = dirichlet_laplacian(g, dom, u);
  VertexField out = g.zero_field();
  for (int x : dom.interior) {
    const double w = (u[x] - state.u_prev[x]) / delta;
    out[x] = 2.0 * (u[x] - 2.0 * state.u_prev[x] + state.u_prev2[x]) / (delta * delta) -
             2.0 * lap[x] + 2.0 * odd_power(w, spec.p) - 2.0 * state.f_i[x];
  }
  return out;
}

namespace {

// Interior-coefficient workspace for the per-step solves.
struct StepWork {
  const WeightedGraph& g;
  const DomainDecomposition& dom;
  double p;
  double delta;
  Eigen::VectorXd q_prev, q_prev2, f;
  Eigen::VectorXd mu;
  Eigen::SparseMatrix<double> L;

  StepWork(const WeightedGraph& g_, const DomainDecomposition& dom_,
           const ProblemSpec& spec, const StepState& state)
      : g(g_),
        dom(dom_),
        p(spec.p),
        delta(state.delta),
        q_prev(restrict_interior(dom_, state.u_prev)),
        q_prev2(restrict_interior(dom_, state.u_prev2)),
        f(restrict_interior(dom_, state.f_i)),
        mu(detail::interior_measures(g_, dom_)),
        L(detail::interior_stiffness(g_, dom_)) {}

  Eigen::VectorXd residual(const Eigen::VectorXd& q) const {
    const double d2 = delta * delta;
    Eigen::VectorXd r = (q - 2.0 * q_prev + q_prev2) / d2 - f;
    const Eigen::VectorXd lq = L * q;
    for (int k = 0; k < q.size(); ++k) {
      const double w = (q[k] - q_prev[k]) / delta;
      r[k] += lq[k] / mu[k] + odd_power(w, p);
    }
    return r;
  }

  // L^2(interior) norm under the vertex measure.
  double norm(const Eigen::VectorXd& r) const {
    return std::sqrt(r.dot(mu.asDiagonal() * r));
  }

  double inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
    return a.dot(mu.asDiagonal() * b);
  }

  // Newton matrix M/delta^2 + L + (p/delta) M diag(|w|^{p-1}); SPD for p > 1.
  Eigen::SparseMatrix<double> newton_matrix(const Eigen::VectorXd& q) const {
    Eigen::SparseMatrix<double> a = L;
    Eigen::VectorXd diag(q.size());
    for (int k = 0; k < q.size(); ++k) {
      const double w = (q[k] - q_prev[k]) / delta;
      diag[k] = mu[k] * (1.0 / (delta * delta) + p * std::pow(std::abs(w), p - 1.0) / delta);
    }
    for (int k = 0; k < q.size(); ++k) a.coeffRef(k, k) += diag[k];
    return a;
  }
};

// Newton on the residual with residual-norm backtracking. Returns true once
// ||F|| <= tol; false on stagnation or exhausted budget.
bool newton_path(const StepWork& work, Eigen::VectorXd& q, double tol, int max_iterations,
                 int* iterations_out, double* residual_out) {
  Eigen::VectorXd r = work.residual(q);
  double rn = work.norm(r);
  int it = 0;
  const int m = static_cast<int>(q.size());
  while (rn > tol && it < max_iterations) {
    ++it;
    const Eigen::SparseMatrix<double> a = work.newton_matrix(q);
    const Eigen::VectorXd rhs = -(work.mu.asDiagonal() * r);
    Eigen::VectorXd s;
    if (m <= 512) {
      const Eigen::LLT<Eigen::MatrixXd> llt{Eigen::MatrixXd(a)};
      if (llt.info() != Eigen::Success) break;  // lost definiteness: stagnate
      s = llt.solve(rhs);
    } else {
      Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
      cg.setTolerance(1e-14);
      cg.compute(a);
      s = cg.solve(rhs);
    }

    double alpha = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving) {
      const Eigen::VectorXd q_try = q + alpha * s;
      const Eigen::VectorXd r_try = work.residual(q_try);
      const double rn_try = work.norm(r_try);
      if (rn_try < rn) {
        q = q_try;
        r = r_try;
        rn = rn_try;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
  }
  if (iterations_out) *iterations_out = it;
  if (residual_out) *residual_out = rn;
  return rn <= tol;
}

// Line-search descent on the step functional. The search direction is the
// negative mu-gradient (-2F, same ray as -F); the step length is the exact
// one-dimensional minimizer, found by bracketing and bisecting the
// directional derivative phi'(alpha) = <F(q + alpha d), d>_mu, which is
// strictly increasing along the ray (J is strictly convex).
bool descent_path(const StepWork& work, Eigen::VectorXd& q, double tol, int max_iterations,
                  int* iterations_out, double* residual_out) {
  const double dmu = d_mu(work.g);
  const double seed = 1.0 / (1.0 / (work.delta * work.delta) + 2.0 * dmu + 1.0);
  Eigen::VectorXd r = work.residual(q);
  double rn = work.norm(r);
  int it = 0;
  while (rn > tol && it < max_iterations) {
    ++it;
    const Eigen::VectorXd d = -r;
    auto slope = [&](double alpha) {
      return work.inner(work.residual(q + alpha * d), d);
    };
    // slope(0) = -||r||^2 < 0; expand until the directional derivative
    // changes sign, then bisect.
    double lo = 0.0, hi = seed;
    int expansions = 0;
    while (slope(hi) < 0.0 && expansions < 200) {
      lo = hi;
      hi *= 2.0;
      ++expansions;
    }
    if (expansions >= 200) break;
    for (int b = 0; b < 80; ++b) {
      const double mid = 0.5 * (lo + hi);
      if (slope(mid) < 0.0)
        lo = mid;
      else
        hi = mid;
    }
    const double alpha = 0.5 * (lo + hi);
    if (!(alpha > 0.0)) break;
    q += alpha * d;
    r = work.residual(q);
    rn = work.norm(r);
  }
  if (iterations_out) *iterations_out = it;
  if (residual_out) *residual_out = rn;
  return rn <= tol;
}

}  // namespace

VertexField solve_step(const WeightedGraph& g, const DomainDecomposition& dom,
                       const ProblemSpec& spec, const StepState& state,
                       const SolveOptions& options, StepReport* report) {
  if (!(state.delta > 0.0))
    fail(errc::nonpositive_step, "step size must be positive, got " + std::to_string(state.delta));
  if (!(spec.p > 1.0))
    fail(errc::invalid_exponent, "damping exponent must satisfy p > 1, got " +
                                     std::to_string(spec.p));
  require_dirichlet(g, dom, state.u_prev, "previous step");
  require_dirichlet(g, dom, state.u_prev2, "second previous step");
  require_dirichlet(g, dom, state.f_i, "forcing sample");

  const StepWork work(g, dom, spec, state);
  // Explicit-Euler predictor u_prev + delta * w_prev = 2 u_prev - u_prev2.
  Eigen::VectorXd q = 2.0 * work.q_prev - work.q_prev2;

  StepReport local;
  bool converged = false;
  switch (options.method) {
    case StepMethod::newton_only:
      converged = newton_path(work, q, options.tol, options.max_newton,
                              &local.newton_iterations, &local.residual_norm);
      break;
    case StepMethod::minimize_only:
      converged = descent_path(work, q, options.tol, options.max_descent,
                               &local.descent_iterations, &local.residual_norm);
      break;
    case StepMethod::newton_with_fallback:
      converged = newton_path(work, q, options.tol, options.max_newton,
                              &local.newton_iterations, &local.residual_norm);
      if (!converged) {
        local.used_fallback = true;
        converged = descent_path(work, q, options.tol, options.max_descent,
                                 &local.descent_iterations, &local.residual_norm);
      }
      break;
  }
  if (report) *report = local;
  if (!converged) {
    char buffer[160];
    std::snprintf(buffer, sizeof(buffer),
                  "step %d: residual %.3e above tolerance %.3e after %d Newton / %d descent "
                  "iterations",
                  state.index, local.residual_norm, options.tol, local.newton_iterations,
                  local.descent_iterations);
    fail(errc::no_convergence, buffer);
  }
  return embed_interior(g, dom, q);
}

RotheSequence run(const WeightedGraph& g, const DomainDecomposition& dom,
                  const ProblemSpec& spec, const TimeGrid& grid,
                  const SolveOptions& options) {
  validate_problem(g, dom, spec);
  const double delta = grid.delta;

  RotheSequence seq;
  seq.grid = grid;
  seq.u.reserve(static_cast<size_t>(grid.n) + 1);
  seq.w.reserve(static_cast<size_t>(grid.n) + 1);
  seq.z.reserve(static_cast<size_t>(grid.n) + 1);
  seq.u.push_back(spec.g);
  seq.w.push_back(spec.h);  // = (g - u_{-1})/delta with u_{-1} = g - delta h
  seq.z.push_back(g.zero_field());

  VertexField u_prev = spec.g;
  VertexField u_prev2 = spec.g - delta * spec.h;
  for (int i = 1; i <= grid.n; ++i) {
    VertexField f_i = spec.forcing.evaluate(grid.time(i), g);
    require_dirichlet(g, dom, f_i, "forcing sample");
    const StepState state{i, u_prev, u_prev2, std::move(f_i), delta};
    VertexField u_i = solve_step(g, dom, spec, state, options);
    seq.w.push_back((u_i - u_prev) / delta);
    seq.z.push_back((seq.w[static_cast<size_t>(i)] - seq.w[static_cast<size_t>(i) - 1]) / delta);
    u_prev2 = std::move(u_prev);
    u_prev = u_i;
    seq.u.push_back(std::move(u_i));
  }
  return seq;
}

namespace {

void require_time_range(double t, double lo, double hi) {
  if (!(t >= lo && t <= hi)) {
    char buffer[96];
    std::snprintf(buffer, sizeof(buffer), "t = %.17g outside [%.17g, %.17g]", t, lo, hi);
    fail(errc::time_out_of_range, buffer);
  }
}

// Index i in 1..n with t in [t_{i-1}, t_i], robust to rounding in t/delta.
int closed_interval_index(const TimeGrid& grid, double t) {
  int i = static_cast<int>(std::floor(t / grid.delta)) + 1;
  i = std::max(1, std::min(grid.n, i));
  while (i > 1 && t < grid.time(i - 1)) --i;
  while (i < grid.n && t > grid.time(i)) ++i;
  return i;
}

// Index i in 1..n with t in (t_{i-1}, t_i], for the step functions (t > 0).
int halfopen_interval_index(const TimeGrid& grid, double t) {
  int i = static_cast<int>(std::ceil(t / grid.delta));
  i = std::max(1, std::min(grid.n, i));
  while (i > 1 && t <= grid.time(i - 1)) --i;
  while (i < grid.n && t > grid.time(i)) ++i;
  return i;
}

}  // namespace

VertexField interpolant_u(const RotheSequence& seq, double t) {
  require_time_range(t, 0.0, seq.grid.T);
  const int i = closed_interval_index(seq.grid, t);
  if (t == seq.grid.time(i)) return seq.u[static_cast<size_t>(i)];
  if (t == seq.grid.time(i - 1)) return seq.u[static_cast<size_t>(i) - 1];
  return seq.u[static_cast<size_t>(i) - 1] + (t - seq.grid.time(i - 1)) * seq.w[static_cast<size_t>(i)];
}

VertexField interpolant_w(const RotheSequence& seq, double t) {
  require_time_range(t, 0.0, seq.grid.T);
  const int i = closed_interval_index(seq.grid, t);
  if (t == seq.grid.time(i)) return seq.w[static_cast<size_t>(i)];
  if (t == seq.grid.time(i - 1)) return seq.w[static_cast<size_t>(i) - 1];
  return seq.w[static_cast<size_t>(i) - 1] + (t - seq.grid.time(i - 1)) * seq.z[static_cast<size_t>(i)];
}

VertexField step_u(const RotheSequence& seq, double t) {
  require_time_range(t, -seq.grid.delta, seq.grid.T);
  if (t <= 0.0) return seq.u[0];
  return seq.u[static_cast<size_t>(halfopen_interval_index(seq.grid, t))];
}

VertexField step_w(const RotheSequence& seq, double t) {
  require_time_range(t, -seq.grid.delta, seq.grid.T);
  if (t <= 0.0) return seq.w[0];
  return seq.w[static_cast<size_t>(halfopen_interval_index(seq.grid, t))];
}

VertexField step_f(const RotheSequence& seq, const WeightedGraph& g,
                   const ProblemSpec& spec, double t) {
  require_time_range(t, -seq.grid.delta, seq.grid.T);
  if (t <= 0.0) return spec.forcing.evaluate(0.0, g);
  const int i = halfopen_interval_index(seq.grid, t);
  return spec.forcing.evaluate(seq.grid.time(i), g);
}

AprioriReport apriori_check(const WeightedGraph& g, const DomainDecomposition& dom,
                            const RotheSequence& seq, const ProblemSpec& spec) {
  const double delta = seq.grid.delta;
  if (!(delta < 1.0)) {
    char buffer[96];
    std::snprintf(buffer, sizeof(buffer), "a priori estimate needs delta < 1, grid has %.17g",
                  delta);
    fail(errc::step_too_large, buffer);
  }

  auto grad_sq = [&](const VertexField& v) {
    return integrate(g, gradient_form(g, v, v), dom.omega);
  };
  auto l2_sq = [&](const VertexField& v) {
    double sum = 0.0;
    for (int x : dom.interior) sum += g.measure(x) * v[x] * v[x];
    return sum;
  };

  const int n = seq.grid.n;
  double max_f_sq = 0.0;
  std::vector<double> f_sq(static_cast<size_t>(n) + 1, 0.0);
  for (int i = 1; i <= n; ++i) {
    const VertexField f_i = spec.forcing.evaluate(seq.grid.time(i), g);
    f_sq[static_cast<size_t>(i)] = l2_sq(f_i);
    max_f_sq = std::max(max_f_sq, f_sq[static_cast<size_t>(i)]);
  }

  AprioriReport report;
  report.global_bound =
      std::exp(seq.grid.T) * (grad_sq(spec.g) + l2_sq(spec.h) + seq.grid.T * max_f_sq);
  report.min_slack = std::numeric_limits<double>::infinity();
  report.all_ok = true;

  double prev_energy = grad_sq(seq.u[0]) + l2_sq(seq.w[0]);
  for (int i = 1; i <= n; ++i) {
    AprioriStep step;
    step.index = i;
    step.energy = grad_sq(seq.u[static_cast<size_t>(i)]) + l2_sq(seq.w[static_cast<size_t>(i)]);
    step.lhs = (1.0 - delta) * step.energy;
    step.rhs = prev_energy + delta * f_sq[static_cast<size_t>(i)];
    step.slack = step.rhs - step.lhs;
    step.step_ok = step.slack >= -1e-10;
    step.global_ok = step.energy <= report.global_bound;
    report.min_slack = std::min(report.min_slack, step.slack);
    report.all_ok = report.all_ok && step.step_ok && step.global_ok;
    prev_energy = step.energy;
    report.steps.push_back(step);
  }
  return report;
}

}  // namespace gwave
