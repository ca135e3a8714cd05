#ifndef GWAVE_ROTHE_HPP
#define GWAVE_ROTHE_HPP

#include <vector>

#include "gwave/forcing.hpp"
#include "gwave/graph.hpp"

namespace gwave {

/// The initial-value problem
///   u_tt - Delta_Omega u + |u_t|^{p-1} u_t = f   on the interior,
///   u(0) = g, u_t(0) = h,  u = 0 on the boundary for all t,
/// posed on [0, T] with damping exponent p > 1.
struct ProblemSpec {
  double p = 2.0;
  VertexField g;
  VertexField h;
  ForcingSpec forcing;
  double T = 1.0;
};

void validate_problem(const WeightedGraph& g, const DomainDecomposition& dom,
                      const ProblemSpec& spec);

/// Equidistant partition of [0, T] into n steps of size delta = T/n.
/// Time points are always computed as i*delta, never accumulated.
struct TimeGrid {
  double T = 0.0;
  int n = 0;
  double delta = 0.0;

  double time(int i) const { return i == n ? T : i * delta; }
};

TimeGrid make_grid(double T, int n);

/// Data entering the implicit equation of step i: the two previous step
/// solutions (u_{0} = g and u_{-1} = g - delta*h seed the first step), the
/// forcing sample f(t_i, .), and the step size.
struct StepState {
  int index = 1;
  VertexField u_prev;
  VertexField u_prev2;
  VertexField f_i;
  double delta = 0.0;
};

/// Residual of the implicit step equation,
///   F(u) = (u - 2 u_prev + u_prev2)/delta^2 - Delta_Omega u
///          + |(u - u_prev)/delta|^{p-1} (u - u_prev)/delta - f_i,
/// supported on the interior. F(u) = 0 characterizes the step solution.
VertexField step_residual(const WeightedGraph& g, const DomainDecomposition& dom,
                          const ProblemSpec& spec, const StepState& state,
                          const VertexField& u);

/// The variational energy of the step:
///   J(u) = int (u - 4 u_prev + 2 u_prev2)/delta^2 . u dmu
///        + int |grad u|^2 dmu
///        + 2 delta/(p+1) int |(u - u_prev)/delta|^{p+1} dmu
///        - 2 int f_i . u dmu.
/// Strictly convex; its unique minimizer solves the step equation.
double evaluate_functional(const WeightedGraph& g, const DomainDecomposition& dom,
                           const ProblemSpec& spec, const StepState& state,
                           const VertexField& u);

/// mu-weighted gradient of the functional: the field grad with
///   d/deta J(u + eta psi)|_0 = sum_x mu(x) grad(x) psi(x),
/// identically 2 * step_residual.
VertexField functional_gradient(const WeightedGraph& g, const DomainDecomposition& dom,
                                const ProblemSpec& spec, const StepState& state,
                                const VertexField& u);

enum class StepMethod {
  newton_with_fallback,  // Newton on the residual, descent on J on stagnation
  newton_only,
  minimize_only,
};

struct SolveOptions {
  double tol = 1e-10;  // on the L^2(interior) residual norm
  StepMethod method = StepMethod::newton_with_fallback;
  int max_newton = 50;
  int max_descent = 20000;
};

struct StepReport {
  int newton_iterations = 0;
  int descent_iterations = 0;
  double residual_norm = 0.0;
  bool used_fallback = false;
};

/// Solves one implicit step to ||F(u)|| <= tol. Newton uses the exact
/// Jacobian (symmetric positive definite for p > 1) with residual
/// backtracking; the fallback and the minimize_only path run line-search
/// descent on J. Initial guess u_prev + delta * w_prev.
VertexField solve_step(const WeightedGraph& g, const DomainDecomposition& dom,
                       const ProblemSpec& spec, const StepState& state,
                       const SolveOptions& options = {}, StepReport* report = nullptr);

/// The complete family {u_i, w_i, z_i} of one Rothe run:
///   u[i]  step solutions, u[0] = g,
///   w[i] = (u[i] - u[i-1])/delta with w[0] = h,
///   z[i] = (w[i] - w[i-1])/delta for i >= 1 (z[0] is kept zero for alignment).
struct RotheSequence {
  TimeGrid grid;
  std::vector<VertexField> u;
  std::vector<VertexField> w;
  std::vector<VertexField> z;
};

RotheSequence run(const WeightedGraph& g, const DomainDecomposition& dom,
                  const ProblemSpec& spec, const TimeGrid& grid,
                  const SolveOptions& options = {});

/// Piecewise-linear interpolant with value u_i at t_i.
VertexField interpolant_u(const RotheSequence& seq, double t);
/// Piecewise-linear interpolant of the difference quotients, w_i at t_i.
VertexField interpolant_w(const RotheSequence& seq, double t);

/// Step functions: value u_i / w_i on (t_{i-1}, t_i], and g / h on [-delta, 0].
VertexField step_u(const RotheSequence& seq, double t);
VertexField step_w(const RotheSequence& seq, double t);
/// Step function of the forcing: f(t_i, .) on (t_{i-1}, t_i], f(0, .) on [-delta, 0].
VertexField step_f(const RotheSequence& seq, const WeightedGraph& g,
                   const ProblemSpec& spec, double t);

/// Per-step inequality from the discrete energy estimate: for delta < 1,
///   (1 - delta) (||grad u_i||^2 + ||w_i||^2)
///     <= ||grad u_{i-1}||^2 + ||w_{i-1}||^2 + delta ||f_i||^2.
/// Also evaluates the chained exponential bound
///   ||grad u_i||^2 + ||w_i||^2 <= e^T (||grad g||^2 + ||h||^2 + T max_k ||f_k||^2).
struct AprioriStep {
  int index = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;    // rhs - lhs
  double energy = 0.0;   // ||grad u_i||^2 + ||w_i||^2
  bool step_ok = false;  // slack >= -1e-10
  bool global_ok = false;
};

struct AprioriReport {
  std::vector<AprioriStep> steps;
  double global_bound = 0.0;
  double min_slack = 0.0;
  bool all_ok = false;
};

AprioriReport apriori_check(const WeightedGraph& g, const DomainDecomposition& dom,
                            const RotheSequence& seq, const ProblemSpec& spec);

}  // namespace gwave

#endif  // GWAVE_ROTHE_HPP
