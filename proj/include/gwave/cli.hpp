#ifndef GWAVE_CLI_HPP
#define GWAVE_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "gwave/analysis.hpp"
#include "gwave/io.hpp"
#include "gwave/rothe.hpp"

namespace gwave {

/// A RunConfig resolved into solver inputs: graph, domain, problem data.
struct LoadedProblem {
  WeightedGraph graph;
  DomainDecomposition dom;
  ProblemSpec spec;
  int n = 0;
  double tol = 1e-10;
  std::string out_path;
};

LoadedProblem load_problem(const RunConfig& config);

/// Runs the Rothe solver and writes the trajectory CSV (columns t,vertex,u,w;
/// one row per grid time per Omega vertex) to config.out.
void cmd_solve(const RunConfig& config);

/// Refinement study over n_list; writes CSV rows n_coarse,n_fine,d_sup and
/// prints the fitted decay order on standard output.
void cmd_converge(const RunConfig& config, const std::vector<int>& n_list, int samples,
                  std::ostream& out);

/// Rothe (grid size from config) against the RK4 reference at step dt;
/// writes per-sample distances (columns t,dist_u,dist_w). An optional
/// trajectory dump (columns t,vertex,u,v) goes to traj_out.
void cmd_oracle(const RunConfig& config, double dt, int samples, std::ostream& out,
                const std::string& traj_out = "");

/// Full invariant suite on the configured problem plus seeded randomized
/// instances; prints one pass/fail line per check. Returns true when all
/// checks pass.
bool cmd_check(const RunConfig& config, std::uint64_t seed, std::ostream& out);

}  // namespace gwave

#endif  // GWAVE_CLI_HPP
