#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "gwave/cli.hpp"

namespace {

gwave::RunConfig load_config(const std::string& problem_path) {
  return gwave::parse_problem_file(problem_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver for the nonlinear damped wave equation on weighted graphs"};
  app.require_subcommand(1);

  std::string problem_path, graph_path, measure_path, domain_path, out_path, traj_out;
  int n = 0;
  int samples = 0;
  double dt = 0.0;
  std::uint64_t seed = 0;
  std::vector<int> n_list;

  CLI::App* solve = app.add_subcommand("solve", "run the Rothe time stepper");
  solve->add_option("--problem", problem_path, "problem config file")->required();
  solve->add_option("--graph", graph_path, "edge-list file (overrides config)");
  solve->add_option("--measure", measure_path, "vertex measure file (overrides config)");
  solve->add_option("--domain", domain_path, "domain file (overrides config)");
  solve->add_option("--n", n, "number of time steps (overrides config)");
  solve->add_option("--out", out_path, "trajectory CSV path (overrides config)");

  CLI::App* converge = app.add_subcommand("converge", "grid refinement study");
  converge->add_option("--problem", problem_path, "problem config file")->required();
  converge->add_option("--n-list", n_list, "nested grid sizes")->required()->delimiter(',');
  converge->add_option("--samples", samples, "number of sample times")->default_val(200);
  converge->add_option("--out", out_path, "report CSV path (overrides config)");

  CLI::App* oracle = app.add_subcommand("oracle", "compare against the RK4 reference");
  oracle->add_option("--problem", problem_path, "problem config file")->required();
  oracle->add_option("--dt", dt, "reference integrator step")->required();
  oracle->add_option("--n", n, "Rothe grid size (overrides config)");
  oracle->add_option("--samples", samples, "number of sample times")->default_val(101);
  oracle->add_option("--out", out_path, "comparison CSV path (overrides config)");
  oracle->add_option("--traj-out", traj_out, "also dump the reference trajectory CSV");

  CLI::App* check = app.add_subcommand("check", "run the invariant suite");
  check->add_option("--problem", problem_path, "problem config file")->required();
  check->add_option("--seed", seed, "seed for randomized checks")->default_val(42);

  CLI11_PARSE(app, argc, argv);

  try {
    gwave::RunConfig config = load_config(problem_path);
    if (!graph_path.empty()) config.graph_path = graph_path;
    if (!measure_path.empty()) config.measure_path = measure_path;
    if (!domain_path.empty()) config.domain_path = domain_path;
    if (!out_path.empty()) config.out_path = out_path;
    if (n > 0) config.n = n;

    if (solve->parsed()) {
      gwave::cmd_solve(config);
    } else if (converge->parsed()) {
      gwave::cmd_converge(config, n_list, samples, std::cout);
    } else if (oracle->parsed()) {
      gwave::cmd_oracle(config, dt, samples, std::cout, traj_out);
    } else if (check->parsed()) {
      if (!gwave::cmd_check(config, seed, std::cout)) return 1;
    }
  } catch (const gwave::Error& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  } catch (const std::exception& error) {
    std::cerr << "error: Internal: " << error.what() << "\n";
    return 2;
  }
  return 0;
}
