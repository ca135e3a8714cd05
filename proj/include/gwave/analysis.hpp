#ifndef GWAVE_ANALYSIS_HPP
#define GWAVE_ANALYSIS_HPP

#include <span>
#include <utility>
#include <vector>

#include "gwave/oracle.hpp"
#include "gwave/rothe.hpp"

namespace gwave {

/// Hoelder-in-time regularity data for a forcing term:
/// ||f(s1,.) - f(s2,.)||_{L^2(interior)} <= C |s1 - s2|^gamma, plus
/// c' = ||f(0,.)||^2.
struct HolderSpec {
  double C = 0.0;
  double gamma = 1.0;
  double c_prime = 0.0;
};

HolderSpec declared_holder(const ForcingSpec& forcing, const WeightedGraph& g,
                           const DomainDecomposition& dom);

/// Energy of a displacement/velocity pair,
///   int_Omega |grad phi|^2 dmu + int_interior |phi_t|^2 dmu.
/// Zero exactly when both vanish on the interior.
double energy(const WeightedGraph& g, const DomainDecomposition& dom,
              const VertexField& phi, const VertexField& phi_t);

/// Runs the same problem with the Newton-only and minimize-only inner
/// solvers and returns the energy of the trajectory difference at every grid
/// time. Uniqueness of the step solutions makes the series vanish.
struct EnergyProbeResult {
  std::vector<double> times;
  std::vector<double> values;
  double max_value = 0.0;
};

EnergyProbeResult energy_monotonicity_probe(const WeightedGraph& g,
                                            const DomainDecomposition& dom,
                                            const ProblemSpec& spec, const TimeGrid& grid,
                                            double tol);
EnergyProbeResult energy_monotonicity_probe(const WeightedGraph& g,
                                            const DomainDecomposition& dom,
                                            const ProblemSpec& spec, const TimeGrid& grid,
                                            const SolveOptions& first,
                                            const SolveOptions& second);

/// Least-squares fit of log||f(s1)-f(s2)|| against log|s1-s2| over all
/// sample-time pairs, plus the pair that maximizes the constant implied by
/// the declared exponent.
struct HolderFit {
  double C_fit = 0.0;
  double gamma_fit = 1.0;
  double worst_constant = 0.0;          // max ||df|| / |ds|^declared_gamma
  std::pair<double, double> worst_pair = {0.0, 0.0};
  int pairs_used = 0;
  HolderSpec declared;
  bool pass = false;  // worst_constant <= declared C (up to roundoff)
};

HolderFit holder_estimate(const ForcingSpec& forcing, const WeightedGraph& g,
                          const DomainDecomposition& dom,
                          std::span<const double> sample_times);
HolderFit holder_estimate(const ForcingSpec& forcing, const WeightedGraph& g,
                          const DomainDecomposition& dom,
                          std::span<const double> sample_times, const HolderSpec& declared);

/// Cauchy-style refinement study over nested grids: d_k is the sup over
/// sampled times of the L^2(Omega) distance between the Rothe interpolants
/// at levels n_k and n_{k+1}. Slopes are reported as positive decay orders
/// (distance ~ n^{-slope}).
struct ConvergenceReport {
  std::vector<int> n_list;
  std::vector<double> distances;     // size n_list.size() - 1
  double slope = 0.0;
  std::vector<double> oracle_err_u;  // per level, when an oracle is supplied
  std::vector<double> oracle_err_w;
  double oracle_slope_u = 0.0;
};

ConvergenceReport convergence_study(const WeightedGraph& g, const DomainDecomposition& dom,
                                    const ProblemSpec& spec, std::span<const int> n_list,
                                    int sample_count, double tol,
                                    const OracleTrajectory* oracle = nullptr);

/// Sup over the sample times of ||u^(n)(t) - u_oracle(t)||_{L^2(Omega)} and
/// the same for the velocity interpolant against u_t.
struct OracleErrors {
  double err_u = 0.0;
  double err_w = 0.0;
};

OracleErrors oracle_error(const WeightedGraph& g, const DomainDecomposition& dom,
                          const RotheSequence& seq, const OracleTrajectory& traj,
                          std::span<const double> sample_times);

/// count uniformly spaced times spanning [0, T] (endpoints included).
std::vector<double> uniform_times(double T, int count);

/// Least-squares slope of log(y) against log(x); pairs with y <= 0 dropped.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace gwave

#endif  // GWAVE_ANALYSIS_HPP
