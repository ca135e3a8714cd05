#ifndef GWAVE_ORACLE_HPP
#define GWAVE_ORACLE_HPP

#include <span>
#include <string>
#include <vector>

#include "gwave/rothe.hpp"

namespace gwave {

/// Reference trajectory of the first-order system u' = v,
/// v' = Delta_Omega u - |v|^{p-1} v + f(t,.), integrated on the interior with
/// classical fixed-step RK4. Boundary values stay exactly zero at every
/// stage: the integrator state only contains interior entries.
struct OracleTrajectory {
  double dt = 0.0;           // effective step (T / step count)
  std::string method = "rk4";
  double T = 0.0;
  bool zero_forcing = false;
  std::vector<double> times;      // sorted stored sample times
  std::vector<VertexField> u;     // displacement snapshots (full-V fields)
  std::vector<VertexField> v;     // velocity snapshots

  /// Snapshot nearest to t; requires a stored sample within dt of t.
  int sample_index(double t) const;
};

/// Integrates over [0, T]. Snapshots are stored at the requested sample
/// times (snapped to the step grid), at every 100th internal step, and at
/// both endpoints. Aborts with UnstableIntegration if any state entry
/// exceeds 1e12 in magnitude or the stability heuristic
/// dt * sqrt(2 D_mu |interior|) < 1 fails up front.
OracleTrajectory mol_integrate(const WeightedGraph& g, const DomainDecomposition& dom,
                               const ProblemSpec& spec, double dt,
                               std::span<const double> sample_times = {});

/// Damped energy E(t) = int |grad u|^2 dmu + int |u_t|^2 dmu at every stored
/// snapshot. Only meaningful for zero forcing (E' = -2 int |u_t|^{p+1} <= 0);
/// rejects trajectories of forced problems.
struct EnergySeries {
  std::vector<double> times;
  std::vector<double> values;
};

EnergySeries energy_decay_check(const OracleTrajectory& traj, const WeightedGraph& g,
                                const DomainDecomposition& dom);

}  // namespace gwave

#endif  // GWAVE_ORACLE_HPP
