#include "gwave/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "stiffness.hpp"

namespace gwave {

namespace {

double odd_power(double value, double p) {
  return value == 0.0 ? 0.0 : std::pow(std::abs(value), p - 1.0) * value;
}

}  // namespace

int OracleTrajectory::sample_index(double t) const {
  if (times.empty()) fail(errc::time_range_mismatch, "trajectory holds no samples");
  const auto it = std::lower_bound(times.begin(), times.end(), t);
  int best = static_cast<int>(std::min<size_t>(it - times.begin(), times.size() - 1));
  if (best > 0 && std::abs(times[static_cast<size_t>(best) - 1] - t) <
                      std::abs(times[static_cast<size_t>(best)] - t))
    --best;
  if (std::abs(times[static_cast<size_t>(best)] - t) > dt) {
    char buffer[96];
    std::snprintf(buffer, sizeof(buffer), "no stored sample within dt of t = %.17g", t);
    fail(errc::time_range_mismatch, buffer);
  }
  return best;
}

OracleTrajectory mol_integrate(const WeightedGraph& g, const DomainDecomposition& dom,
                               const ProblemSpec& spec, double dt,
                               std::span<const double> sample_times) {
  validate_problem(g, dom, spec);
  if (!(dt > 0.0))
    fail(errc::nonpositive_step, "integrator step must be positive, got " + std::to_string(dt));
  if (dt > spec.T)
    fail(errc::nonpositive_step, "integrator step " + std::to_string(dt) +
                                     " exceeds the horizon " + std::to_string(spec.T));

  const int m = dom.interior_size();
  const long steps = std::lround(std::ceil(spec.T / dt - 1e-9));
  const double h = spec.T / static_cast<double>(steps);

  const double heuristic = h * std::sqrt(2.0 * d_mu(g) * static_cast<double>(m));
  if (heuristic >= 1.0) {
    char buffer[128];
    std::snprintf(buffer, sizeof(buffer),
                  "dt * sqrt(2 D_mu |interior|) = %.3g >= 1; reduce the step", heuristic);
    fail(errc::unstable_integration, buffer);
  }

  for (double t : sample_times)
    if (!(t >= 0.0 && t <= spec.T)) {
      char buffer[96];
      std::snprintf(buffer, sizeof(buffer), "sample time %.17g outside [0, %.17g]", t, spec.T);
      fail(errc::time_range_mismatch, buffer);
    }

  // Step indices to store: requested samples snapped to the grid, every
  // 100th step, both endpoints.
  std::set<long> keep = {0, steps};
  for (long k = 100; k < steps; k += 100) keep.insert(k);
  for (double t : sample_times)
    keep.insert(std::clamp(std::lround(t / h), 0L, steps));

  const Eigen::SparseMatrix<double> L = detail::interior_stiffness(g, dom);
  const Eigen::VectorXd mu = detail::interior_measures(g, dom);

  auto velocity_rhs = [&](const Eigen::VectorXd& q, const Eigen::VectorXd& v, double t) {
    Eigen::VectorXd a = restrict_interior(dom, spec.forcing.evaluate(t, g));
    const Eigen::VectorXd lq = L * q;
    for (int k = 0; k < m; ++k) a[k] += -lq[k] / mu[k] - odd_power(v[k], spec.p);
    return a;
  };

  OracleTrajectory traj;
  traj.dt = h;
  traj.T = spec.T;
  traj.zero_forcing = spec.forcing.is_zero();

  Eigen::VectorXd q = restrict_interior(dom, spec.g);
  Eigen::VectorXd v = restrict_interior(dom, spec.h);

  auto store = [&](long k) {
    traj.times.push_back(k == steps ? spec.T : static_cast<double>(k) * h);
    traj.u.push_back(embed_interior(g, dom, q));
    traj.v.push_back(embed_interior(g, dom, v));
  };
  store(0);

  for (long k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * h;

    const Eigen::VectorXd k1q = v;
    const Eigen::VectorXd k1v = velocity_rhs(q, v, t);
    const Eigen::VectorXd k2q = v + 0.5 * h * k1v;
    const Eigen::VectorXd k2v = velocity_rhs(q + 0.5 * h * k1q, k2q, t + 0.5 * h);
    const Eigen::VectorXd k3q = v + 0.5 * h * k2v;
    const Eigen::VectorXd k3v = velocity_rhs(q + 0.5 * h * k2q, k3q, t + 0.5 * h);
    const Eigen::VectorXd k4q = v + h * k3v;
    const Eigen::VectorXd k4v = velocity_rhs(q + h * k3q, k4q, t + h);

    q += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
    v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);

    const double magnitude = std::max(q.cwiseAbs().maxCoeff(), v.cwiseAbs().maxCoeff());
    if (!(magnitude <= 1e12)) {
      char buffer[128];
      std::snprintf(buffer, sizeof(buffer),
                    "state magnitude %.3e exceeds 1e12 at step %ld (t = %.6g)", magnitude,
                    k + 1, static_cast<double>(k + 1) * h);
      fail(errc::unstable_integration, buffer);
    }
    if (keep.count(k + 1)) store(k + 1);
  }
  return traj;
}

EnergySeries energy_decay_check(const OracleTrajectory& traj, const WeightedGraph& g,
                                const DomainDecomposition& dom) {
  if (!traj.zero_forcing)
    fail(errc::forcing_not_zero, "the damped-energy series needs f = 0");
  EnergySeries series;
  series.times = traj.times;
  series.values.reserve(traj.times.size());
  for (size_t k = 0; k < traj.times.size(); ++k) {
    const double grad = integrate(g, gradient_form(g, traj.u[k], traj.u[k]), dom.omega);
    double kinetic = 0.0;
    for (int x : dom.interior) kinetic += g.measure(x) * traj.v[k][x] * traj.v[k][x];
    series.values.push_back(grad + kinetic);
  }
  return series;
}

}  // namespace gwave
