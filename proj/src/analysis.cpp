#include "gwave/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace gwave {

HolderSpec declared_holder(const ForcingSpec& forcing, const WeightedGraph& g,
                           const DomainDecomposition& dom) {
  HolderSpec spec;
  spec.C = forcing.holder_constant(g, dom);
  spec.gamma = forcing.holder_exponent();
  const double f0 = lp_norm(g, forcing.evaluate(0.0, g), 2.0, dom.interior);
  spec.c_prime = f0 * f0;
  return spec;
}

double energy(const WeightedGraph& g, const DomainDecomposition& dom,
              const VertexField& phi, const VertexField& phi_t) {
  require_dirichlet(g, dom, phi, "displacement");
  require_dirichlet(g, dom, phi_t, "velocity");
  const double grad = integrate(g, gradient_form(g, phi, phi), dom.omega);
  double kinetic = 0.0;
  for (int x : dom.interior) kinetic += g.measure(x) * phi_t[x] * phi_t[x];
  return grad + kinetic;
}

EnergyProbeResult energy_monotonicity_probe(const WeightedGraph& g,
                                            const DomainDecomposition& dom,
                                            const ProblemSpec& spec, const TimeGrid& grid,
                                            double tol) {
  const SolveOptions newton{tol, StepMethod::newton_only, 50, 20000};
  const SolveOptions descent{tol, StepMethod::minimize_only, 50, 20000};
  return energy_monotonicity_probe(g, dom, spec, grid, newton, descent);
}

EnergyProbeResult energy_monotonicity_probe(const WeightedGraph& g,
                                            const DomainDecomposition& dom,
                                            const ProblemSpec& spec, const TimeGrid& grid,
                                            const SolveOptions& first,
                                            const SolveOptions& second) {
  const RotheSequence a = run(g, dom, spec, grid, first);
  const RotheSequence b = run(g, dom, spec, grid, second);

  EnergyProbeResult result;
  for (int i = 0; i <= grid.n; ++i) {
    const VertexField du = a.u[static_cast<size_t>(i)] - b.u[static_cast<size_t>(i)];
    const VertexField dw = a.w[static_cast<size_t>(i)] - b.w[static_cast<size_t>(i)];
    const double value = energy(g, dom, du, dw);
    result.times.push_back(grid.time(i));
    result.values.push_back(value);
    result.max_value = std::max(result.max_value, value);
  }
  return result;
}

HolderFit holder_estimate(const ForcingSpec& forcing, const WeightedGraph& g,
                          const DomainDecomposition& dom,
                          std::span<const double> sample_times) {
  return holder_estimate(forcing, g, dom, sample_times, declared_holder(forcing, g, dom));
}

HolderFit holder_estimate(const ForcingSpec& forcing, const WeightedGraph& g,
                          const DomainDecomposition& dom,
                          std::span<const double> sample_times, const HolderSpec& declared) {
  std::vector<double> times(sample_times.begin(), sample_times.end());
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  if (times.size() < 3)
    fail(errc::insufficient_samples, "Hoelder estimation needs at least 3 distinct sample times");

  std::vector<VertexField> samples;
  samples.reserve(times.size());
  for (double t : times) samples.push_back(forcing.evaluate(t, g));

  HolderFit fit;
  fit.declared = declared;

  // Pairs with |ds| below 1e-9 are dropped to keep the logs finite.
  double sum_x = 0.0, sum_y = 0.0, sum_xx = 0.0, sum_xy = 0.0;
  int log_pairs = 0;
  for (size_t i = 0; i < times.size(); ++i) {
    for (size_t j = i + 1; j < times.size(); ++j) {
      const double ds = std::abs(times[j] - times[i]);
      if (ds < 1e-9) continue;
      const double dv = lp_norm(g, samples[j] - samples[i], 2.0, dom.interior);
      ++fit.pairs_used;
      const double implied = dv / std::pow(ds, declared.gamma);
      if (implied > fit.worst_constant) {
        fit.worst_constant = implied;
        fit.worst_pair = {times[i], times[j]};
      }
      if (dv > 0.0) {
        const double x = std::log(ds);
        const double y = std::log(dv);
        sum_x += x;
        sum_y += y;
        sum_xx += x * x;
        sum_xy += x * y;
        ++log_pairs;
      }
    }
  }
  if (fit.pairs_used == 0)
    fail(errc::insufficient_samples, "all sample-time pairs are closer than 1e-9");

  if (log_pairs >= 2) {
    const double denom = log_pairs * sum_xx - sum_x * sum_x;
    if (std::abs(denom) > 0.0) {
      fit.gamma_fit = (log_pairs * sum_xy - sum_x * sum_y) / denom;
      fit.C_fit = std::exp((sum_y - fit.gamma_fit * sum_x) / log_pairs);
    }
  } else {
    // Time-independent forcing: every difference vanishes.
    fit.C_fit = 0.0;
    fit.gamma_fit = declared.gamma;
  }
  fit.pass = fit.worst_constant <= declared.C * (1.0 + 1e-9) + 1e-12;
  return fit;
}

ConvergenceReport convergence_study(const WeightedGraph& g, const DomainDecomposition& dom,
                                    const ProblemSpec& spec, std::span<const int> n_list,
                                    int sample_count, double tol,
                                    const OracleTrajectory* oracle) {
  if (n_list.size() < 2)
    fail(errc::invalid_grid_list, "a refinement study needs at least two grid sizes");
  for (size_t k = 0; k + 1 < n_list.size(); ++k) {
    if (n_list[k] < 1 || n_list[k + 1] <= n_list[k] || n_list[k + 1] % n_list[k] != 0)
      fail(errc::invalid_grid_list,
           "grid sizes must be strictly increasing and nested (each divides the next)");
  }
  if (sample_count < 2) fail(errc::insufficient_samples, "need at least 2 sample times");

  const std::vector<double> times = uniform_times(spec.T, sample_count);
  SolveOptions options;
  options.tol = tol;

  std::vector<RotheSequence> runs;
  runs.reserve(n_list.size());
  for (int n : n_list) runs.push_back(run(g, dom, spec, make_grid(spec.T, n), options));

  ConvergenceReport report;
  report.n_list.assign(n_list.begin(), n_list.end());
  for (size_t k = 0; k + 1 < runs.size(); ++k) {
    double sup = 0.0;
    for (double t : times) {
      const VertexField diff = interpolant_u(runs[k + 1], t) - interpolant_u(runs[k], t);
      sup = std::max(sup, lp_norm(g, diff, 2.0, dom.omega));
    }
    report.distances.push_back(sup);
  }

  std::vector<double> coarse_n(report.n_list.begin(), report.n_list.end() - 1);
  report.slope = -loglog_slope(coarse_n, report.distances);

  if (oracle) {
    for (const RotheSequence& seq : runs) {
      const OracleErrors err = oracle_error(g, dom, seq, *oracle, times);
      report.oracle_err_u.push_back(err.err_u);
      report.oracle_err_w.push_back(err.err_w);
    }
    std::vector<double> all_n(report.n_list.begin(), report.n_list.end());
    report.oracle_slope_u = -loglog_slope(all_n, report.oracle_err_u);
  }
  return report;
}

OracleErrors oracle_error(const WeightedGraph& g, const DomainDecomposition& dom,
                          const RotheSequence& seq, const OracleTrajectory& traj,
                          std::span<const double> sample_times) {
  OracleErrors errors;
  for (double t : sample_times) {
    if (!(t >= 0.0 && t <= seq.grid.T))
      fail(errc::time_range_mismatch, "sample time outside the Rothe horizon");
    const int k = traj.sample_index(t);
    const VertexField du = interpolant_u(seq, t) - traj.u[static_cast<size_t>(k)];
    const VertexField dw = interpolant_w(seq, t) - traj.v[static_cast<size_t>(k)];
    errors.err_u = std::max(errors.err_u, lp_norm(g, du, 2.0, dom.omega));
    errors.err_w = std::max(errors.err_w, lp_norm(g, dw, 2.0, dom.omega));
  }
  return errors;
}

std::vector<double> uniform_times(double T, int count) {
  std::vector<double> times;
  times.reserve(static_cast<size_t>(count));
  for (int j = 0; j < count; ++j)
    times.push_back(count == 1 ? 0.0 : T * static_cast<double>(j) / (count - 1));
  return times;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  double sum_x = 0.0, sum_y = 0.0, sum_xx = 0.0, sum_xy = 0.0;
  int used = 0;
  for (size_t k = 0; k < x.size() && k < y.size(); ++k) {
    if (!(y[k] > 0.0) || !(x[k] > 0.0)) continue;
    const double lx = std::log(x[k]);
    const double ly = std::log(y[k]);
    sum_x += lx;
    sum_y += ly;
    sum_xx += lx * lx;
    sum_xy += lx * ly;
    ++used;
  }
  if (used < 2) return 0.0;
  const double denom = used * sum_xx - sum_x * sum_x;
  return denom == 0.0 ? 0.0 : (used * sum_xy - sum_x * sum_y) / denom;
}

}  // namespace gwave
