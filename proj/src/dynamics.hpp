#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "markov.hpp"

namespace pdmpsync {

/// Discrete-state-indexed family of smooth vector fields paired with its
/// environment chain; defines the piecewise-deterministic process
///   dx/dt = F_n(x)  while the environment is in state n.
///
/// Evaluators are plain callables of (state, x) and must be pure; models are
/// immutable after registration and safe to share across threads.
struct HybridModel {
  using FieldFn = std::function<void(int state, const double* x, double* out)>;
  using JacobianFn =
      std::function<void(int state, const double* x, double* jac_row_major)>;
  using PhaseFn = std::function<double(const double* x)>;

  int dimension = 0;
  std::shared_ptr<const GeneratorSpec> chain;
  FieldFn field;
  JacobianFn jacobian;     // optional; finite differences when absent
  PhaseFn analytic_phase;  // optional closed-form isochron map
  double domain_bound = 0.0;
  double min_radius = 0.0;  // 0 disables the origin guard

  void validate() const;

  /// F_bar(x) = sum_n rho_n F_n(x).
  void averaged_field(const double* x, double* out) const;

  /// G_n(x) = F_n(x) - F_bar(x); sum_n rho_n G_n(x) = 0 identically.
  void fluctuation_field(int state, const double* x, double* out) const;

  /// Jacobian of the averaged field: analytic sum when the model registers a
  /// Jacobian, otherwise central differences with relative step 1e-6.
  void averaged_jacobian(const double* x, double* jac_row_major) const;
};

/// Jump-event log plus continuous paths of M oscillators sharing one
/// environment realization. Positions are sampled on the uniform grid
/// s * output_dt; the event list is common to all oscillators. Phase
/// trajectories reuse this record with dimension == 1.
struct HybridTrajectory {
  std::vector<JumpEvent> events;
  std::vector<double> sample_times;
  std::vector<int> states_at_samples;  // empty for diffusion surrogates
  int num_oscillators = 0;
  int dimension = 0;
  std::vector<double> paths;  // (osc * samples + s) * dimension + component
  double epsilon = 0.0;
  std::uint64_t seed = 0;

  int num_samples() const { return static_cast<int>(sample_times.size()); }
  double path(int osc, int sample, int component) const {
    return paths[(static_cast<std::size_t>(osc) * sample_times.size() +
                  static_cast<std::size_t>(sample)) *
                     dimension +
                 component];
  }

  /// CSV with header t,n,osc,x0,...,x{d-1}; one row per oscillator per sample
  /// time, 17 significant digits. n is -1 when no discrete state exists.
  void write_csv(const std::string& path) const;
  /// CSV with header t,from,to,dt.
  void write_events_csv(const std::string& path) const;
};

/// Default ODE substep for the event loop: min(eps/4, 2*pi/200). Callers that
/// know the averaged period should pass min(eps/4, period/200) instead.
double default_pdmp_step(double epsilon);

/// Event-driven simulation of the exact process: jumps sampled from the
/// chain, fields integrated with fixed-step classical RK4 whose final step is
/// shortened to land on each jump time; the continuous state never jumps.
/// Output samples are cubic-Hermite interpolants of the RK4 steps.
/// Deterministic for a given seed; the event sequence does not depend on the
/// number of oscillators.
HybridTrajectory simulate_pdmp(const HybridModel& model,
                               const std::vector<double>& x0, int n0,
                               double epsilon, double t_final,
                               double output_dt, std::uint64_t seed,
                               double max_step = 0.0);

/// Diffusion surrogate: Stratonovich Heun integration of
///   dX = F_bar(X) dt + sqrt(2 eps) sum_{m,n} G_m(X) B_{mn} dW_n
/// with one shared Wiener increment vector per step (common noise). The step
/// is snapped to an integer number of substeps per output cell and must not
/// exceed eps when eps > 0; eps = 0 reduces to the deterministic Heun scheme.
HybridTrajectory simulate_qss_sde(const HybridModel& model,
                                  const std::vector<double>& x0,
                                  double epsilon, double t_final, double dt,
                                  std::uint64_t seed, double output_dt = 0.0);

}  // namespace pdmpsync
