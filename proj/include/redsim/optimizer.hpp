#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "redsim/energy.hpp"
#include "redsim/rng.hpp"

namespace redsim {

struct SpsaConfig {
  double epsilon = 0.01;    // perturbation magnitude
  double eta = 0.05;        // learning rate
  std::uint32_t n0 = 4;     // initial probe budget
  double t_dec = 10.0;      // budget halving period; +inf freezes the schedule
  std::uint32_t t_max = 300;
  double gamma = 1.0;       // correction strength
  double rho = 0.9;         // EMA smoothing of the effective sample size
  void validate() const;
};

// History carried between calibration steps: the previous blended gradient
// and its effective sample size.
struct CalibratorState {
  std::vector<double> g_hat;
  double w = 1.0;
};

// Aggregated per-step gradient estimate (mean over the step's probes).
struct GradientEstimate {
  std::vector<double> g;
  std::uint32_t probes_used = 0;
  std::size_t step = 0;
};

// Black-box objective; stochastic losses draw everything they need from the
// provided stream, keeping every evaluation replayable.
using LossFn =
    std::function<double(std::span<const double> theta, RngStream& stream)>;

// Two-point simultaneous-perturbation estimate along a given direction:
// [(L(theta + eps*delta) - L(theta - eps*delta)) / (2 eps)] * delta.
// Throws EstimationError (carrying both probe losses) if either is
// non-finite. Exactly two loss evaluations.
std::vector<double> two_point_estimate(const LossFn& loss_fn,
                                       std::span<const double> theta,
                                       double epsilon,
                                       std::span<const double> delta,
                                       RngStream& eval_stream);

// Draws delta with i.i.d. standard-normal entries from the probe stream,
// then applies the two-point rule. Unit variance makes the estimate unbiased
// for the true gradient with no extra scaling.
std::vector<double> spsa_probe(const LossFn& loss_fn,
                               std::span<const double> theta, double epsilon,
                               RngStream probe_stream);

// Mean of n probes at theta; probe i uses the stream keyed
// (run_seed, step, i), so the estimate is independent of scheduling.
GradientEstimate estimate_gradient(const LossFn& loss_fn,
                                   std::span<const double> theta,
                                   double epsilon, std::uint32_t n_probes,
                                   std::uint64_t run_seed, std::size_t step);

// Exponentially decaying probe schedule: max(1, floor(n0 / 2^(t / t_dec))).
std::uint32_t sampling_budget(std::size_t t, std::uint32_t n0, double t_dec);

// Confidence-weighted blend of the current step mean with history:
//   g_hat_t = mean_g + gamma * w / (w + n_t) * g_hat_{t-1}
//   w_t     = rho * w + (1 - rho) * n_t
// Returns the new state; inputs are untouched.
CalibratorState calibrate(std::span<const double> mean_g, std::uint32_t n_t,
                          const CalibratorState& state, double gamma,
                          double rho);

struct TraceRow {
  std::size_t step = 0;
  std::uint32_t n_probes = 0;
  LossBreakdown loss;  // NaN fields when no observer is attached
  double grad_norm = 0.0;
  std::uint64_t evals_cum = 0;
};

// Optional diagnostic probe recorded into the trace; not part of the
// optimization path.
using TraceObserver =
    std::function<LossBreakdown(std::size_t step, std::span<const double> theta)>;

struct TrainResult {
  std::vector<double> theta;
  std::vector<TraceRow> trace;  // t_max + 1 rows, row 0 is the init record
};

// Full training loop: initializes the calibrator from n0 probes at theta0,
// then per step estimates, calibrates, and descends. Deterministic given
// run_seed. Aborts with EstimationError on non-finite parameters.
TrainResult train(std::vector<double> theta0, const SpsaConfig& config,
                  const LossFn& loss_fn, std::uint64_t run_seed,
                  const TraceObserver& observer = {});

// Comparison baseline: the identical loop with gamma forced to 0 and a
// constant per-step budget of n0 probes.
TrainResult train_vanilla(std::vector<double> theta0, const SpsaConfig& config,
                          const LossFn& loss_fn, std::uint64_t run_seed,
                          const TraceObserver& observer = {});

// Closed-form loss-evaluation count of a run: 2 * (n0 + sum_t n_t).
std::uint64_t total_evaluations(const SpsaConfig& config, bool vanilla = false);

// Largest vanilla step count whose budget stays within `evals`.
std::uint32_t vanilla_steps_for_budget(std::uint32_t n0, std::uint64_t evals);

}  // namespace redsim
