#include "redsim/optimizer.hpp"

#include <cmath>
#include <limits>

#include "redsim/error.hpp"
#include "redsim/math.hpp"

namespace redsim {

void SpsaConfig::validate() const {
  if (!(epsilon > 0.0)) throw ValidationError("epsilon must be > 0");
  if (!(eta > 0.0)) throw ValidationError("eta must be > 0");
  if (n0 < 1) throw ValidationError("n0 must be >= 1");
  if (!(t_dec > 0.0)) throw ValidationError("t_dec must be > 0");
  if (!(gamma >= 0.0)) throw ValidationError("gamma must be >= 0");
  if (!(rho >= 0.0 && rho <= 1.0)) throw ValidationError("rho must be in [0, 1]");
}

std::vector<double> two_point_estimate(const LossFn& loss_fn,
                                       std::span<const double> theta,
                                       double epsilon,
                                       std::span<const double> delta,
                                       RngStream& eval_stream) {
  std::vector<double> point(theta.begin(), theta.end());
  add_scaled(point, epsilon, delta);
  RngStream plus_stream = eval_stream.fork();
  RngStream minus_stream = eval_stream.fork();
  const double loss_plus = loss_fn(point, plus_stream);

  point.assign(theta.begin(), theta.end());
  add_scaled(point, -epsilon, delta);
  const double loss_minus = loss_fn(point, minus_stream);

  if (!std::isfinite(loss_plus) || !std::isfinite(loss_minus))
    throw EstimationError("non-finite probe loss", loss_plus, loss_minus);

  const double scale = (loss_plus - loss_minus) / (2.0 * epsilon);
  std::vector<double> g(delta.begin(), delta.end());
  for (double& v : g) v *= scale;
  return g;
}

std::vector<double> spsa_probe(const LossFn& loss_fn,
                               std::span<const double> theta, double epsilon,
                               RngStream probe_stream) {
  std::vector<double> delta(theta.size());
  for (double& v : delta) v = probe_stream.normal();
  return two_point_estimate(loss_fn, theta, epsilon, delta, probe_stream);
}

GradientEstimate estimate_gradient(const LossFn& loss_fn,
                                   std::span<const double> theta,
                                   double epsilon, std::uint32_t n_probes,
                                   std::uint64_t run_seed, std::size_t step) {
  GradientEstimate est;
  est.g.assign(theta.size(), 0.0);
  est.probes_used = n_probes;
  est.step = step;
  for (std::uint32_t i = 0; i < n_probes; ++i) {
    const std::vector<double> g = spsa_probe(
        loss_fn, theta, epsilon, RngStream::keyed(run_seed, step, i));
    add_scaled(est.g, 1.0 / n_probes, g);
  }
  return est;
}

std::uint32_t sampling_budget(std::size_t t, std::uint32_t n0, double t_dec) {
  const double raw =
      std::floor(static_cast<double>(n0) /
                 std::exp2(static_cast<double>(t) / t_dec));
  if (raw < 1.0) return 1;
  return static_cast<std::uint32_t>(raw);
}

CalibratorState calibrate(std::span<const double> mean_g, std::uint32_t n_t,
                          const CalibratorState& state, double gamma,
                          double rho) {
  if (!(state.w > 0.0)) throw ValidationError("calibrator weight must be > 0");
  if (n_t < 1) throw ValidationError("n_t must be >= 1");
  CalibratorState next;
  next.g_hat.assign(mean_g.begin(), mean_g.end());
  if (gamma != 0.0) {
    const double blend = gamma * state.w / (state.w + n_t);
    add_scaled(next.g_hat, blend, state.g_hat);
  }
  next.w = rho * state.w + (1.0 - rho) * n_t;
  return next;
}

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

LossBreakdown observe(const TraceObserver& observer, std::size_t step,
                      std::span<const double> theta) {
  if (observer) return observer(step, theta);
  return {kNan, kNan, kNan, kNan};
}

TrainResult run_loop(std::vector<double> theta, const SpsaConfig& config,
                     const LossFn& loss_fn, std::uint64_t run_seed,
                     const TraceObserver& observer, bool vanilla) {
  config.validate();
  const double gamma = vanilla ? 0.0 : config.gamma;

  TrainResult result;
  result.trace.reserve(config.t_max + 1);

  GradientEstimate init =
      estimate_gradient(loss_fn, theta, config.epsilon, config.n0, run_seed, 0);
  CalibratorState state{std::move(init.g), static_cast<double>(config.n0)};
  std::uint64_t evals = 2ull * config.n0;
  result.trace.push_back({0, config.n0, observe(observer, 0, theta),
                          norm(state.g_hat), evals});

  for (std::size_t t = 1; t <= config.t_max; ++t) {
    const std::uint32_t n_t =
        vanilla ? config.n0 : sampling_budget(t, config.n0, config.t_dec);
    GradientEstimate est =
        estimate_gradient(loss_fn, theta, config.epsilon, n_t, run_seed, t);
    state = calibrate(est.g, n_t, state, gamma, config.rho);
    add_scaled(theta, -config.eta, state.g_hat);
    if (!all_finite(theta))
      throw EstimationError("non-finite parameters at step " +
                            std::to_string(t));
    evals += 2ull * n_t;
    result.trace.push_back({t, n_t, observe(observer, t, theta),
                            norm(state.g_hat), evals});
  }
  result.theta = std::move(theta);
  return result;
}

}  // namespace

TrainResult train(std::vector<double> theta0, const SpsaConfig& config,
                  const LossFn& loss_fn, std::uint64_t run_seed,
                  const TraceObserver& observer) {
  return run_loop(std::move(theta0), config, loss_fn, run_seed, observer,
                  /*vanilla=*/false);
}

TrainResult train_vanilla(std::vector<double> theta0, const SpsaConfig& config,
                          const LossFn& loss_fn, std::uint64_t run_seed,
                          const TraceObserver& observer) {
  return run_loop(std::move(theta0), config, loss_fn, run_seed, observer,
                  /*vanilla=*/true);
}

std::uint64_t total_evaluations(const SpsaConfig& config, bool vanilla) {
  std::uint64_t probes = config.n0;
  for (std::size_t t = 1; t <= config.t_max; ++t)
    probes += vanilla ? config.n0 : sampling_budget(t, config.n0, config.t_dec);
  return 2ull * probes;
}

std::uint32_t vanilla_steps_for_budget(std::uint32_t n0, std::uint64_t evals) {
  // 2 * (n0 + T * n0) <= evals
  if (evals <= 2ull * n0) return 0;
  return static_cast<std::uint32_t>((evals / 2ull - n0) / n0);
}

}  // namespace redsim
