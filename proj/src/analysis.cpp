#include "redsim/analysis.hpp"

#include <cmath>

#include "redsim/error.hpp"
#include "redsim/math.hpp"
#include "redsim/optimizer.hpp"
#include "redsim/rng.hpp"

namespace redsim {

void SnrSetting::validate() const {
  if (d < 1) throw ValidationError("d must be >= 1");
  if (!(g_true_norm >= 0.0)) throw ValidationError("g_true_norm must be >= 0");
  if (!(sigma_xi >= 0.0)) throw ValidationError("sigma_xi must be >= 0");
  if (!(epsilon > 0.0)) throw ValidationError("epsilon must be > 0");
  if (n0 < 1) throw ValidationError("n0 must be >= 1");
  if (!(t_dec > 0.0)) throw ValidationError("t_dec must be > 0");
  if (!(gamma >= 0.0)) throw ValidationError("gamma must be >= 0");
  if (!(rho >= 0.0 && rho <= 1.0)) throw ValidationError("rho must be in [0, 1]");
}

double v_single(const SnrSetting& s) {
  s.validate();
  const double g2 = s.g_true_norm * s.g_true_norm;
  return (s.d - 1) * g2 +
         s.d * s.sigma_xi * s.sigma_xi / (2.0 * s.epsilon * s.epsilon);
}

GcWeights gc_weights(const SnrSetting& s) {
  s.validate();
  const std::size_t t = s.horizon;

  GcWeights out;
  out.n.resize(t + 1);
  out.n[0] = s.n0;
  std::vector<double> big_h(t + 1, 0.0);  // H_1 .. H_t
  double w = s.n0;
  for (std::size_t j = 1; j <= t; ++j) {
    out.n[j] = sampling_budget(j, s.n0, s.t_dec);
    big_h[j] = s.gamma * w / (w + out.n[j]);
    w = s.rho * w + (1.0 - s.rho) * out.n[j];
  }

  out.h.assign(t + 1, 0.0);
  out.h[t] = 1.0;
  for (std::size_t k = t; k-- > 0;) out.h[k] = out.h[k + 1] * big_h[k + 1];
  for (const double hk : out.h) out.p_t += hk;
  return out;
}

SnrReport snr_gap(const SnrSetting& s) {
  SnrReport report;
  report.v_single = v_single(s);
  if (report.v_single == 0.0)
    throw ValidationError("SNR gap undefined for V_single = 0");

  const GcWeights w = gc_weights(s);
  report.weights = w.h;
  report.p_t = w.p_t;

  double weighted_var = 0.0;  // sum h_k^2 V_k
  for (std::size_t k = 0; k < w.h.size(); ++k)
    weighted_var += w.h[k] * w.h[k] * report.v_single / w.n[k];

  const double g2 = s.g_true_norm * s.g_true_norm;
  const double bracket = w.p_t * w.p_t * report.v_single - weighted_var;
  report.d_t_analytic = g2 / (report.v_single * weighted_var) * bracket;
  return report;
}

namespace {

// Accumulates mean and trace-of-covariance of a vector statistic across
// replications, then forms SNR = |mean|^2 / tr Var with the mean's own
// sampling variance removed from the signal power (it inflates |mean|^2 by
// tr Var / R otherwise).
class SnrAccumulator {
 public:
  explicit SnrAccumulator(std::size_t d) : sum_(d, 0.0) {}

  void add(std::span<const double> v) {
    add_scaled(sum_, 1.0, v);
    sumsq_ += dot(v, v);
    ++count_;
  }

  double snr() const {
    const double r = static_cast<double>(count_);
    std::vector<double> mean = sum_;
    for (double& v : mean) v /= r;
    const double mean_sq = dot(mean, mean);
    const double tr_var = (sumsq_ - r * mean_sq) / (r - 1.0);
    const double signal = mean_sq - tr_var / r;
    return signal / tr_var;
  }

 private:
  std::vector<double> sum_;
  double sumsq_ = 0.0;
  std::size_t count_ = 0;
};

}  // namespace

double empirical_snr_gap(const SnrSetting& s, std::size_t replications,
                         std::uint64_t seed) {
  s.validate();
  if (replications < 1000)
    throw ValidationError("empirical SNR needs >= 1000 replications");

  // Linear loss: the two-point rule is exact, so the comparison carries no
  // curvature bias.
  std::vector<double> g_true(s.d, 0.0);
  g_true[0] = s.g_true_norm;
  const LossFn loss = [&](std::span<const double> theta, RngStream& stream) {
    return dot(g_true, theta) + s.sigma_xi * stream.normal();
  };
  const std::vector<double> origin(s.d, 0.0);

  const GcWeights sched = gc_weights(s);
  SnrAccumulator calibrated(s.d);
  SnrAccumulator single(s.d);

  for (std::size_t r = 0; r < replications; ++r) {
    const std::uint64_t rep_key = derive_key(seed, {r});
    CalibratorState state;
    std::vector<double> first_probe_at_horizon;
    for (std::size_t j = 0; j <= s.horizon; ++j) {
      std::vector<double> mean_g(s.d, 0.0);
      for (std::uint32_t i = 0; i < sched.n[j]; ++i) {
        std::vector<double> g = spsa_probe(loss, origin, s.epsilon,
                                           RngStream::keyed(rep_key, j, i));
        if (j == s.horizon && i == 0) first_probe_at_horizon = g;
        add_scaled(mean_g, 1.0 / sched.n[j], g);
      }
      if (j == 0) {
        state = CalibratorState{std::move(mean_g),
                                static_cast<double>(sched.n[0])};
      } else {
        state = calibrate(mean_g, sched.n[j], state, s.gamma, s.rho);
      }
    }
    calibrated.add(state.g_hat);
    // The single-probe baseline shares the horizon step's first draw, which
    // pairs the two estimators and cancels much of the common noise in the
    // measured gap.
    single.add(first_probe_at_horizon);
  }
  return calibrated.snr() - single.snr();
}

}  // namespace redsim
