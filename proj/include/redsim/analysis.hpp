#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace redsim {

// Inputs to the signal-to-noise analysis of the calibrated estimator: the
// problem size, observation noise, probe magnitude, the probe schedule, and
// the calibration constants, evaluated at a fixed horizon t.
struct SnrSetting {
  std::uint32_t d = 10;
  double g_true_norm = 1.0;
  double sigma_xi = 0.1;   // std of the additive observation noise
  double epsilon = 0.01;
  std::uint32_t n0 = 4;
  double t_dec = 10.0;
  double gamma = 1.0;
  double rho = 0.9;
  std::size_t horizon = 20;  // t
  void validate() const;
};

struct SnrReport {
  double v_single = 0.0;             // single-probe variance
  std::vector<double> weights;       // h_0 .. h_t
  double p_t = 0.0;                  // sum of weights
  double d_t_analytic = 0.0;         // SNR gap of calibrated vs single-probe
  std::optional<double> d_t_empirical;
  bool positive() const { return d_t_analytic > 0.0; }
};

// Variance of one two-point probe on a noisy objective, higher-order terms
// dropped: (d - 1) |g|^2 + d sigma^2 / (2 eps^2).
double v_single(const SnrSetting& setting);

struct GcWeights {
  std::vector<double> h;           // h_0 .. h_t (h_t = 1)
  double p_t = 0.0;                // sum h_k
  std::vector<std::uint32_t> n;    // replayed probe counts n_0 .. n_t
};

// Replays the probe schedule and the effective-sample-size EMA to obtain the
// unrolled estimator weights h_k = prod_{j=k+1}^{t} gamma * w_{j-1} /
// (w_{j-1} + n_j).
GcWeights gc_weights(const SnrSetting& setting);

// Closed-form SNR gap between the calibrated estimator at horizon t and the
// single-probe baseline:
//   D_t = |g|^2 / (V_single * sum h_k^2 V_k) * [P_t^2 V_single - sum h_k^2 V_k]
// with V_k = V_single / n_k. Throws on the degenerate V_single = 0 case.
SnrReport snr_gap(const SnrSetting& setting);

// Monte Carlo counterpart: holds g_true fixed, replays both estimators on a
// linear loss with Gaussian observation noise over `replications` independent
// runs, and returns the difference of the measured SNRs
// (|E g|^2 / tr Var g). Requires replications >= 1000.
double empirical_snr_gap(const SnrSetting& setting, std::size_t replications,
                         std::uint64_t seed);

}  // namespace redsim
