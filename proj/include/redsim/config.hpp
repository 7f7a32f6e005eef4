#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "redsim/analysis.hpp"
#include "redsim/energy.hpp"
#include "redsim/metrics.hpp"
#include "redsim/optimizer.hpp"
#include "redsim/policy.hpp"
#include "redsim/sampler.hpp"

namespace redsim {

// Full experiment configuration. Parsed from flat key=value text; every key
// has a documented default, unknown keys are rejected, and the canonical
// serialization (sorted keys) is what lands in run artifacts.
struct ExperimentConfig {
  Vocabulary vocab;  // vocab.size, vocab.max_len

  struct TargetSpec {
    std::uint64_t seed = 7;
    std::uint32_t feature_dim = 64;
    double noise_sigma = 0.05;
    std::vector<std::uint32_t> blocklist;  // kept sorted and unique
    double threshold = 0.6;
  } target;

  struct EnergySpec {
    EnergyWeights weights;
    std::uint64_t encoder_seed = 101;
  } energy;

  struct OptSpec {
    SpsaConfig spsa;
    bool use_calibration = true;  // opt.algorithm = gc-spsa | spsa
  } opt;

  struct AtsSpec {
    bool enabled = false;
    AtsConfig cfg;
  } ats;

  EvalConfig eval;

  struct SampleSpec {
    std::uint32_t count = 100;
  } sample;

  struct AblateSpec {
    std::string key;                  // config key swept by the ablate command
    std::vector<std::string> values;  // one cell per value
  } ablate;

  struct SnrSpec {
    std::uint32_t d = 10;
    double g_norm = 1.0;
    double sigma_xi = 0.1;
    std::uint32_t horizon = 20;
    std::uint32_t replications = 10000;
  } snr;

  std::string algorithm_name() const {
    return opt.use_calibration ? "gc-spsa" : "spsa";
  }
  SnrSetting snr_setting() const;
};

// Parses key=value lines ('#' lines are comments). Errors name the offending
// key and line. The result is fully defaulted and validated.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig parse_config_file(const std::filesystem::path& path);

// Applies one key=value override to an already-parsed config (used by the
// ablation sweep). Re-runs cross-key validation.
void apply_override(ExperimentConfig& config, const std::string& key,
                    const std::string& value);

// Canonical form: every key, sorted, shortest round-trip numerals.
// serialize_config(parse_config(x)) is a fixed point.
std::string serialize_config(const ExperimentConfig& config);

}  // namespace redsim
