#include "redsim/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "redsim/error.hpp"

namespace redsim {

void AtsConfig::validate() const {
  if (!(alpha > 0.0)) throw ValidationError("alpha must be > 0");
  if (!(tau_min > 0.0)) throw ValidationError("tau_min must be > 0");
}

void FrequencyTable::record(const TokenSequence& seq) {
  for (const std::uint32_t tok : seq.tokens) {
    counts_.at(tok) += 1;
    total_ += 1;
  }
}

AtsDecision adaptive_temperature(const FrequencyTable& freq,
                                 std::span<const double> logits,
                                 const AtsConfig& cfg) {
  cfg.validate();
  AtsDecision out;
  // std::max_element keeps the first maximum, giving the lowest-id tie-break.
  out.argmax_token = static_cast<std::uint32_t>(
      std::max_element(logits.begin(), logits.end()) - logits.begin());
  const double ratio =
      freq.total() == 0
          ? 0.0
          : static_cast<double>(freq.count(out.argmax_token)) /
                static_cast<double>(freq.total());
  out.tau = std::max(std::log1p(ratio) / cfg.alpha, cfg.tau_min);
  return out;
}

TokenSequence sample_with_ats(const BigramPolicy& policy, FrequencyTable& freq,
                              const AtsConfig& cfg, RngStream& rng) {
  TokenSequence seq = sample_sequence_with(
      policy,
      [&](std::span<const double> row) {
        return adaptive_temperature(freq, row, cfg).tau;
      },
      rng);
  freq.record(seq);
  return seq;
}

}  // namespace redsim
