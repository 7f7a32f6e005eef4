#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "redsim/policy.hpp"
#include "redsim/rng.hpp"

namespace redsim {

struct AtsConfig {
  double alpha = 0.05;   // sensitivity; smaller alpha reacts harder
  double tau_min = 0.8;  // degeneracy floor
  void validate() const;
};

// Global token frequency table tracked across generations. Single-owner
// mutable state; concurrent generation must serialize access.
class FrequencyTable {
 public:
  explicit FrequencyTable(std::uint32_t vocab_size)
      : counts_(vocab_size, 0), total_(0) {}

  // Commits every emitted token of a completed sequence, EOS included.
  void record(const TokenSequence& seq);

  std::uint64_t count(std::uint32_t id) const { return counts_.at(id); }
  std::uint64_t total() const { return total_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(counts_.size()); }

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_;
};

struct AtsDecision {
  double tau = 0.0;
  std::uint32_t argmax_token = 0;
};

// Frequency-adaptive step temperature:
//   tau_t = max((1/alpha) * ln(1 + f[v]/sum f), tau_min)
// where v is the argmax of the raw logits (lowest id on ties) and the ratio
// is 0 on an empty table.
AtsDecision adaptive_temperature(const FrequencyTable& freq,
                                 std::span<const double> logits,
                                 const AtsConfig& cfg);

// Decode one sequence with the adaptive temperature rule. The table is read
// during decoding and committed once the sequence completes, so temperatures
// within one sequence depend only on prior generations.
TokenSequence sample_with_ats(const BigramPolicy& policy, FrequencyTable& freq,
                              const AtsConfig& cfg, RngStream& rng);

}  // namespace redsim
