#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "redsim/embedding.hpp"
#include "redsim/policy.hpp"
#include "redsim/target.hpp"

namespace redsim {

struct EnergyWeights {
  double lambda = 1.0;             // diversity weight
  double beta = 10.0;              // entropy coefficient is 1/beta; +inf allowed
  std::uint32_t batch_size = 16;   // Monte Carlo sample count, >= 2
  std::uint32_t psr_generations = 3;
  void validate() const;
};

struct LossBreakdown {
  double align = 0.0;
  double div = 0.0;
  double ent = 0.0;
  double total = 0.0;  // align + lambda * div + (1/beta) * ent
};

// Alignment energy of one generation: negated score, so a perfect match is
// -1. Blocked generations take the worst-case value +1.
double alignment_energy(const GenerationOutcome& outcome);

// Mean cosine similarity over all ordered pairs i != j of the batch's
// sequence embeddings; pairs involving a zero-norm embedding contribute 0.
// Requires batch size >= 2.
double diversity_energy(std::span<const TokenSequence> batch,
                        const SequenceEncoder& encoder);

// Monte Carlo estimate of the training objective: sample N sequences from
// the policy (temperature 1), score each through the target system with a
// fresh generation seed drawn from the stream, and average the three terms.
LossBreakdown estimate_loss(const BigramPolicy& policy,
                            const EnergyWeights& weights,
                            const SyntheticTargetSystem& system,
                            const SequenceEncoder& encoder, RngStream& stream);

}  // namespace redsim
