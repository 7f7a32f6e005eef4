#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "redsim/embedding.hpp"
#include "redsim/target.hpp"

namespace redsim {

struct EvalConfig {
  std::uint32_t n_gen = 3;        // generations per prompt for PSR-N
  double delta = 1e-3;            // convergence threshold on |g_hat|^2
  std::uint32_t n_prompts = 200;  // prompts sampled by the evaluate command
  std::uint64_t encoder_seed = 202;
  void validate() const;
};

// PSR-N: fraction of prompts with at least one successful generation out of
// n_gen attempts. Attempt seeds derive from (eval_seed, prompt index,
// attempt index), so results are reproducible without global state.
double psr_n(std::span<const TokenSequence> prompts,
             const SyntheticTargetSystem& system, std::uint32_t n_gen,
             std::uint64_t eval_seed);

// Mean pairwise cosine similarity over unordered prompt pairs; lower is more
// diverse. Requires at least two prompts.
double prompt_similarity(std::span<const TokenSequence> prompts,
                         const SequenceEncoder& encoder);

// Unique-sequence count over total; a collapse detector.
double distinct_ratio(std::span<const TokenSequence> prompts);

}  // namespace redsim
