#pragma once

#include <cstdint>
#include <vector>

#include "redsim/embedding.hpp"
#include "redsim/policy.hpp"

namespace redsim {

struct GenerationOutcome {
  bool blocked = false;
  std::vector<double> features;  // length m; empty when blocked
  double score = -1.0;           // cosine in [-1, 1]; -1 when blocked
};

// Synthetic stand-in for a black-box generator + keyword filter + scorer
// pipeline: prompts are mean-pooled into a feature vector, perturbed by
// per-generation noise, and scored by cosine against a hidden concept
// direction. The keyword blocklist makes the pipeline non-differentiable.
// Immutable after construction; generate is pure given its seed.
class SyntheticTargetSystem {
 public:
  // Explicit parts; concept_dir is normalized to unit length here.
  SyntheticTargetSystem(Vocabulary vocab, TokenEmbeddingTable embeddings,
                        std::vector<double> concept_dir, double noise_sigma,
                        std::vector<std::uint32_t> blocklist, double threshold);

  // Seeded construction: token embeddings filled from the seed, the concept
  // direction anchored to the normalized sum of two seed-chosen (hidden)
  // non-EOS token embeddings, so the score landscape has a reachable optimum.
  static SyntheticTargetSystem from_seed(const Vocabulary& vocab,
                                         std::uint32_t feature_dim,
                                         std::uint64_t seed, double noise_sigma,
                                         std::vector<std::uint32_t> blocklist,
                                         double threshold);

  GenerationOutcome generate(const TokenSequence& seq,
                             std::uint64_t gen_seed) const;

  const Vocabulary& vocab() const { return vocab_; }
  double threshold() const { return threshold_; }
  double noise_sigma() const { return noise_sigma_; }
  std::span<const double> concept_dir() const { return concept_; }
  std::span<const std::uint32_t> blocklist() const { return blocklist_; }
  std::span<const std::uint32_t> concept_tokens() const {
    return concept_tokens_;
  }
  bool is_blocklisted(std::uint32_t id) const;

 private:
  Vocabulary vocab_;
  TokenEmbeddingTable embeddings_;
  std::vector<double> concept_;
  double noise_sigma_;
  std::vector<std::uint32_t> blocklist_;  // sorted, unique
  double threshold_;
  std::vector<std::uint32_t> concept_tokens_;  // empty for explicit concepts
};

// Surrogate success test: not blocked and score >= threshold.
bool is_success(const GenerationOutcome& outcome, double threshold);

}  // namespace redsim
