#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "redsim/math.hpp"
#include "redsim/rng.hpp"

namespace redsim {

// Token id space. The last id (|V| - 1) is reserved as end-of-sequence.
struct Vocabulary {
  std::uint32_t size = 32;
  std::uint32_t max_len = 8;

  std::uint32_t eos() const { return size - 1; }
  std::size_t param_dim() const {
    return static_cast<std::size_t>(size) +
           static_cast<std::size_t>(size) * size;
  }
  void validate() const;  // size >= 2, max_len >= 1
};

struct TokenSequence {
  std::vector<std::uint32_t> tokens;
  bool terminated = false;  // true iff the last token is EOS

  friend bool operator==(const TokenSequence&, const TokenSequence&) = default;
};

// Throws ValidationError unless: 1 <= length <= max_len, all ids in range,
// EOS appears at most once and only as the last token (terminated set iff so).
void validate_sequence(const TokenSequence& seq, const Vocabulary& vocab);

// Position-independent autoregressive sequence model: one start-logits row
// plus a |V| x |V| transition-logits table. Values are immutable snapshots;
// sampling and log_prob are pure given an explicit stream.
class BigramPolicy {
 public:
  explicit BigramPolicy(Vocabulary vocab);  // all logits zero

  // i.i.d. uniform logits in [-scale, scale]; near-uniform policy for small
  // scale.
  static BigramPolicy random_init(Vocabulary vocab, double scale,
                                  RngStream& rng);

  const Vocabulary& vocab() const { return vocab_; }
  std::span<const double> start_logits() const { return start_; }
  std::span<const double> transition_row(std::uint32_t prev) const;

 private:
  friend BigramPolicy unflatten(std::span<const double> v, const Vocabulary&);
  Vocabulary vocab_;
  std::vector<double> start_;  // |V|
  std::vector<double> trans_;  // |V| * |V|, row-major by previous token
};

// Logit row for a decoding context: nullopt selects the start row, otherwise
// the transition row of the previous token. Throws ValidationError when the
// id is out of range.
std::span<const double> logits(const BigramPolicy& policy,
                               std::optional<std::uint32_t> prev);

// Deterministic layout: start row first, then transition rows in token-id
// order. flatten/unflatten are inverse bijections.
std::vector<double> flatten(const BigramPolicy& policy);
BigramPolicy unflatten(std::span<const double> v, const Vocabulary& vocab);

// Step-wise ancestral sampling from softmax(z_t / tau_t); stops at EOS or
// max_len. temp_fn maps the current logit row to the step temperature.
template <typename TempFn>
TokenSequence sample_sequence_with(const BigramPolicy& policy, TempFn&& temp_fn,
                                   RngStream& rng) {
  const Vocabulary& vocab = policy.vocab();
  TokenSequence seq;
  seq.tokens.reserve(vocab.max_len);
  std::optional<std::uint32_t> prev;
  for (std::uint32_t t = 0; t < vocab.max_len; ++t) {
    const auto row = logits(policy, prev);
    const double tau = temp_fn(row);
    const std::uint32_t tok = sample_softmax(row, tau, rng);
    seq.tokens.push_back(tok);
    if (tok == vocab.eos()) {
      seq.terminated = true;
      break;
    }
    prev = tok;
  }
  return seq;
}

TokenSequence sample_sequence(const BigramPolicy& policy, double tau,
                              RngStream& rng);

// Exact log p(seq) under the training-time distribution (temperature fixed
// at 1, regardless of any inference-time temperature rule).
double log_prob(const BigramPolicy& policy, const TokenSequence& seq);

// Checkpoint layout: u32 |V|, u32 max_len, then the flat parameter vector as
// little-endian 64-bit floats.
void save_checkpoint(const BigramPolicy& policy,
                     const std::filesystem::path& path);
BigramPolicy load_checkpoint(const std::filesystem::path& path);

}  // namespace redsim
