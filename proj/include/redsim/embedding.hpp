#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "redsim/policy.hpp"

namespace redsim {

// Fixed |V| x dim table of standard-normal entries, reproducible from its
// seed. Shared primitive behind the target system's token features and the
// frozen sequence encoders.
class TokenEmbeddingTable {
 public:
  TokenEmbeddingTable(std::uint32_t vocab_size, std::uint32_t dim,
                      std::uint64_t seed);
  TokenEmbeddingTable(std::uint32_t vocab_size, std::uint32_t dim,
                      std::vector<double> data);  // preset rows, for tests

  std::uint32_t vocab_size() const { return vocab_size_; }
  std::uint32_t dim() const { return dim_; }
  std::span<const double> row(std::uint32_t id) const;

  // Mean of the rows of non-EOS tokens; the zero vector when the sequence
  // has no content tokens.
  std::vector<double> mean_embed(const TokenSequence& seq,
                                 std::uint32_t eos_id) const;

 private:
  std::uint32_t vocab_size_;
  std::uint32_t dim_;
  std::vector<double> data_;  // row-major
};

// Frozen sequence encoder used for both the training-time diversity term and
// the evaluation-time similarity metric; the two roles are kept apart by
// giving them distinct seeds.
class SequenceEncoder {
 public:
  SequenceEncoder(const Vocabulary& vocab, std::uint32_t dim,
                  std::uint64_t seed)
      : eos_(vocab.eos()), table_(vocab.size, dim, seed) {}
  explicit SequenceEncoder(const Vocabulary& vocab, TokenEmbeddingTable table)
      : eos_(vocab.eos()), table_(std::move(table)) {}

  std::vector<double> embed(const TokenSequence& seq) const {
    return table_.mean_embed(seq, eos_);
  }
  std::uint32_t dim() const { return table_.dim(); }

 private:
  std::uint32_t eos_;
  TokenEmbeddingTable table_;
};

}  // namespace redsim
