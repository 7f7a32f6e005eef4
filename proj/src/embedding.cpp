#include "redsim/embedding.hpp"

#include "redsim/error.hpp"
#include "redsim/rng.hpp"

namespace redsim {

TokenEmbeddingTable::TokenEmbeddingTable(std::uint32_t vocab_size,
                                         std::uint32_t dim, std::uint64_t seed)
    : vocab_size_(vocab_size),
      dim_(dim),
      data_(static_cast<std::size_t>(vocab_size) * dim) {
  RngStream rng(derive_key(seed, {}));
  for (double& v : data_) v = rng.normal();
}

TokenEmbeddingTable::TokenEmbeddingTable(std::uint32_t vocab_size,
                                         std::uint32_t dim,
                                         std::vector<double> data)
    : vocab_size_(vocab_size), dim_(dim), data_(std::move(data)) {
  if (data_.size() != static_cast<std::size_t>(vocab_size) * dim)
    throw DimensionError("embedding table data does not match |V| x dim");
}

std::span<const double> TokenEmbeddingTable::row(std::uint32_t id) const {
  if (id >= vocab_size_) throw ValidationError("token id out of range");
  return {data_.data() + static_cast<std::size_t>(id) * dim_, dim_};
}

std::vector<double> TokenEmbeddingTable::mean_embed(const TokenSequence& seq,
                                                    std::uint32_t eos_id) const {
  std::vector<double> acc(dim_, 0.0);
  std::size_t n = 0;
  for (const std::uint32_t tok : seq.tokens) {
    if (tok == eos_id) continue;
    const auto r = row(tok);
    for (std::uint32_t j = 0; j < dim_; ++j) acc[j] += r[j];
    ++n;
  }
  if (n > 0) {
    for (double& v : acc) v /= static_cast<double>(n);
  }
  return acc;
}

}  // namespace redsim
