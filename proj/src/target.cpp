#include "redsim/target.hpp"

#include <algorithm>
#include <cmath>

#include "redsim/error.hpp"
#include "redsim/math.hpp"
#include "redsim/rng.hpp"

namespace redsim {

SyntheticTargetSystem::SyntheticTargetSystem(
    Vocabulary vocab, TokenEmbeddingTable embeddings,
    std::vector<double> concept_dir, double noise_sigma,
    std::vector<std::uint32_t> blocklist, double threshold)
    : vocab_(vocab),
      embeddings_(std::move(embeddings)),
      concept_(std::move(concept_dir)),
      noise_sigma_(noise_sigma),
      blocklist_(std::move(blocklist)),
      threshold_(threshold) {
  vocab_.validate();
  if (embeddings_.vocab_size() != vocab_.size)
    throw DimensionError("embedding table rows do not match |V|");
  if (concept_.size() != embeddings_.dim())
    throw DimensionError("concept vector does not match feature dimension");
  if (noise_sigma_ < 0.0) throw ValidationError("noise sigma must be >= 0");
  if (!(threshold_ > -1.0 && threshold_ < 1.0))
    throw ValidationError("threshold must lie in (-1, 1)");
  const double n = norm(concept_);
  if (n == 0.0) throw ValidationError("concept vector must be nonzero");
  for (double& v : concept_) v /= n;
  std::sort(blocklist_.begin(), blocklist_.end());
  blocklist_.erase(std::unique(blocklist_.begin(), blocklist_.end()),
                   blocklist_.end());
  for (const std::uint32_t id : blocklist_)
    if (id >= vocab_.size)
      throw ValidationError("blocklist id out of vocabulary range");
}

SyntheticTargetSystem SyntheticTargetSystem::from_seed(
    const Vocabulary& vocab, std::uint32_t feature_dim, std::uint64_t seed,
    double noise_sigma, std::vector<std::uint32_t> blocklist,
    double threshold) {
  vocab.validate();
  TokenEmbeddingTable table(vocab.size, feature_dim,
                            derive_key(seed, {0x7a6b1eULL}));
  // Two distinct hidden non-EOS tokens anchor the concept. Prompts mixing
  // both can reach cosine 1 even though no single token does.
  RngStream pick = RngStream::keyed(seed, 0xc02ce97ULL);
  const std::uint32_t a = pick.below(vocab.size - 1);
  std::uint32_t b = pick.below(vocab.size - 1);
  while (b == a) b = pick.below(vocab.size - 1);
  std::vector<double> concept_dir(feature_dim, 0.0);
  for (std::uint32_t j = 0; j < feature_dim; ++j)
    concept_dir[j] = table.row(a)[j] + table.row(b)[j];
  SyntheticTargetSystem sys(vocab, std::move(table), std::move(concept_dir),
                            noise_sigma, std::move(blocklist), threshold);
  sys.concept_tokens_ = {a, b};
  return sys;
}

bool SyntheticTargetSystem::is_blocklisted(std::uint32_t id) const {
  return std::binary_search(blocklist_.begin(), blocklist_.end(), id);
}

GenerationOutcome SyntheticTargetSystem::generate(const TokenSequence& seq,
                                                  std::uint64_t gen_seed) const {
  validate_sequence(seq, vocab_);
  GenerationOutcome out;
  out.blocked = true;
  out.score = -1.0;

  std::size_t content = 0;
  for (const std::uint32_t tok : seq.tokens) {
    if (is_blocklisted(tok)) return out;  // keyword filter short-circuits
    if (tok != vocab_.eos()) ++content;
  }
  if (content == 0) return out;  // degenerate prompt, treated as blocked

  out.blocked = false;
  out.features = embeddings_.mean_embed(seq, vocab_.eos());
  if (noise_sigma_ > 0.0) {
    RngStream noise = RngStream::keyed(gen_seed, 0x9e01feULL);
    for (double& v : out.features) v += noise_sigma_ * noise.normal();
  }
  out.score = cosine(out.features, concept_);
  return out;
}

bool is_success(const GenerationOutcome& outcome, double threshold) {
  return !outcome.blocked && outcome.score >= threshold;
}

}  // namespace redsim
