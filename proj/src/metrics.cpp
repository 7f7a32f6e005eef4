#include "redsim/metrics.hpp"

#include <algorithm>

#include "redsim/error.hpp"
#include "redsim/math.hpp"
#include "redsim/rng.hpp"

namespace redsim {

void EvalConfig::validate() const {
  if (n_gen < 1) throw ValidationError("n_gen must be >= 1");
  if (!(delta > 0.0)) throw ValidationError("delta must be > 0");
  if (n_prompts < 2) throw ValidationError("n_prompts must be >= 2");
}

double psr_n(std::span<const TokenSequence> prompts,
             const SyntheticTargetSystem& system, std::uint32_t n_gen,
             std::uint64_t eval_seed) {
  if (prompts.empty()) throw ValidationError("psr_n needs at least one prompt");
  std::size_t successes = 0;
  for (std::size_t i = 0; i < prompts.size(); ++i) {
    for (std::uint32_t attempt = 0; attempt < n_gen; ++attempt) {
      const std::uint64_t gen_seed = derive_key(eval_seed, {i, attempt});
      if (is_success(system.generate(prompts[i], gen_seed),
                     system.threshold())) {
        ++successes;
        break;
      }
    }
  }
  return static_cast<double>(successes) / static_cast<double>(prompts.size());
}

double prompt_similarity(std::span<const TokenSequence> prompts,
                         const SequenceEncoder& encoder) {
  const std::size_t n = prompts.size();
  if (n < 2) throw ValidationError("prompt similarity needs >= 2 prompts");
  std::vector<std::vector<double>> embeds;
  embeds.reserve(n);
  for (const TokenSequence& p : prompts) embeds.push_back(encoder.embed(p));
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      sum += cosine(embeds[i], embeds[j]);
  return sum / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
}

double distinct_ratio(std::span<const TokenSequence> prompts) {
  if (prompts.empty())
    throw ValidationError("distinct_ratio needs at least one prompt");
  std::vector<std::vector<std::uint32_t>> keys;
  keys.reserve(prompts.size());
  for (const TokenSequence& p : prompts) keys.push_back(p.tokens);
  std::sort(keys.begin(), keys.end());
  const auto unique_end = std::unique(keys.begin(), keys.end());
  const auto unique_count =
      static_cast<double>(std::distance(keys.begin(), unique_end));
  return unique_count / static_cast<double>(prompts.size());
}

}  // namespace redsim
