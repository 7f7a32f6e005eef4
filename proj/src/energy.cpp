#include "redsim/energy.hpp"

#include <cmath>

#include "redsim/error.hpp"
#include "redsim/math.hpp"

namespace redsim {

void EnergyWeights::validate() const {
  if (!(lambda >= 0.0)) throw ValidationError("lambda must be >= 0");
  if (!(beta > 0.0)) throw ValidationError("beta must be > 0");
  if (batch_size < 2) throw ValidationError("batch_size must be >= 2");
  if (psr_generations < 1) throw ValidationError("psr_generations must be >= 1");
}

double alignment_energy(const GenerationOutcome& outcome) {
  return outcome.blocked ? 1.0 : -outcome.score;
}

double diversity_energy(std::span<const TokenSequence> batch,
                        const SequenceEncoder& encoder) {
  const std::size_t n = batch.size();
  if (n < 2) throw ValidationError("diversity energy needs a batch of >= 2");

  // sum_{i != j} cos(u_i, u_j) = |sum u_i|^2 - sum |u_i|^2 for unit (or zero)
  // vectors u_i, which keeps large batches O(n * dim) instead of O(n^2).
  std::vector<double> acc(encoder.dim(), 0.0);
  double unit_count = 0.0;
  for (const TokenSequence& seq : batch) {
    std::vector<double> e = encoder.embed(seq);
    const double len = norm(e);
    if (len == 0.0) continue;
    for (std::size_t j = 0; j < e.size(); ++j) acc[j] += e[j] / len;
    unit_count += 1.0;
  }
  const double pair_sum = dot(acc, acc) - unit_count;
  return pair_sum / (static_cast<double>(n) * static_cast<double>(n - 1));
}

LossBreakdown estimate_loss(const BigramPolicy& policy,
                            const EnergyWeights& weights,
                            const SyntheticTargetSystem& system,
                            const SequenceEncoder& encoder, RngStream& stream) {
  weights.validate();
  const std::uint32_t n = weights.batch_size;

  std::vector<TokenSequence> batch;
  batch.reserve(n);
  LossBreakdown out;
  for (std::uint32_t i = 0; i < n; ++i) {
    TokenSequence seq = sample_sequence(policy, 1.0, stream);
    const std::uint64_t gen_seed = stream.next_u64();
    out.align += alignment_energy(system.generate(seq, gen_seed));
    out.ent += log_prob(policy, seq);
    batch.push_back(std::move(seq));
  }
  out.align /= static_cast<double>(n);
  out.ent /= static_cast<double>(n);
  out.div = diversity_energy(batch, encoder);
  out.total = out.align + weights.lambda * out.div + out.ent / weights.beta;
  return out;
}

}  // namespace redsim
