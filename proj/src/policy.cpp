#include "redsim/policy.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "redsim/error.hpp"

namespace redsim {

void Vocabulary::validate() const {
  if (size < 2) throw ValidationError("vocabulary size must be >= 2");
  if (max_len < 1) throw ValidationError("max_len must be >= 1");
}

void validate_sequence(const TokenSequence& seq, const Vocabulary& vocab) {
  if (seq.tokens.empty()) throw ValidationError("empty token sequence");
  if (seq.tokens.size() > vocab.max_len)
    throw ValidationError("sequence longer than max_len");
  for (std::size_t i = 0; i < seq.tokens.size(); ++i) {
    const std::uint32_t tok = seq.tokens[i];
    if (tok >= vocab.size) throw ValidationError("token id out of range");
    if (tok == vocab.eos() && i + 1 != seq.tokens.size())
      throw ValidationError("EOS before end of sequence");
  }
  const bool ends_with_eos = seq.tokens.back() == vocab.eos();
  if (seq.terminated != ends_with_eos)
    throw ValidationError("terminated flag inconsistent with trailing EOS");
}

BigramPolicy::BigramPolicy(Vocabulary vocab)
    : vocab_(vocab),
      start_(vocab.size, 0.0),
      trans_(static_cast<std::size_t>(vocab.size) * vocab.size, 0.0) {
  vocab_.validate();
}

BigramPolicy BigramPolicy::random_init(Vocabulary vocab, double scale,
                                       RngStream& rng) {
  BigramPolicy p(vocab);
  for (double& v : p.start_) v = (2.0 * rng.uniform01() - 1.0) * scale;
  for (double& v : p.trans_) v = (2.0 * rng.uniform01() - 1.0) * scale;
  return p;
}

std::span<const double> BigramPolicy::transition_row(std::uint32_t prev) const {
  if (prev >= vocab_.size) throw ValidationError("context id out of range");
  return {trans_.data() + static_cast<std::size_t>(prev) * vocab_.size,
          vocab_.size};
}

std::span<const double> logits(const BigramPolicy& policy,
                               std::optional<std::uint32_t> prev) {
  if (!prev.has_value()) return policy.start_logits();
  return policy.transition_row(*prev);
}

std::vector<double> flatten(const BigramPolicy& policy) {
  std::vector<double> v;
  v.reserve(policy.vocab().param_dim());
  const auto start = policy.start_logits();
  v.insert(v.end(), start.begin(), start.end());
  for (std::uint32_t prev = 0; prev < policy.vocab().size; ++prev) {
    const auto row = policy.transition_row(prev);
    v.insert(v.end(), row.begin(), row.end());
  }
  return v;
}

BigramPolicy unflatten(std::span<const double> v, const Vocabulary& vocab) {
  vocab.validate();
  if (v.size() != vocab.param_dim())
    throw DimensionError("parameter vector has length " +
                         std::to_string(v.size()) + ", expected " +
                         std::to_string(vocab.param_dim()));
  BigramPolicy p(vocab);
  std::copy(v.begin(), v.begin() + vocab.size, p.start_.begin());
  std::copy(v.begin() + vocab.size, v.end(), p.trans_.begin());
  return p;
}

TokenSequence sample_sequence(const BigramPolicy& policy, double tau,
                              RngStream& rng) {
  if (!(tau > 0.0)) throw ValidationError("temperature must be positive");
  return sample_sequence_with(
      policy, [tau](std::span<const double>) { return tau; }, rng);
}

double log_prob(const BigramPolicy& policy, const TokenSequence& seq) {
  validate_sequence(seq, policy.vocab());
  double lp = 0.0;
  std::optional<std::uint32_t> prev;
  for (const std::uint32_t tok : seq.tokens) {
    lp += log_softmax_at(logits(policy, prev), tok);
    prev = tok;
  }
  return lp;
}

namespace {

void put_u32(std::ofstream& out, std::uint32_t v) {
  char buf[4];
  for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(buf, 4);
}

std::uint32_t get_u32(std::ifstream& in) {
  unsigned char buf[4];
  in.read(reinterpret_cast<char*>(buf), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(buf[i]) << (8 * i);
  return v;
}

}  // namespace

void save_checkpoint(const BigramPolicy& policy,
                     const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open checkpoint for writing: " + path.string());
  put_u32(out, policy.vocab().size);
  put_u32(out, policy.vocab().max_len);
  const std::vector<double> v = flatten(policy);
  static_assert(std::endian::native == std::endian::little,
                "checkpoint writer assumes a little-endian host");
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
  if (!out) throw IoError("short write to checkpoint: " + path.string());
}

BigramPolicy load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint: " + path.string());
  Vocabulary vocab;
  vocab.size = get_u32(in);
  vocab.max_len = get_u32(in);
  if (!in) throw IoError("truncated checkpoint header: " + path.string());
  vocab.validate();
  std::vector<double> v(vocab.param_dim());
  in.read(reinterpret_cast<char*>(v.data()),
          static_cast<std::streamsize>(v.size() * sizeof(double)));
  if (!in || in.gcount() !=
                 static_cast<std::streamsize>(v.size() * sizeof(double)))
    throw IoError("truncated checkpoint body: " + path.string());
  return unflatten(v, vocab);
}

}  // namespace redsim
