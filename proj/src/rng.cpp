#include "redsim/rng.hpp"

#include <cmath>
#include <numbers>

namespace redsim {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x += kGamma;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_key(std::uint64_t root,
                         std::initializer_list<std::uint64_t> parts) {
  std::uint64_t key = mix64(root);
  for (std::uint64_t p : parts) {
    key = mix64(key ^ mix64(p));
  }
  return key;
}

RngStream::RngStream(std::uint64_t key) {
  // Expand the key through splitmix64 so correlated keys still yield
  // decorrelated xoshiro states.
  std::uint64_t s = key;
  for (auto& word : state_) {
    s += kGamma;
    word = mix64(s);
  }
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
  // Box-Muller, one variate per call; a stateless scheme keeps forked streams
  // independent of call parity.
  double u1 = uniform01();
  const double u2 = uniform01();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::uint32_t RngStream::below(std::uint32_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit =
      std::uint64_t(-1) - std::uint64_t(-1) % static_cast<std::uint64_t>(n);
  std::uint64_t r;
  do {
    r = next_u64();
  } while (r >= limit);
  return static_cast<std::uint32_t>(r % n);
}

}  // namespace redsim
