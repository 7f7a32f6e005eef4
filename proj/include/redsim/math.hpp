#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "redsim/rng.hpp"

namespace redsim {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

// Cosine similarity; 0 when either vector has zero norm.
inline double cosine(std::span<const double> a, std::span<const double> b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a, b) / (na * nb);
}

inline void add_scaled(std::vector<double>& x, double c,
                       std::span<const double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += c * y[i];
}

inline bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

// log softmax(z)[idx] with the usual max-shift stabilization.
inline double log_softmax_at(std::span<const double> z, std::size_t idx) {
  const double m = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double zi : z) sum += std::exp(zi - m);
  return z[idx] - m - std::log(sum);
}

// Draw an index from softmax(z / tau).
inline std::uint32_t sample_softmax(std::span<const double> z, double tau,
                                    RngStream& rng) {
  const double m = *std::max_element(z.begin(), z.end());
  double total = 0.0;
  std::vector<double> w(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    w[i] = std::exp((z[i] - m) / tau);
    total += w[i];
  }
  const double u = rng.uniform01() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    acc += w[i];
    if (u < acc) return static_cast<std::uint32_t>(i);
  }
  return static_cast<std::uint32_t>(w.size() - 1);
}

}  // namespace redsim
