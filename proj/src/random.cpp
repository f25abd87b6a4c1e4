#include "uavsec/random.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace uavsec {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) noexcept {
  return mix64(mix64(a) ^ (b + 0x632BE59BD9B4E019ULL + (a << 6) + (a >> 2)));
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_(stream_id), engine_(hash_combine(seed, stream_id)) {}

RandomStream RandomStream::derive(std::uint64_t key) const {
  return RandomStream(hash_combine(seed_, stream_), key);
}

double RandomStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
  if (lo == hi)
    return lo;
  return lo + (hi - lo) * uniform();
}

std::uint64_t RandomStream::uniform_index(std::uint64_t n) {
  if (n == 0)
    throw std::invalid_argument("uniform_index: empty range");
  // Largest multiple of n representable; draws above it are rejected.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

bool RandomStream::bernoulli(double p) {
  if (p <= 0.0)
    return false;
  if (p >= 1.0)
    return true;
  return uniform() < p;
}

std::size_t RandomStream::categorical(std::span<const double> weights) {
  if (weights.empty())
    throw std::invalid_argument("categorical: no weights");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0))
    throw std::invalid_argument("categorical: weights must have positive sum");
  const double u = uniform() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0)
      continue;
    acc += weights[i];
    last_positive = i;
    if (u < acc)
      return i;
  }
  return last_positive;
}

} // namespace uavsec
