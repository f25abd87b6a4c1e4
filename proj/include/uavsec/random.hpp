#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace uavsec {

/// SplitMix64 finalizer. Used to derive well-separated seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Combines two words into one hash (order sensitive).
std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) noexcept;

/// Reproducible random source: std::mt19937_64 (whose output sequence is fixed
/// by the standard) seeded from mix64(seed, stream id). All draws are derived
/// from raw 64-bit words here, never through the implementation-defined
/// std:: distributions, so identical (seed, stream) pairs give identical draws
/// on every platform.
class RandomStream {
public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_; }

  /// Independent child stream; same (parent, key) always yields the same child.
  RandomStream derive(std::uint64_t key) const;

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on [lo, hi); returns lo when lo == hi.
  double uniform(double lo, double hi);
  /// Uniform integer on [0, n), unbiased (rejection). Requires n >= 1.
  std::uint64_t uniform_index(std::uint64_t n);
  bool bernoulli(double p);
  /// Samples an index with probability proportional to weights[i].
  /// Weights must be nonnegative with positive sum.
  std::size_t categorical(std::span<const double> weights);

private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

} // namespace uavsec
