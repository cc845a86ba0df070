#pragma once

#include <cstdint>
#include <random>

namespace loewner {

std::uint64_t splitmix64(std::uint64_t x);

/// Seeded generator owned by one worker. Child generators are derived from
/// (seed, index) so parallel trials stay reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  std::uint64_t seed() const { return seed_; }
  Rng child(std::uint64_t index) const { return Rng(splitmix64(seed_ ^ splitmix64(index + 0x632BE59BD9B4E019ULL))); }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double normal() { return normal_(engine_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace loewner
