#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace gumbelscale {

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

// Seed drawn from std::random_device, for runs that did not pin one.
std::uint64_t entropy_seed();

// Seeded random stream. Parallel work never shares an Rng: each chunk of work
// gets Rng::substream(root, chunk_index), so results depend on the chunk
// index and never on which thread ran it.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  static Rng substream(std::uint64_t root_seed, std::uint64_t index);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  // Uniform on the open interval (0, 1), 53 random bits.
  double uniform();
  double normal();
  // Standard exponential, -log(U).
  double exponential();

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace gumbelscale
