#ifndef SCRAM_RNG_HPP
#define SCRAM_RNG_HPP

#include <cstdint>
#include <initializer_list>

namespace scram {

// 64-bit finalizer used for seed mixing (splitmix64 finalizer constants).
std::uint64_t mix64(std::uint64_t z);

// Deterministic splitmix64 stream. All randomness in the project flows
// through this class so that results are identical across platforms and
// worker counts; std:: distributions are implementation-defined and are
// deliberately not used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Derives an independent stream from a master seed and a tag tuple,
  // e.g. (scheme id, grid index, frame index). Pure function of its inputs.
  static Rng derive(std::uint64_t master, std::initializer_list<std::uint64_t> tags);

  std::uint64_t next_u64();
  std::uint32_t next_u32() { return static_cast<std::uint32_t>(next_u64() >> 32); }

  // Uniform integer in [0, bound) by rejection; bound >= 1.
  std::uint64_t uniform_below(std::uint64_t bound);

  double uniform01();       // [0, 1), 53-bit resolution
  double uniform01_open();  // (0, 1)

  // Standard normal via Box-Muller; one spare value is cached.
  double normal();

  // Rayleigh magnitude with E[h^2] = 1, strictly positive (inverse CDF).
  double rayleigh_unit_power();

 private:
  std::uint64_t state_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace scram

#endif
