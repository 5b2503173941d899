#ifndef SCRAM_ACCESS_HPP
#define SCRAM_ACCESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "scram/rng.hpp"

namespace scram {

enum class Scheme { kRandom = 0, kSequential = 1, kInterleaved = 2, kCod = 3 };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

struct AccessParams {
  int n_users = 0;
  int symbols_per_user = 0;  // n, equal for all users
  int total_slots = 0;       // N_s
  Scheme scheme = Scheme::kRandom;
  std::uint64_t master_seed = 0;

  int n_subgraphs() const { return total_slots / symbols_per_user; }
  int n_sets() const { return n_users / n_subgraphs(); }

  // Throws on violated divisibility invariants for the chosen scheme.
  void validate() const;
};

// Per-user slot map: slot_of[u][i] is the 1-based slot of user u's i-th symbol.
struct SlotAssignment {
  int total_slots = 0;
  std::vector<std::vector<int>> slot_of;

  int n_users() const { return static_cast<int>(slot_of.size()); }
};

// Interleaved slot indices per (user set, subgraph); entries are absolute
// 1-based slot indices, i.e. a permutation of the subgraph's slot range.
struct InterleaverBank {
  int n_sets = 0;
  int n_subgraphs = 0;
  int symbols_per_user = 0;
  std::vector<std::vector<std::vector<int>>> pi;  // [set][sub][i]

  void validate_shape(const AccessParams& params) const;
};

// Deterministic pseudo-random permutation of 1..n driven by a 32-bit
// Fibonacci LFSR with taps {32, 22, 2, 1} (maximal length). One 32-bit
// draw consumes 32 output bits, MSB first; Fisher-Yates runs from
// position n down to 2 with rejection-sampled uniform draws.
std::vector<int> lfsr_permutation(std::uint64_t seed, int n);

// Seed mixing for the interleaver bank; collisions are harmless.
std::uint64_t seed_for(std::uint64_t n_set, std::uint64_t n_sub, std::uint64_t master_seed);

InterleaverBank default_bank(const AccessParams& params);

SlotAssignment assign_random(const AccessParams& params, Rng& rng);
SlotAssignment assign_sequential(const AccessParams& params);
SlotAssignment assign_interleaved(const AccessParams& params);
SlotAssignment assign_cod(const AccessParams& params, const InterleaverBank* bank = nullptr);

// Dispatcher; rng is consumed only by the random scheme.
SlotAssignment make_assignment(const AccessParams& params, Rng* rng,
                               const InterleaverBank* bank = nullptr);

// Histogram over slot degrees 0..N_u (index = degree).
std::vector<long long> slot_degrees(const SlotAssignment& assignment, int total_slots);

// Users v != u sharing at least one slot with u (1-based user index).
std::vector<int> collision_partners(const SlotAssignment& assignment, int user);

}  // namespace scram

#endif
