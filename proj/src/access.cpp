#include "scram/access.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace scram {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::kRandom: return "random";
    case Scheme::kSequential: return "sequential";
    case Scheme::kInterleaved: return "interleaved";
    case Scheme::kCod: return "cod";
  }
  return "?";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "random") return Scheme::kRandom;
  if (name == "sequential") return Scheme::kSequential;
  if (name == "interleaved") return Scheme::kInterleaved;
  if (name == "cod") return Scheme::kCod;
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

void AccessParams::validate() const {
  if (n_users < 0 || symbols_per_user <= 0 || total_slots <= 0) {
    throw std::invalid_argument("access parameters must be positive");
  }
  if (scheme == Scheme::kRandom) {
    if (symbols_per_user > total_slots) {
      throw std::invalid_argument("random access needs n <= N_s for per-user distinct slots");
    }
    return;
  }
  if (total_slots % symbols_per_user != 0) {
    throw std::invalid_argument("uniform access needs N_s divisible by n (N_s=" +
                                std::to_string(total_slots) + ", n=" +
                                std::to_string(symbols_per_user) + ")");
  }
  if (scheme == Scheme::kCod) {
    const int subs = n_subgraphs();
    if (n_users % subs != 0) {
      throw std::invalid_argument("CoD needs N_u divisible by N_subgraphs (N_u=" +
                                  std::to_string(n_users) + ", N_subgraphs=" +
                                  std::to_string(subs) + ")");
    }
    if (symbols_per_user % subs != 0) {
      throw std::invalid_argument("CoD needs n divisible by N_subgraphs (n=" +
                                  std::to_string(symbols_per_user) + ", N_subgraphs=" +
                                  std::to_string(subs) + ")");
    }
  }
}

void InterleaverBank::validate_shape(const AccessParams& params) const {
  if (n_sets != params.n_sets() || n_subgraphs != params.n_subgraphs() ||
      symbols_per_user != params.symbols_per_user) {
    throw std::invalid_argument("interleaver bank shape does not match access parameters");
  }
  for (int s = 0; s < n_sets; ++s) {
    if (static_cast<int>(pi[s].size()) != n_subgraphs) {
      throw std::invalid_argument("interleaver bank shape mismatch in set " + std::to_string(s + 1));
    }
    for (int g = 0; g < n_subgraphs; ++g) {
      const auto& vec = pi[s][g];
      if (static_cast<int>(vec.size()) != symbols_per_user) {
        throw std::invalid_argument("interleaver vector length mismatch at set " +
                                    std::to_string(s + 1) + ", subgraph " + std::to_string(g + 1));
      }
      const int lo = g * symbols_per_user + 1;
      const int hi = (g + 1) * symbols_per_user;
      std::vector<bool> seen(symbols_per_user, false);
      for (int v : vec) {
        if (v < lo || v > hi || seen[v - lo]) {
          throw std::invalid_argument("interleaver vector at set " + std::to_string(s + 1) +
                                      ", subgraph " + std::to_string(g + 1) +
                                      " is not a permutation of its slot range");
        }
        seen[v - lo] = true;
      }
    }
  }
}

namespace {

// Fibonacci LFSR over the primitive polynomial x^32 + x^22 + x^2 + x + 1
// (taps 32, 22, 2, 1). Bit k of the state word holds sequence element
// a_{t+k}; the low bit is emitted and the new element a_{t+32} enters at
// the top. Period 2^32 - 1, verified by exhaustive enumeration.
class Lfsr32 {
 public:
  explicit Lfsr32(std::uint64_t seed) {
    state_ = static_cast<std::uint32_t>(seed & 0xFFFFFFFFULL);
    if (state_ == 0) state_ = 1;
  }

  std::uint32_t next_bit() {
    const std::uint32_t out = state_ & 1u;
    const std::uint32_t fb =
        ((state_ >> 22) ^ (state_ >> 2) ^ (state_ >> 1) ^ state_) & 1u;
    state_ = (state_ >> 1) | (fb << 31);
    return out;
  }

  std::uint32_t next_u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 32; ++i) v = (v << 1) | next_bit();  // MSB first
    return v;
  }

  // Uniform in [0, r) by rejection: draws >= floor(2^32 / r) * r are retried.
  std::uint32_t uniform_below(std::uint32_t r) {
    const std::uint64_t limit = (0x100000000ULL / r) * r;
    for (;;) {
      const std::uint32_t v = next_u32();
      if (v < limit) return v % r;
    }
  }

 private:
  std::uint32_t state_;
};

}  // namespace

std::vector<int> lfsr_permutation(std::uint64_t seed, int n) {
  if (n < 1) throw std::invalid_argument("permutation length must be >= 1");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  Lfsr32 lfsr(seed);
  for (int i = n; i >= 2; --i) {
    const std::uint32_t j = lfsr.uniform_below(static_cast<std::uint32_t>(i));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

std::uint64_t seed_for(std::uint64_t n_set, std::uint64_t n_sub, std::uint64_t master_seed) {
  return master_seed ^ (0x9E3779B97F4A7C15ULL * n_set) ^ (0xC2B2AE3D27D4EB4FULL * n_sub);
}

InterleaverBank default_bank(const AccessParams& params) {
  InterleaverBank bank;
  bank.n_sets = params.n_sets();
  bank.n_subgraphs = params.n_subgraphs();
  bank.symbols_per_user = params.symbols_per_user;
  bank.pi.assign(bank.n_sets, std::vector<std::vector<int>>(bank.n_subgraphs));
  for (int s = 1; s <= bank.n_sets; ++s) {
    for (int g = 1; g <= bank.n_subgraphs; ++g) {
      auto vec = lfsr_permutation(seed_for(s, g, params.master_seed), params.symbols_per_user);
      const int shift = (g - 1) * params.symbols_per_user;
      for (int& v : vec) v += shift;
      bank.pi[s - 1][g - 1] = std::move(vec);
    }
  }
  return bank;
}

SlotAssignment assign_random(const AccessParams& params, Rng& rng) {
  AccessParams p = params;
  p.scheme = Scheme::kRandom;
  p.validate();
  SlotAssignment a;
  a.total_slots = p.total_slots;
  a.slot_of.assign(p.n_users, {});
  std::vector<int> pool(p.total_slots);
  for (int u = 0; u < p.n_users; ++u) {
    std::iota(pool.begin(), pool.end(), 1);
    auto& slots = a.slot_of[u];
    slots.resize(p.symbols_per_user);
    // Partial Fisher-Yates: first n entries are a uniform sample without
    // replacement, in draw order.
    for (int i = 0; i < p.symbols_per_user; ++i) {
      const std::uint64_t j =
          i + rng.uniform_below(static_cast<std::uint64_t>(p.total_slots - i));
      std::swap(pool[i], pool[j]);
      slots[i] = pool[i];
    }
  }
  return a;
}

SlotAssignment assign_sequential(const AccessParams& params) {
  AccessParams p = params;
  p.scheme = Scheme::kSequential;
  p.validate();
  SlotAssignment a;
  a.total_slots = p.total_slots;
  a.slot_of.assign(p.n_users, std::vector<int>(p.symbols_per_user));
  const int subs = p.n_subgraphs();
  for (int u = 1; u <= p.n_users; ++u) {
    const int block = ((u - 1) % subs) * p.symbols_per_user;
    for (int i = 1; i <= p.symbols_per_user; ++i) {
      a.slot_of[u - 1][i - 1] = block + i;
    }
  }
  return a;
}

SlotAssignment assign_interleaved(const AccessParams& params) {
  AccessParams p = params;
  p.scheme = Scheme::kInterleaved;
  p.validate();
  SlotAssignment a;
  a.total_slots = p.total_slots;
  a.slot_of.assign(p.n_users, std::vector<int>(p.symbols_per_user));
  const int subs = p.n_subgraphs();
  for (int u = 1; u <= p.n_users; ++u) {
    const int block = ((u - 1) % subs) * p.symbols_per_user;
    const auto sigma = lfsr_permutation(seed_for(u, 0, p.master_seed), p.symbols_per_user);
    for (int i = 1; i <= p.symbols_per_user; ++i) {
      a.slot_of[u - 1][i - 1] = block + sigma[i - 1];
    }
  }
  return a;
}

SlotAssignment assign_cod(const AccessParams& params, const InterleaverBank* bank) {
  AccessParams p = params;
  p.scheme = Scheme::kCod;
  p.validate();
  InterleaverBank generated;
  if (bank == nullptr) {
    generated = default_bank(p);
    bank = &generated;
  } else {
    bank->validate_shape(p);
  }
  SlotAssignment a;
  a.total_slots = p.total_slots;
  a.slot_of.assign(p.n_users, std::vector<int>(p.symbols_per_user));
  const int subs = p.n_subgraphs();
  for (int u = 1; u <= p.n_users; ++u) {
    const int n_set = (u + subs - 1) / subs;  // ceil(u / N_subgraphs)
    for (int i = 1; i <= p.symbols_per_user; ++i) {
      const int n_sub = (u + i - 2) % subs + 1;
      a.slot_of[u - 1][i - 1] = bank->pi[n_set - 1][n_sub - 1][i - 1];
    }
  }
  return a;
}

SlotAssignment make_assignment(const AccessParams& params, Rng* rng, const InterleaverBank* bank) {
  switch (params.scheme) {
    case Scheme::kRandom:
      if (rng == nullptr) throw std::invalid_argument("random access needs a random stream");
      return assign_random(params, *rng);
    case Scheme::kSequential: return assign_sequential(params);
    case Scheme::kInterleaved: return assign_interleaved(params);
    case Scheme::kCod: return assign_cod(params, bank);
  }
  throw std::invalid_argument("unknown scheme");
}

std::vector<long long> slot_degrees(const SlotAssignment& assignment, int total_slots) {
  std::vector<int> degree(total_slots, 0);
  for (const auto& slots : assignment.slot_of) {
    for (int s : slots) {
      if (s < 1 || s > total_slots) throw std::out_of_range("slot index out of range");
      ++degree[s - 1];
    }
  }
  std::vector<long long> hist(assignment.n_users() + 1, 0);
  for (int s = 0; s < total_slots; ++s) {
    if (degree[s] > assignment.n_users()) throw std::logic_error("slot degree exceeds user count");
    ++hist[degree[s]];
  }
  return hist;
}

std::vector<int> collision_partners(const SlotAssignment& assignment, int user) {
  if (user < 1 || user > assignment.n_users()) throw std::out_of_range("user index out of range");
  std::vector<int> owner(assignment.total_slots + 1, 0);
  for (int s : assignment.slot_of[user - 1]) owner[s] = user;
  std::set<int> partners;
  for (int v = 1; v <= assignment.n_users(); ++v) {
    if (v == user) continue;
    for (int s : assignment.slot_of[v - 1]) {
      if (owner[s] == user) {
        partners.insert(v);
        break;
      }
    }
  }
  return std::vector<int>(partners.begin(), partners.end());
}

}  // namespace scram
