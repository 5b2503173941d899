#include <stdexcept>
#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "scram/access.hpp"

using namespace scram;

namespace {

// The worked four-user bank from the collision-diversity walkthrough.
InterleaverBank paper_bank() {
  InterleaverBank bank;
  bank.n_sets = 2;
  bank.n_subgraphs = 2;
  bank.symbols_per_user = 6;
  bank.pi = {{{4, 6, 1, 5, 3, 2}, {9, 11, 12, 8, 7, 10}},
             {{5, 3, 4, 1, 2, 6}, {8, 10, 11, 9, 12, 7}}};
  return bank;
}

AccessParams fig3_params(Scheme scheme) {
  return AccessParams{4, 6, 12, scheme, 0};
}

}  // namespace

TEST_CASE("lfsr permutation basics") {
  CHECK(lfsr_permutation(99, 1) == std::vector<int>{1});
  CHECK(lfsr_permutation(0x1, 8) == lfsr_permutation(0x1, 8));
  // all-zero seed maps to state 1
  CHECK(lfsr_permutation(0, 16) == lfsr_permutation(1ULL << 32, 16));
  for (std::uint64_t seed : {2ULL, 77ULL, 0xDEADBEEFULL}) {
    for (int n : {2, 5, 17, 64}) {
      auto perm = lfsr_permutation(seed, n);
      std::sort(perm.begin(), perm.end());
      for (int i = 0; i < n; ++i) REQUIRE(perm[i] == i + 1);
    }
  }
}

TEST_CASE("lfsr permutations look uniform at position 1") {
  // chi-square style check over uniformly drawn seeds: where does the
  // value at position 1 land
  const int n = 6;
  const int trials = 10000;
  long long counts[6] = {0, 0, 0, 0, 0, 0};
  Rng seeder(0xFEEDFACE);
  for (int trial = 0; trial < trials; ++trial) {
    const auto perm = lfsr_permutation(seeder.next_u64(), n);
    ++counts[perm[0] - 1];
  }
  const double expected = static_cast<double>(trials) / n;
  const double sigma = std::sqrt(trials * (1.0 / n) * (1.0 - 1.0 / n));
  for (long long c : counts) {
    CHECK(std::fabs(c - expected) < 4.0 * sigma);
  }
}

TEST_CASE("seed mixing separates sets and subgraphs") {
  CHECK(seed_for(1, 1, 0) != seed_for(1, 2, 0));
  CHECK(seed_for(3, 7, 99) == seed_for(3, 7, 99));
  std::set<std::uint64_t> seeds;
  for (int s = 1; s <= 16; ++s) {
    for (int g = 1; g <= 16; ++g) seeds.insert(seed_for(s, g, 0));
  }
  CHECK(seeds.size() >= 255);
}

TEST_CASE("random access samples distinct slots per user") {
  SUBCASE("n equal to slot count gives a permutation") {
    AccessParams params{1, 10, 10, Scheme::kRandom, 0};
    Rng rng(3);
    const auto a = assign_random(params, rng);
    std::vector<int> sorted = a.slot_of[0];
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 10; ++i) CHECK(sorted[i] == i + 1);
  }
  SUBCASE("distinctness holds on every frame") {
    AccessParams params{5, 12, 30, Scheme::kRandom, 0};
    Rng rng(4);
    for (int frame = 0; frame < 200; ++frame) {
      const auto a = assign_random(params, rng);
      for (const auto& slots : a.slot_of) {
        std::set<int> distinct(slots.begin(), slots.end());
        REQUIRE(distinct.size() == slots.size());
        REQUIRE(*distinct.begin() >= 1);
        REQUIRE(*distinct.rbegin() <= 30);
      }
    }
  }
  SUBCASE("n beyond slot count is an error") {
    AccessParams params{1, 11, 10, Scheme::kRandom, 0};
    Rng rng(3);
    CHECK_THROWS_AS(assign_random(params, rng), std::invalid_argument);
  }
}

TEST_CASE("random access degrees follow the binomial law") {
  AccessParams params{10, 500, 1000, Scheme::kRandom, 0};
  Rng rng(11);
  const int frames = 100;
  std::vector<long long> counts(11, 0);
  for (int f = 0; f < frames; ++f) {
    const auto hist = slot_degrees(assign_random(params, rng), params.total_slots);
    for (int d = 0; d <= 10; ++d) counts[d] += hist[d];
  }
  const double total = static_cast<double>(frames) * params.total_slots;
  for (int d = 0; d <= 10; ++d) {
    double pmf = 1.0;
    for (int i = 1; i <= d; ++i) pmf *= static_cast<double>(10 - d + i) / i;
    pmf *= std::pow(0.5, 10);
    const double sigma = std::sqrt(pmf * (1.0 - pmf) / total);
    CHECK(std::fabs(counts[d] / total - pmf) < 4.0 * sigma + 1e-12);
  }
}

TEST_CASE("two users at half load leave a quarter of the slots idle") {
  AccessParams params{2, 500, 1000, Scheme::kRandom, 0};
  Rng rng(23);
  long long idle = 0;
  const int frames = 200;
  for (int f = 0; f < frames; ++f) {
    idle += slot_degrees(assign_random(params, rng), params.total_slots)[0];
  }
  const double total = static_cast<double>(frames) * params.total_slots;
  const double sigma = std::sqrt(0.25 * 0.75 / total);
  CHECK(std::fabs(idle / total - 0.25) < 4.0 * sigma);
}

TEST_CASE("sequential access fills blocks in rounds") {
  const auto a = assign_sequential(fig3_params(Scheme::kSequential));
  for (int i = 0; i < 6; ++i) {
    CHECK(a.slot_of[0][i] == i + 1);
    CHECK(a.slot_of[1][i] == 7 + i);
    CHECK(a.slot_of[2][i] == i + 1);
    CHECK(a.slot_of[3][i] == 7 + i);
  }
  const auto hist = slot_degrees(a, 12);
  CHECK(hist[2] == 12);  // constant degree N_u n / N_s = 2
  CHECK(hist[0] == 0);
  CHECK(hist[1] == 0);
}

TEST_CASE("interleaved access permutes within the sequential block") {
  AccessParams params = fig3_params(Scheme::kInterleaved);
  const auto seq = assign_sequential(fig3_params(Scheme::kSequential));
  const auto a = assign_interleaved(params);
  const auto hist = slot_degrees(a, 12);
  CHECK(hist[2] == 12);
  for (int u = 0; u < 4; ++u) {
    std::multiset<int> got(a.slot_of[u].begin(), a.slot_of[u].end());
    std::multiset<int> want(seq.slot_of[u].begin(), seq.slot_of[u].end());
    CHECK(got == want);
  }
}

TEST_CASE("same-block interleavers differ at full scale") {
  AccessParams params{4, 4320, 8640, Scheme::kInterleaved, 0};
  const auto a = assign_interleaved(params);
  // users 1 and 3 share a block; their symbol orders must differ
  CHECK(a.slot_of[0] != a.slot_of[2]);
  CHECK(a.slot_of[1] != a.slot_of[3]);
}

TEST_CASE("cod reproduces the worked example exactly") {
  const InterleaverBank bank = paper_bank();
  const auto a = assign_cod(fig3_params(Scheme::kCod), &bank);
  CHECK(a.slot_of[0] == std::vector<int>{4, 11, 1, 8, 3, 10});
  CHECK(a.slot_of[1] == std::vector<int>{9, 6, 12, 5, 7, 2});
  CHECK(a.slot_of[2] == std::vector<int>{5, 10, 4, 9, 2, 7});
  CHECK(a.slot_of[3] == std::vector<int>{8, 3, 11, 1, 12, 6});
  const auto hist = slot_degrees(a, 12);
  CHECK(hist[2] == 12);
}

TEST_CASE("cod covers each interleaved entry exactly once per set") {
  AccessParams params{6, 12, 36, Scheme::kCod, 17};
  const auto a = assign_cod(params, nullptr);
  const auto bank = default_bank(params);
  const int subs = params.n_subgraphs();  // 3
  for (int set = 1; set <= params.n_sets(); ++set) {
    for (int sub = 1; sub <= subs; ++sub) {
      // indices i routed to (set, sub) across the set's users partition 1..n
      std::set<int> seen;
      for (int uu = 0; uu < subs; ++uu) {
        const int u = (set - 1) * subs + uu + 1;
        for (int i = 1; i <= params.symbols_per_user; ++i) {
          if ((u + i - 2) % subs + 1 == sub) {
            CHECK(a.slot_of[u - 1][i - 1] == bank.pi[set - 1][sub - 1][i - 1]);
            seen.insert(i);
          }
        }
      }
      CHECK(static_cast<int>(seen.size()) == params.symbols_per_user);
    }
  }
  const auto hist = slot_degrees(a, params.total_slots);
  CHECK(hist[params.n_sets()] == params.total_slots);
}

TEST_CASE("cod degenerates to per-user block interleaving at one subgraph") {
  AccessParams params{3, 6, 6, Scheme::kCod, 5};
  const auto a = assign_cod(params, nullptr);
  REQUIRE(params.n_subgraphs() == 1);
  for (int u = 1; u <= 3; ++u) {
    const auto perm = lfsr_permutation(seed_for(u, 1, 5), 6);
    CHECK(a.slot_of[u - 1] == perm);
  }
  const auto hist = slot_degrees(a, 6);
  CHECK(hist[3] == 6);
}

TEST_CASE("cod divisibility violations are rejected") {
  SUBCASE("slots not a multiple of n") {
    AccessParams params{4, 6, 13, Scheme::kCod, 0};
    CHECK_THROWS_AS(assign_cod(params, nullptr), std::invalid_argument);
  }
  SUBCASE("users not a multiple of subgraphs") {
    AccessParams params{3, 6, 12, Scheme::kCod, 0};
    CHECK_THROWS_AS(assign_cod(params, nullptr), std::invalid_argument);
  }
  SUBCASE("bank shape mismatch") {
    InterleaverBank bank = paper_bank();
    bank.pi[0][0][0] = 7;  // outside subgraph 1's range
    CHECK_THROWS_AS(assign_cod(fig3_params(Scheme::kCod), &bank), std::invalid_argument);
  }
}

TEST_CASE("slot degree histograms account for every symbol") {
  AccessParams params{4, 6, 24, Scheme::kRandom, 0};
  Rng rng(9);
  const auto a = assign_random(params, rng);
  const auto hist = slot_degrees(a, 24);
  long long slots = 0, edges = 0;
  for (std::size_t d = 0; d < hist.size(); ++d) {
    slots += hist[d];
    edges += static_cast<long long>(d) * hist[d];
  }
  CHECK(slots == 24);
  CHECK(edges == 24);

  const SlotAssignment empty{10, {}};
  const auto empty_hist = slot_degrees(empty, 10);
  CHECK(empty_hist == std::vector<long long>{10});
}

TEST_CASE("collision partners") {
  SUBCASE("sequential full-block overlap") {
    const auto a = assign_sequential(fig3_params(Scheme::kSequential));
    CHECK(collision_partners(a, 1) == std::vector<int>{3});
    CHECK(collision_partners(a, 2) == std::vector<int>{4});
  }
  SUBCASE("cod with the worked bank never pairs same-set users") {
    const InterleaverBank bank = paper_bank();
    const auto a = assign_cod(fig3_params(Scheme::kCod), &bank);
    const auto partners = collision_partners(a, 1);
    for (int v : partners) CHECK((v == 3 || v == 4));
    CHECK(std::find(partners.begin(), partners.end(), 2) == partners.end());
  }
  SUBCASE("single user has none") {
    AccessParams params{1, 4, 8, Scheme::kRandom, 0};
    Rng rng(2);
    const auto a = assign_random(params, rng);
    CHECK(collision_partners(a, 1).empty());
  }
  SUBCASE("out of range user") {
    const auto a = assign_sequential(fig3_params(Scheme::kSequential));
    CHECK_THROWS_AS(collision_partners(a, 0), std::out_of_range);
    CHECK_THROWS_AS(collision_partners(a, 5), std::out_of_range);
  }
}

TEST_CASE("deterministic schemes are pure functions of params and seed") {
  for (Scheme scheme : {Scheme::kSequential, Scheme::kInterleaved, Scheme::kCod}) {
    AccessParams params{4, 6, 12, scheme, 42};
    const auto a = make_assignment(params, nullptr);
    const auto b = make_assignment(params, nullptr);
    CHECK(a.slot_of == b.slot_of);
  }
}
