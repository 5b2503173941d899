#include <stdexcept>
#include <cmath>
#include <complex>

#include "doctest.h"
#include "helpers.hpp"
#include "scram/channel.hpp"

using namespace scram;

TEST_CASE("ebn0 conversion follows the unit-energy convention") {
  CHECK(ebn0_to_sigma2(0.0, 1.0) == doctest::Approx(1.0));
  CHECK(ebn0_to_sigma2(0.0, 0.5) == doctest::Approx(2.0));
  CHECK(ebn0_to_sigma2(10.0, 0.5) == doctest::Approx(0.2));
  CHECK_THROWS_AS(ebn0_to_sigma2(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ebn0_to_sigma2(0.0, -0.5), std::invalid_argument);
}

TEST_CASE("fading draws are positive, reproducible, unit mean square") {
  Rng rng(8);
  const auto h = draw_fading(rng, 1000000);
  double sum_sq = 0.0;
  for (double v : h) {
    REQUIRE(v > 0.0);
    sum_sq += v * v;
  }
  CHECK(sum_sq / h.size() == doctest::Approx(1.0).epsilon(0.01));
  Rng rng2(8);
  const auto h2 = draw_fading(rng2, 100);
  for (int i = 0; i < 100; ++i) CHECK(h2[i] == h[i]);
}

TEST_CASE("noiseless transmit superimposes faded symbols exactly") {
  SlotAssignment a;
  a.total_slots = 4;
  a.slot_of = {{1, 3}, {1, 4}};
  const std::vector<std::vector<double>> symbols = {{1.0, -1.0}, {-1.0, 1.0}};
  const std::vector<std::vector<double>> fading = {{0.7, 1.2}, {0.7, 0.4}};
  Rng rng(1);
  const FrameRealization f = transmit(a, symbols, fading, 0.0, rng);
  CHECK(f.received[0].real() == doctest::Approx(0.0));  // +0.7 - 0.7 cancels
  CHECK(f.received[0].imag() == 0.0);
  CHECK(f.received[1] == std::complex<double>(0.0, 0.0));  // idle slot
  CHECK(f.received[2].real() == doctest::Approx(-1.2));
  CHECK(f.received[3].real() == doctest::Approx(0.4));
}

TEST_CASE("idle slots carry noise of the configured variance") {
  SlotAssignment a;
  a.total_slots = 20000;
  a.slot_of = {};
  Rng rng(77);
  const double sigma2 = 0.37;
  const FrameRealization f = transmit(a, {}, {}, sigma2, rng);
  double power = 0.0;
  for (const auto& y : f.received) power += std::norm(y);
  CHECK(power / a.total_slots == doctest::Approx(sigma2).epsilon(0.05));
}

TEST_CASE("transmit is linear in the symbols at zero noise") {
  SlotAssignment a;
  a.total_slots = 6;
  a.slot_of = {{1, 2, 3}, {2, 3, 4}};
  const std::vector<std::vector<double>> s1 = {{1, -1, 1}, {1, 1, -1}};
  const std::vector<std::vector<double>> s2 = {{-1, -1, 1}, {1, -1, 1}};
  std::vector<std::vector<double>> sum = s1;
  for (int u = 0; u < 2; ++u) {
    for (int i = 0; i < 3; ++i) sum[u][i] += s2[u][i];
  }
  const std::vector<std::vector<double>> fading = {{0.3, 0.9, 1.1}, {0.5, 0.2, 1.7}};
  Rng rng(3);
  const auto f1 = transmit(a, s1, fading, 0.0, rng);
  const auto f2 = transmit(a, s2, fading, 0.0, rng);
  const auto fs = transmit(a, sum, fading, 0.0, rng);
  for (int s = 0; s < 6; ++s) {
    CHECK(fs.received[s].real() ==
          doctest::Approx(f1.received[s].real() + f2.received[s].real()));
  }
}

TEST_CASE("received power balances the offered load") {
  // N_u n / N_s = 2 at unit symbol energy and E[h^2] = 1
  AccessParams params{4, 5000, 10000, Scheme::kRandom, 0};
  Rng rng(15);
  const SlotAssignment a = assign_random(params, rng);
  std::vector<std::vector<double>> symbols(4, std::vector<double>(5000));
  std::vector<std::vector<double>> fading(4);
  for (int u = 0; u < 4; ++u) {
    fading[u] = draw_fading(rng, 5000);
    for (auto& s : symbols[u]) s = (rng.next_u64() & 1) ? 1.0 : -1.0;
  }
  const FrameRealization f = transmit(a, symbols, fading, 0.0, rng);
  double power = 0.0;
  for (const auto& y : f.received) power += std::norm(y);
  CHECK(power / params.total_slots == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("shape mismatches are rejected") {
  SlotAssignment a;
  a.total_slots = 4;
  a.slot_of = {{1, 2}};
  Rng rng(1);
  CHECK_THROWS_AS(transmit(a, {{1.0}}, {{0.5}}, 1.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(transmit(a, {}, {}, 1.0, rng), std::invalid_argument);
}
