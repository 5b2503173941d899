#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "scram/rng.hpp"

using namespace scram;

TEST_CASE("streams are deterministic and tag-sensitive") {
  Rng a = Rng::derive(42, {1, 2, 3});
  Rng b = Rng::derive(42, {1, 2, 3});
  Rng c = Rng::derive(42, {1, 2, 4});
  bool all_equal = true;
  bool any_diff_c = false;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t va = a.next_u64();
    all_equal = all_equal && va == b.next_u64();
    any_diff_c = any_diff_c || va != c.next_u64();
  }
  CHECK(all_equal);
  CHECK(any_diff_c);
}

TEST_CASE("uniform_below stays in range and covers small supports") {
  Rng rng(7);
  bool seen[5] = {false, false, false, false, false};
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t v = rng.uniform_below(5);
    REQUIRE(v < 5);
    seen[v] = true;
  }
  for (bool s : seen) CHECK(s);
}

TEST_CASE("rayleigh magnitudes have unit mean square and stay positive") {
  Rng rng(123);
  double sum_sq = 0.0;
  double min_h = 1e9;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const double h = rng.rayleigh_unit_power();
    sum_sq += h * h;
    min_h = std::min(min_h, h);
  }
  CHECK(min_h > 0.0);
  CHECK(sum_sq / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("normals have near-zero mean and unit variance") {
  Rng rng(99);
  double sum = 0.0, sum_sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sum_sq += z * z;
  }
  CHECK(std::fabs(sum / n) < 0.01);
  CHECK(sum_sq / n == doctest::Approx(1.0).epsilon(0.02));
}
