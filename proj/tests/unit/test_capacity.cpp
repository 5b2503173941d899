#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "scram/capacity.hpp"

using namespace scram;

TEST_CASE("binomial slot-degree law") {
  CHECK(degree_pmf(2, 0.5, 0) == doctest::Approx(0.25));
  CHECK(degree_pmf(10, 0.5, 0) == doctest::Approx(9.765625e-4));
  for (int n_u : {1, 2, 7, 12}) {
    for (double p : {0.1, 0.5, 0.9}) {
      double sum = 0.0;
      for (int d = 0; d <= n_u; ++d) sum += degree_pmf(n_u, p, d);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(degree_pmf(4, 0.5, 5), std::invalid_argument);
  CHECK_THROWS_AS(degree_pmf(4, 0.5, -1), std::invalid_argument);
  CHECK_THROWS_AS(degree_pmf(4, 1.5, 1), std::invalid_argument);
}

TEST_CASE("random-access spectral efficiency hits the published operating points") {
  // two users at eta = 1 need about 0.72 dB; four users at eta = 2 about 2.31 dB
  const auto two = ra_spectral_efficiency(std::pow(10.0, 0.072), 2, 4320, 8640);
  CHECK(two.converged);
  CHECK(two.eta == doctest::Approx(1.0).epsilon(0.01));
  const auto four = ra_spectral_efficiency(std::pow(10.0, 0.231), 4, 4320, 8640);
  CHECK(four.eta == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("the zero fixed point is not returned when a positive one exists") {
  const auto s = ra_spectral_efficiency(2.0, 2, 4320, 8640);
  CHECK(s.eta > 0.5);
}

TEST_CASE("spectral efficiency is nondecreasing in Eb/N0") {
  double previous = 0.0;
  for (double db = -8.0; db <= 20.0; db += 1.0) {
    const auto s = ra_spectral_efficiency(std::pow(10.0, db / 10.0), 4, 4320, 8640);
    CHECK(s.eta >= previous - 1e-9);
    previous = s.eta;
  }
}

TEST_CASE("minimum Eb/N0 solver agrees with independent root solves") {
  // frozen from high-precision fixed-point and direct-root references
  CHECK(std::fabs(ra_min_ebn0_db(1.0, 2, 4320, 8640) - 0.723680) < 2e-3);
  CHECK(std::fabs(ra_min_ebn0_db(5.0, 10, 4320, 8640) - 8.179253) < 2e-3);
  CHECK(std::fabs(ra_min_ebn0_db(8.0, 16, 4320, 8640) - 15.185354) < 2e-3);
}

TEST_CASE("uniform access closed form") {
  CHECK(ua_min_ebn0_db(1.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ua_min_ebn0_db(2.0) == doctest::Approx(1.7609).epsilon(1e-3));
  // eta -> 0 limit is ln 2 = -1.59 dB
  CHECK(ua_min_ebn0_db(1e-9) == doctest::Approx(10.0 * std::log10(std::log(2.0))).epsilon(1e-5));
}

TEST_CASE("degenerate single-user geometry collapses RA onto UA") {
  for (double eta : {0.5, 1.0, 2.0}) {
    CHECK(ra_min_ebn0_db(eta, 1, 1000, 1000) ==
          doctest::Approx(ua_min_ebn0_db(eta)).epsilon(2e-3));
  }
}

TEST_CASE("capacity table matches the published values") {
  const std::vector<int> users{2, 4, 8, 10, 12, 16};
  const auto rows = capacity_table(4320, 8640, users);
  // The last RA entry is the formula-exact 15.185 dB; the published table
  // prints 15.21 there, inconsistent with its own fixed-point equation
  // (its delta row implies ~15.205). All other entries match the print.
  const double ra[] = {0.72, 2.31, 6.06, 8.17, 10.42, 15.185};
  const double ua[] = {0.0, 1.76, 5.74, 7.92, 10.21, 15.03};
  const double empty[] = {0.25, 0.0625, 3.90625e-3, 9.765625e-4, 2.44140625e-4, 1.52587890625e-5};
  REQUIRE(rows.size() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(rows[i].eta == doctest::Approx(users[i] * 0.5));
    CHECK(std::fabs(rows[i].ebn0_ra_db - ra[i]) < 0.02);
    CHECK(std::fabs(rows[i].ebn0_ua_db - ua[i]) < 0.01);
    CHECK(rows[i].p_empty == doctest::Approx(empty[i]).epsilon(1e-9));
    CHECK(rows[i].delta_ra_ua_db > 0.0);
    if (i > 0) CHECK(rows[i].delta_ra_ua_db < rows[i - 1].delta_ra_ua_db);
  }
}

TEST_CASE("spb reference values merge into the table") {
  std::map<double, double> spb{{1.0, 0.69}, {2.0, 2.49}};
  const auto rows = capacity_table(4320, 8640, {2, 4}, &spb);
  REQUIRE(rows[0].ebn0_spb_db.has_value());
  CHECK(*rows[0].ebn0_spb_db == doctest::Approx(0.69));
  CHECK(*rows[0].delta_spb_ua_db == doctest::Approx(0.69).epsilon(1e-6));
  CHECK(*rows[1].delta_spb_ua_db == doctest::Approx(2.49 - rows[1].ebn0_ua_db).epsilon(1e-6));
}
