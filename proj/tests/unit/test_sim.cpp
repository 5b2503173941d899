#include <stdexcept>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "scram/sim.hpp"

using namespace scram;
using namespace scram::testing;

namespace {

SimConfig hamming_config() {
  SimConfig c;
  c.alist_path = data_path("hamming74.alist");
  c.n_users = 2;
  c.total_slots = 7;
  c.schemes = {Scheme::kCod};
  c.ebn0_grid_db = {60.0};
  c.frames = 50;
  c.master_seed = 5;
  return c;
}

}  // namespace

TEST_CASE("wilson intervals behave") {
  const auto [lo0, hi0] = wilson_interval(0, 100);
  CHECK(lo0 == 0.0);
  CHECK(hi0 > 0.0);
  CHECK(hi0 < 0.05);
  const auto [lo, hi] = wilson_interval(30, 100);
  CHECK(lo < 0.3);
  CHECK(hi > 0.3);
  const auto [lo1, hi1] = wilson_interval(100, 100);
  CHECK(hi1 == 1.0);
  CHECK(lo1 < 1.0);
}

TEST_CASE("config validation names the offending field") {
  SimConfig c = hamming_config();
  c.alist_path.clear();
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("alist"), std::invalid_argument);
  c = hamming_config();
  c.ebn0_grid_db.clear();
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("ebn0_grid_db"), std::invalid_argument);
  c = hamming_config();
  c.frames = 0;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("frames"), std::invalid_argument);
}

TEST_CASE("json config parsing round trip") {
  const std::string text = R"({
    "alist": "code.alist",
    "n_users": 4,
    "total_slots": 192,
    "schemes": ["cod", "random"],
    "ebn0_grid_db": [2.0, 4.0],
    "frames": 10,
    "master_seed": 99,
    "fading": false
  })";
  const SimConfig c = config_from_json_text(text);
  CHECK(c.alist_path == "code.alist");
  CHECK(c.n_users == 4);
  CHECK(c.schemes == std::vector<Scheme>{Scheme::kCod, Scheme::kRandom});
  CHECK(c.master_seed == 99);
  CHECK(!c.fading);
  CHECK_THROWS_AS(config_from_json_text("{ not json"), std::invalid_argument);
  CHECK_THROWS_AS(config_from_json_text(R"({"schemes": ["sideways"]})"), std::invalid_argument);
}

TEST_CASE("noiseless sweep decodes everything; deep noise destroys everything") {
  // deep noise needs a code whose info word is unguessable (k = 48)
  SimConfig c;
  c.alist_path = data_path("ldpc_96_48.alist");
  c.n_users = 2;
  c.total_slots = 96;
  c.schemes = {Scheme::kCod};
  c.master_seed = 5;
  c.ebn0_grid_db = {60.0, -20.0};
  c.frames = 100;
  const PerSweepResult r = run_per_sweep(c);
  REQUIRE(r.points.size() == 2);
  CHECK(r.points[0].packet_errors_pooled == 0);
  const double worst_per = r.points[1].per();
  CHECK(worst_per >= 0.99);
  CHECK(r.channel_load == doctest::Approx(2.0 * 48 / 96.0));
}

TEST_CASE("pooled errors equal the sum over users") {
  SimConfig c = hamming_config();
  c.ebn0_grid_db = {2.0};
  c.frames = 300;
  const PerSweepResult r = run_per_sweep(c);
  long long sum = 0;
  for (long long e : r.points[0].packet_errors_per_user) sum += e;
  CHECK(sum == r.points[0].packet_errors_pooled);
  CHECK(r.points[0].iterations_sum >= r.points[0].frames);
}

TEST_CASE("results are identical across reruns and worker counts") {
  SimConfig c = hamming_config();
  c.ebn0_grid_db = {3.0, 6.0};
  c.schemes = {Scheme::kCod, Scheme::kRandom};
  c.frames = 200;

  const PerSweepResult r1 = run_per_sweep(c);
  c.workers = 4;
  const PerSweepResult r2 = run_per_sweep(c);
  REQUIRE(r1.points.size() == r2.points.size());
  for (std::size_t i = 0; i < r1.points.size(); ++i) {
    CHECK(r1.points[i].packet_errors_per_user == r2.points[i].packet_errors_per_user);
    CHECK(r1.points[i].bit_errors == r2.points[i].bit_errors);
    CHECK(r1.points[i].iterations_sum == r2.points[i].iterations_sum);
  }

  std::ostringstream a, b;
  write_per_sweep_csv(r1, a);
  write_per_sweep_csv(r2, b);
  CHECK(a.str() == b.str());
  std::ostringstream ja, jb;
  write_per_sweep_json(r1, ja);
  write_per_sweep_json(r2, jb);
  CHECK(ja.str() == jb.str());
}

TEST_CASE("degree distribution report") {
  // hamming code over a wide frame: n=7, N_s=1000 -> p=0.007
  SimConfig c = hamming_config();
  c.n_users = 10;
  c.total_slots = 1000;
  c.schemes = {Scheme::kRandom};
  c.frames = 50;
  const DegreeDistResult r = run_degree_dist(c);
  REQUIRE(r.schemes.size() == 1);
  double mass = 0.0;
  for (const auto& bin : r.schemes[0].bins) {
    mass += bin.empirical;
    CHECK(std::fabs(bin.z_score) < 5.0);
  }
  CHECK(mass == doctest::Approx(1.0));
}

TEST_CASE("uniform schemes produce a single spike at the offered load") {
  SimConfig c = hamming_config();
  c.n_users = 2;
  c.total_slots = 7;  // one subgraph, degree 2 everywhere
  c.schemes = {Scheme::kSequential, Scheme::kInterleaved};
  c.frames = 3;
  const DegreeDistResult r = run_degree_dist(c);
  for (const auto& scheme : r.schemes) {
    for (const auto& bin : scheme.bins) {
      if (bin.degree == 2) {
        CHECK(bin.empirical == doctest::Approx(1.0));
      } else {
        CHECK(bin.count == 0);
      }
    }
  }
}

TEST_CASE("zero users put all mass at degree zero") {
  SimConfig c = hamming_config();
  c.n_users = 0;
  c.schemes = {Scheme::kRandom};
  c.frames = 2;
  const DegreeDistResult r = run_degree_dist(c);
  REQUIRE(r.schemes[0].bins.size() == 1);
  CHECK(r.schemes[0].bins[0].degree == 0);
  CHECK(r.schemes[0].bins[0].empirical == doctest::Approx(1.0));
}
