#ifndef SCRAM_SIM_HPP
#define SCRAM_SIM_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scram/access.hpp"
#include "scram/cycles.hpp"
#include "scram/ldpc.hpp"

namespace scram {

inline constexpr const char* kToolVersion = "0.1.0";

struct SimConfig {
  std::string alist_path;                // shared code for all users
  std::vector<std::string> alist_paths;  // or one per user
  int n_users = 0;
  int total_slots = 0;
  std::vector<Scheme> schemes;
  std::vector<double> ebn0_grid_db;
  int frames = 1000;
  int max_iters = 50;
  std::uint64_t master_seed = 1;
  bool early_stop = true;
  bool fading = true;
  int max_slot_degree = 12;
  int workers = 1;
  std::string out_path;
  std::string format = "csv";

  void validate() const;  // throws naming the offending field
};

SimConfig load_config(const std::string& path);
SimConfig config_from_json_text(const std::string& text);
std::string config_canonical_json(const SimConfig& config);
std::uint64_t fnv1a64(const std::string& text);

struct PerPoint {
  Scheme scheme = Scheme::kRandom;
  double ebn0_db = 0.0;
  long long frames = 0;
  std::vector<long long> packet_errors_per_user;
  long long packet_errors_pooled = 0;
  long long bit_errors = 0;
  long long info_bits = 0;
  long long iterations_sum = 0;

  double per() const;
  double ber() const;
  double mean_iterations() const;
};

struct PerSweepResult {
  SimConfig config;
  std::uint64_t config_digest = 0;
  std::uint64_t code_digest = 0;
  double channel_load = 0.0;
  std::vector<int> code_dims;  // n, k, m of the (shared) code
  std::vector<PerPoint> points;
};

PerSweepResult run_per_sweep(const SimConfig& config);

struct DegreeBin {
  int degree = 0;
  long long count = 0;
  double empirical = 0.0;
  double binomial = 0.0;
  double z_score = 0.0;
};

struct DegreeDistResult {
  SimConfig config;
  std::uint64_t config_digest = 0;
  int symbols_per_user = 0;
  long long slots_observed = 0;
  struct PerScheme {
    Scheme scheme;
    std::vector<DegreeBin> bins;
  };
  std::vector<PerScheme> schemes;
};

// Degree histograms per scheme with the binomial overlay at p = n/N_s.
DegreeDistResult run_degree_dist(const SimConfig& config);

// 95% Wilson score interval; the zero-error case reduces to [0, upper].
std::pair<double, double> wilson_interval(long long errors, long long trials);

void write_per_sweep_csv(const PerSweepResult& result, std::ostream& out);
void write_per_sweep_json(const PerSweepResult& result, std::ostream& out);
void write_degree_dist_csv(const DegreeDistResult& result, std::ostream& out);
void write_degree_dist_json(const DegreeDistResult& result, std::ostream& out);

}  // namespace scram

#endif
