#ifndef SCRAM_CAPACITY_HPP
#define SCRAM_CAPACITY_HPP

#include <map>
#include <optional>
#include <vector>

namespace scram {

// Binomial slot-degree law: C(N_u, d) p^d (1-p)^(N_u - d).
double degree_pmf(int n_users, double p, int d);

struct SpectralEfficiency {
  double eta = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Largest nonnegative fixed point of
//   eta = sum_d P(d) log2(1 + ebn0 * (N_s d / (N_u n)) * eta),
// by damped iteration (factor 0.5) from eta0 = N_u n / N_s until the step
// falls below 1e-10 or 10^4 steps elapse. Nondecreasing in ebn0.
SpectralEfficiency ra_spectral_efficiency(double ebn0_linear, int n_users, int symbols_per_user,
                                          int total_slots);

// Minimum Eb/N0 (dB) at which random access attains `target_eta`,
// bisected over [-10, 40] dB to a gap below 1e-3 dB.
double ra_min_ebn0_db(double target_eta, int n_users, int symbols_per_user, int total_slots);

// Uniform access closed form: 10 log10((2^eta - 1) / eta).
double ua_min_ebn0_db(double eta);

struct CapacityRow {
  int n_users = 0;
  double eta = 0.0;
  double ebn0_ra_db = 0.0;
  double ebn0_ua_db = 0.0;
  double delta_ra_ua_db = 0.0;
  double p_empty = 0.0;
  int ra_solver_iterations = 0;  // fixed-point steps at the solved Eb/N0
  std::optional<double> ebn0_spb_db;     // present when reference data supplied
  std::optional<double> delta_spb_ua_db;
};

// One row per user count with eta = N_u n / N_s (transmitted symbols per
// slot). Sphere-packing reference values, when given as eta -> dB, are
// merged in; they are external data, never computed here.
std::vector<CapacityRow> capacity_table(int symbols_per_user, int total_slots,
                                        const std::vector<int>& user_counts,
                                        const std::map<double, double>* spb_reference = nullptr);

}  // namespace scram

#endif
