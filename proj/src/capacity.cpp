#include "scram/capacity.hpp"

#include <cmath>
#include <stdexcept>

namespace scram {

double degree_pmf(int n_users, double p, int d) {
  if (n_users < 0 || d < 0 || d > n_users) {
    throw std::invalid_argument("degree must lie in 0..N_u");
  }
  if (!(p >= 0.0) || p > 1.0) throw std::invalid_argument("p must lie in [0, 1]");
  double binom = 1.0;
  for (int i = 1; i <= d; ++i) {
    binom *= static_cast<double>(n_users - d + i) / i;
  }
  return binom * std::pow(p, d) * std::pow(1.0 - p, n_users - d);
}

namespace {
constexpr double kFixedPointTol = 1e-10;
constexpr int kFixedPointMaxSteps = 10000;
constexpr double kLog2 = 0.69314718055994530941723212145818;
}  // namespace

SpectralEfficiency ra_spectral_efficiency(double ebn0_linear, int n_users, int symbols_per_user,
                                          int total_slots) {
  if (!(ebn0_linear > 0.0)) throw std::invalid_argument("Eb/N0 must be positive");
  if (n_users <= 0 || symbols_per_user <= 0 || total_slots <= 0) {
    throw std::invalid_argument("geometry must be positive");
  }
  const double p = static_cast<double>(symbols_per_user) / total_slots;
  if (p > 1.0) throw std::invalid_argument("n must not exceed N_s");
  std::vector<double> pmf(n_users + 1);
  std::vector<double> gain(n_users + 1);
  for (int d = 0; d <= n_users; ++d) {
    pmf[d] = degree_pmf(n_users, p, d);
    gain[d] = ebn0_linear * (static_cast<double>(total_slots) * d) /
              (static_cast<double>(n_users) * symbols_per_user);
  }
  const auto forward = [&](double eta) {
    double sum = 0.0;
    for (int d = 1; d <= n_users; ++d) {
      sum += pmf[d] * std::log1p(gain[d] * eta);
    }
    return sum / kLog2;
  };

  SpectralEfficiency out;
  double eta = static_cast<double>(n_users) * symbols_per_user / total_slots;
  for (int step = 1; step <= kFixedPointMaxSteps; ++step) {
    const double next = 0.5 * (eta + forward(eta));
    const double delta = std::fabs(next - eta);
    eta = next;
    out.iterations = step;
    if (delta < kFixedPointTol) {
      out.converged = true;
      break;
    }
  }
  out.eta = eta;
  return out;
}

double ra_min_ebn0_db(double target_eta, int n_users, int symbols_per_user, int total_slots) {
  if (!(target_eta > 0.0)) throw std::invalid_argument("target spectral efficiency must be positive");
  const auto achieved = [&](double db) {
    return ra_spectral_efficiency(std::pow(10.0, db / 10.0), n_users, symbols_per_user,
                                  total_slots).eta;
  };
  double lo = -10.0, hi = 40.0;
  if (achieved(lo) >= target_eta || achieved(hi) < target_eta) {
    throw std::invalid_argument("target spectral efficiency is outside the bisection bracket");
  }
  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    if (achieved(mid) >= target_eta) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double ua_min_ebn0_db(double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("spectral efficiency must be positive");
  return 10.0 * std::log10((std::exp2(eta) - 1.0) / eta);
}

std::vector<CapacityRow> capacity_table(int symbols_per_user, int total_slots,
                                        const std::vector<int>& user_counts,
                                        const std::map<double, double>* spb_reference) {
  std::vector<CapacityRow> rows;
  rows.reserve(user_counts.size());
  const double p = static_cast<double>(symbols_per_user) / total_slots;
  for (int n_u : user_counts) {
    CapacityRow row;
    row.n_users = n_u;
    row.eta = static_cast<double>(n_u) * symbols_per_user / total_slots;
    row.ebn0_ra_db = ra_min_ebn0_db(row.eta, n_u, symbols_per_user, total_slots);
    row.ra_solver_iterations =
        ra_spectral_efficiency(std::pow(10.0, row.ebn0_ra_db / 10.0), n_u, symbols_per_user,
                               total_slots).iterations;
    row.ebn0_ua_db = ua_min_ebn0_db(row.eta);
    row.delta_ra_ua_db = row.ebn0_ra_db - row.ebn0_ua_db;
    row.p_empty = degree_pmf(n_u, p, 0);
    if (spb_reference) {
      // Nearest eta within a loose match tolerance.
      double best_gap = 1e-6;
      for (const auto& [eta, db] : *spb_reference) {
        const double gap = std::fabs(eta - row.eta);
        if (gap < best_gap) {
          best_gap = gap;
          row.ebn0_spb_db = db;
        }
      }
      if (row.ebn0_spb_db) row.delta_spb_ua_db = *row.ebn0_spb_db - row.ebn0_ua_db;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace scram
